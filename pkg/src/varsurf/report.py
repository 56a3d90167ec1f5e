"""JSON reports, tables and mesh export.

A report is a single JSON document::

    {"format": "varsurf-report/1", "kind": "surface" | "curve",
     "spec": {...}, "config": {...}, "records": [...], "error": null,
     "content_hash": "<sha256>", "metadata": {...}}

``content_hash`` is the SHA-256 of the canonical serialization of every
field except ``content_hash`` and ``metadata``.  Floats are written in
their shortest round-trip form, so re-reading gives bit-equal numbers and
identical runs give byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .catalog import entry_from_description
from .curve1d import CurveRecord
from .engine import (
    IterationLayer,
    IterationRecord,
    Report,
    SurfaceSpec,
    evaluate_surface,
)
from .geometry import fundamental_magnitudes, gaussian_curvature_numerator, mean_curvature_numerator
from .tpoly import TPoly

FORMAT = "varsurf-report/1"
SIG_DIGITS = 6


class ReportError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated options shared by the command-line subcommands."""

    surface: str = "hump"
    params: dict = field(default_factory=dict)
    steps: int = 1
    quad_order: int = 32
    bracket: tuple = (-1.0, 1.0)
    h0_mode: str | None = None
    out: str | None = None
    mesh_res: int = 2
    mesh_format: str = "obj"

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.quad_order < 4:
            raise ValueError("quadrature order must be >= 4")
        if self.mesh_res < 2:
            raise ValueError("mesh resolution must be >= 2")
        if not self.bracket[0] < self.bracket[1]:
            raise ValueError(f"empty bracket {self.bracket}")


# -- serialization -------------------------------------------------------------


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _record_to_dict(r: IterationRecord) -> dict:
    return {
        "n": r.n,
        "area": _num(r.area),
        "mu_sq": _num(r.mu_sq),
        "nu": _num(r.nu),
        "ratio": _num(r.ratio),
        "t_min": _num(r.t_min),
        "mu_sq_coeffs": None if r.mu_sq_poly is None else [float(c) for c in r.mu_sq_poly.coeffs] or [0.0],
        "mu_sq_at_t_min": None if r.mu_sq_poly is None else _num(r.mu_sq_poly(r.t_min)),
        "p_pct": _num(r.p_pct),
        "p_total": _num(r.p_total),
        "q_pct": _num(r.q_pct),
        "q_total": _num(r.q_total),
        "mu_rms_decrease_pct": _num(r.mu_rms_decrease_pct),
    }


def _record_from_dict(d: dict) -> IterationRecord:
    coeffs = d.get("mu_sq_coeffs")
    return IterationRecord(
        n=int(d["n"]),
        area=d["area"],
        mu_sq=d["mu_sq"],
        nu=d["nu"],
        ratio=d.get("ratio"),
        t_min=d.get("t_min"),
        mu_sq_poly=None if coeffs is None else TPoly(coeffs),
        p_pct=d.get("p_pct"),
        p_total=d.get("p_total"),
        q_pct=d.get("q_pct"),
        q_total=d.get("q_total"),
        mu_rms_decrease_pct=d.get("mu_rms_decrease_pct"),
    )


def _spec_to_dict(spec: SurfaceSpec) -> dict:
    return {"entry": spec.entry.describe(), "layers": [_num(t) for t in spec.t_values()]}


def spec_from_dict(d: dict) -> SurfaceSpec:
    entry = entry_from_description(d["entry"])
    layers = tuple(IterationLayer(float(t), k) for k, t in enumerate(d["layers"]))
    return SurfaceSpec(entry, layers)


def surface_report_dict(report: Report) -> dict:
    return {
        "format": FORMAT,
        "kind": "surface",
        "spec": _spec_to_dict(report.spec),
        "config": dict(report.config),
        "records": [_record_to_dict(r) for r in report.records],
        "error": report.error,
    }


def curve_report_dict(records: list, config: dict) -> dict:
    l0 = records[0].length if records else None
    rows = []
    for r in records:
        rows.append(
            {
                "n": r.n,
                "length": _num(r.length),
                "t_min": _num(r.t_min),
                "length_pct": _num(r.length_pct),
                "length_total_pct": None
                if r.n == 0 or r.length_pct is None
                else _num(100.0 * (l0 - r.length) / (l0 - config["chord"])),
                "y_coeffs": [float(c) for c in r.y_coeffs],
            }
        )
    return {"format": FORMAT, "kind": "curve", "spec": {}, "config": dict(config), "records": rows, "error": None}


def _canonical(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k not in ("content_hash", "metadata")}
    return json.dumps(body, sort_keys=True, separators=(",", ":"), allow_nan=False)


def content_hash(doc: dict) -> str:
    return hashlib.sha256(_canonical(doc).encode("utf-8")).hexdigest()


def finalize(doc: dict) -> dict:
    out = dict(doc)
    out["content_hash"] = content_hash(doc)
    out["metadata"] = {"generator": f"varsurf {__version__}"}
    return out


def dumps(doc: dict) -> str:
    return json.dumps(finalize(doc), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_atomic(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_report(path, doc: dict) -> None:
    write_atomic(path, dumps(doc))


def load_report(path) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ReportError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT or doc.get("kind") not in ("surface", "curve"):
        raise ReportError(f"{path}: not a varsurf report")
    if not isinstance(doc.get("records"), list):
        raise ReportError(f"{path}: records missing")
    if "content_hash" in doc and doc["content_hash"] != content_hash(doc):
        raise ReportError(f"{path}: content hash mismatch")
    return doc


def records_from_doc(doc: dict) -> list:
    if doc["kind"] == "curve":
        return [
            CurveRecord(r["n"], r["length"], r["t_min"], r["length_pct"], tuple(r["y_coeffs"]))
            for r in doc["records"]
        ]
    return [_record_from_dict(r) for r in doc["records"]]


# -- tables --------------------------------------------------------------------


def _fmt(x) -> str:
    return "" if x is None else f"{x:.{SIG_DIGITS}g}"


def table_rows(doc: dict) -> tuple[list, list]:
    """Header and rows mirroring the printed tables."""
    if doc["kind"] == "curve":
        header = ["i", "l_i", "l_ij", "t_min"]
        rows = [[str(r["n"]), _fmt(r["length"]), _fmt(r["length_pct"]), _fmt(r["t_min"])] for r in doc["records"]]
        return header, rows
    recs = doc["records"]
    use_p = any(r.get("p_pct") is not None for r in recs) or (
        not recs and doc["spec"].get("entry", {}).get("reference_area") is not None
    )
    key = "p" if use_p else "q"
    header = ["i", "A_i", f"{key}_ij", f"{key}_0j", "nu_i/mu_i^2", "t_min"]
    rows = [
        [
            str(r["n"]),
            _fmt(r["area"]),
            _fmt(r.get(f"{key}_pct")),
            _fmt(r.get(f"{key}_total")),
            _fmt(r.get("ratio")),
            _fmt(r.get("t_min")),
        ]
        for r in recs
    ]
    return header, rows


def format_table(doc: dict, fmt: str = "csv") -> str:
    header, rows = table_rows(doc)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "text":
        widths = [max(len(x) for x in col) for col in zip(header, *rows)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")


# -- mesh export ---------------------------------------------------------------


def mesh_samples(spec: SurfaceSpec, res: int) -> dict:
    """Positions, H and K numerators on a uniform ``res x res`` grid incl. edges.

    Arrays are flattened row-major with ``u`` as the slow index.
    """
    if res < 2:
        raise ValueError("mesh resolution must be >= 2")
    u0, u1, v0, v1 = spec.domain
    uu, vv = np.meshgrid(np.linspace(u0, u1, res), np.linspace(v0, v1, res), indexing="ij")
    u, v = uu.ravel(), vv.ravel()
    surf = evaluate_surface(spec, u, v, order=2)
    m = fundamental_magnitudes(surf)
    xyz = np.stack([np.asarray(c.value) for c in surf.components()], axis=-1)
    return {
        "u": u,
        "v": v,
        "xyz": xyz,
        "H": np.asarray(mean_curvature_numerator(m).value),
        "K": np.asarray(gaussian_curvature_numerator(m).value),
        "res": res,
    }


def format_obj(samples: dict) -> str:
    res = samples["res"]
    out = [f"# varsurf mesh {res}x{res}"]
    out += [f"v {x + 0.0!r} {y + 0.0!r} {z + 0.0!r}" for x, y, z in samples["xyz"].tolist()]
    for i in range(res - 1):
        for j in range(res - 1):
            a = i * res + j + 1
            out.append(f"f {a} {a + res} {a + res + 1} {a + 1}")
    return "\n".join(out) + "\n"


def format_grid(samples: dict) -> str:
    out = ["# u v x y z H K"]
    for u, v, (x, y, z), h, k in zip(
        samples["u"].tolist(), samples["v"].tolist(), samples["xyz"].tolist(), samples["H"].tolist(), samples["K"].tolist()
    ):
        out.append(" ".join(repr(float(c) + 0.0) for c in (u, v, x, y, z, h, k)))
    return "\n".join(out) + "\n"


def export_mesh(doc: dict, step: int, res: int, fmt: str = "obj") -> str:
    if doc["kind"] != "surface":
        raise ReportError("mesh export needs a surface report")
    spec = spec_from_dict(doc["spec"])
    if not 0 <= step <= spec.depth:
        raise ReportError(f"step {step} out of range 0..{spec.depth}")
    samples = mesh_samples(spec.truncated(step), res)
    if fmt == "obj":
        return format_obj(samples)
    if fmt == "grid":
        return format_grid(samples)
    raise ValueError(f"unknown mesh format {fmt!r}")

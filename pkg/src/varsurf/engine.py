"""Iterated curvature-driven area reduction.

A surface ``x_n`` is its base parametrization plus ``n`` layers.  Layer ``k``
adds ``t_k * b(u, v) * H_k(u, v) * d`` where ``H_k`` is the mean-curvature
numerator of the surface beneath it and ``d`` is either a fixed unit vector
or the normal numerator.  Layers store only ``t_k``; inner curvatures are
recomputed with jets, two orders deeper per layer.

Leaving the topmost ``t`` symbolic makes every geometric quantity a
polynomial in ``t`` at each node, so the mean-square numerator integral is
an exact polynomial whose global minimum on a bracket gives the next layer.
"""

from __future__ import annotations

import logging
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import jets
from .catalog import CatalogEntry, boundary_points
from .geometry import (
    SurfacePointJets,
    area_integrand,
    fundamental_magnitudes,
    gaussian_curvature_numerator,
    mean_curvature_numerator,
    normal_numerator,
)
from .jets import REAL, TPOLY
from .polyopt import minimize
from .quadrature import QuadratureRule, build_rule, integrate
from .tpoly import TPoly

log = logging.getLogger(__name__)

DEFAULT_QUAD_ORDER = 32
DEFAULT_BRACKET = (-1.0, 1.0)
MAX_QUIET_STEPS = 4
THREADS_ENV = "VARSURF_THREADS"


class UndefinedRatioError(ArithmeticError):
    pass


@dataclass(frozen=True)
class IterationLayer:
    t_value: float | None
    step_index: int


@dataclass(frozen=True)
class SurfaceSpec:
    entry: CatalogEntry
    layers: tuple = ()

    def __post_init__(self):
        for k, layer in enumerate(self.layers):
            if layer.step_index != k:
                raise ValueError("layers must be ordered by step_index from 0")

    @property
    def domain(self) -> tuple:
        return self.entry.domain

    @property
    def depth(self) -> int:
        return len(self.layers)

    def with_layer(self, t_value: float | None) -> "SurfaceSpec":
        return replace(self, layers=self.layers + (IterationLayer(t_value, len(self.layers)),))

    def truncated(self, n: int) -> "SurfaceSpec":
        return replace(self, layers=self.layers[:n])

    def t_values(self) -> list:
        return [layer.t_value for layer in self.layers]


def required_order(depth: int, top_order: int = 2) -> int:
    return top_order + 2 * depth


def _uses_unit_h(entry: CatalogEntry, step: int) -> bool:
    if entry.h0_mode == "unit_H_always":
        return True
    return entry.h0_mode == "unit_H_first_step" and step == 0


def _direction_field(entry: CatalogEntry, step: int, surf: SurfacePointJets, u, v):
    """Per-unit-t displacement ``b * H * d`` of the layer built on ``surf``."""
    order = surf.order - 2
    m = fundamental_magnitudes(surf)
    uj, vj = u.truncate(order), v.truncate(order)
    scale = entry.blend(uj, vj)
    if not _uses_unit_h(entry, step):
        scale = scale * mean_curvature_numerator(m)
    if entry.direction == "normal":
        n = normal_numerator(surf)
        return tuple(scale * c.truncate(order) for c in n)
    return tuple(scale * float(k) for k in entry.direction)


def _surface_at(spec: SurfaceSpec, u, v, order: int, symbolic_top: bool) -> SurfacePointJets:
    depth = spec.depth
    k = required_order(depth, order)
    uj, vj = jets.seed("u", u, k), jets.seed("v", v, k)
    surf = SurfacePointJets(*spec.entry.components(uj, vj))
    for idx, layer in enumerate(spec.layers):
        disp = _direction_field(spec.entry, idx, surf, uj, vj)
        k -= 2
        uj, vj = uj.truncate(k), vj.truncate(k)
        comps = [c.truncate(k) for c in surf.components()]
        if symbolic_top and idx == depth - 1:
            t = TPoly.t()
            comps = [c.as_tpoly() + d.as_tpoly() * t for c, d in zip(comps, disp)]
        else:
            comps = [c + d * float(layer.t_value) for c, d in zip(comps, disp)]
        surf = SurfacePointJets(*comps)
    return surf


def evaluate_surface(spec: SurfaceSpec, u, v, order: int = 2, ring: str = REAL) -> SurfacePointJets:
    """Jets of ``x_n`` at ``(u, v)``; with ``ring="tpoly"`` the topmost layer's t is symbolic.

    ``u`` and ``v`` may be arrays; the jets then carry matching batch shape.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    if ring not in (REAL, TPOLY):
        raise ValueError(f"unknown ring {ring!r}")
    if ring == TPOLY and spec.depth == 0:
        raise ValueError("a symbolic t needs at least one layer")
    if ring == REAL and any(l.t_value is None for l in spec.layers):
        raise ValueError("real-ring evaluation needs every layer's t value")
    if spec.depth > MAX_QUIET_STEPS:
        warnings.warn(
            f"{spec.depth} layers need jets of order {required_order(spec.depth, order)}; "
            "cost grows quadratically with order",
            stacklevel=2,
        )
    return _surface_at(spec, np.asarray(u, float), np.asarray(v, float), order, ring == TPOLY)


def displacement_field(spec: SurfaceSpec, step: int, u, v) -> np.ndarray:
    """Per-unit-t displacement of layer ``step`` at the given nodes, shape ``(..., 3)``."""
    base = spec.truncated(step)
    surf = _surface_at(base, np.asarray(u, float), np.asarray(v, float), 2, False)
    uj, vj = jets.seed("u", u, 2), jets.seed("v", v, 2)
    disp = _direction_field(spec.entry, step, surf, uj, vj)
    return np.stack([np.asarray(d.value) for d in disp], axis=-1)


# -- node-parallel evaluation ---------------------------------------------------


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _map_nodes(fn, u: np.ndarray, v: np.ndarray):
    """Apply ``fn(u_chunk, v_chunk)`` over node chunks; results concatenated in order."""
    n = _threads()
    if n == 1 or u.size < 2 * n:
        return fn(u, v)
    chunks = np.array_split(np.arange(u.size), n)
    with ThreadPoolExecutor(max_workers=n) as pool:
        parts = list(pool.map(lambda idx: fn(u[idx], v[idx]), chunks))
    if isinstance(parts[0], tuple):
        return tuple(np.concatenate(p, axis=0) for p in zip(*parts))
    return np.concatenate(parts, axis=0)


def _h_field_tpoly(spec: SurfaceSpec):
    def fn(u, v):
        surf = _surface_at(spec, u, v, 2, True)
        h = mean_curvature_numerator(fundamental_magnitudes(surf))
        return h.coeffs[0]

    return fn


def mu_sq_polynomial(spec: SurfaceSpec, rule: QuadratureRule | None = None) -> TPoly:
    """Mean-square curvature numerator of the next surface as a polynomial in t."""
    rule = rule or build_rule(DEFAULT_QUAD_ORDER, spec.domain)
    h = _map_nodes(_h_field_tpoly(spec.with_layer(None)), rule.u, rule.v)
    return integrate(rule, jets._tconv(h, h))


def _metric_fields(spec: SurfaceSpec):
    def fn(u, v):
        surf = _surface_at(spec, u, v, 2, False)
        m = fundamental_magnitudes(surf)
        h = np.asarray(mean_curvature_numerator(m).value)
        k = np.asarray(gaussian_curvature_numerator(m).value)
        a = area_integrand(m)
        return h, k, a

    return fn


@dataclass(frozen=True)
class SurfaceMetrics:
    area: float
    mu_sq: float
    nu: float


def surface_metrics(spec: SurfaceSpec, rule: QuadratureRule | None = None) -> SurfaceMetrics:
    """Area, mean square of H and rms of K for the fully specified surface."""
    rule = rule or build_rule(DEFAULT_QUAD_ORDER, spec.domain)
    h, k, a = _map_nodes(_metric_fields(spec), rule.u, rule.v)
    return SurfaceMetrics(
        area=integrate(rule, a),
        mu_sq=integrate(rule, h * h),
        nu=math.sqrt(integrate(rule, k * k)),
    )


# -- derived quantities -----------------------------------------------------------


def curvature_ratio(nu: float, mu_sq: float) -> float:
    if mu_sq == 0.0:
        raise UndefinedRatioError("curvature ratio undefined for zero mean-square curvature")
    return nu / mu_sq


def percentage_decreases(areas, reference: float | None = None) -> np.ndarray:
    """Matrix of ``100 (A_i - A_j) / D`` for ``i < j``; NaN elsewhere.

    ``D`` is ``A_0 - reference`` when a reference minimal area is given and
    ``A_0`` otherwise.
    """
    a = np.asarray(areas, dtype=float)
    if a.size == 0 or np.any(a <= 0):
        raise ValueError("areas must be non-empty and positive")
    if reference is not None:
        if reference >= a[0]:
            raise ValueError(f"reference area {reference} is not below A_0 = {a[0]}")
        denom = a[0] - reference
    else:
        denom = a[0]
    out = np.full((a.size, a.size), np.nan)
    for i in range(a.size):
        for j in range(i + 1, a.size):
            out[i, j] = 100.0 * (a[i] - a[j]) / denom
    return out


@dataclass
class IterationRecord:
    n: int
    area: float
    mu_sq: float
    nu: float
    ratio: float | None
    t_min: float | None = None
    mu_sq_poly: TPoly | None = None
    p_pct: float | None = None
    p_total: float | None = None
    q_pct: float | None = None
    q_total: float | None = None
    mu_rms_decrease_pct: float | None = None


@dataclass
class Report:
    spec: SurfaceSpec
    records: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    error: str | None = None

    @property
    def areas(self) -> list:
        return [r.area for r in self.records]

    @property
    def t_mins(self) -> list:
        return [r.t_min for r in self.records[1:]]


def _record(spec: SurfaceSpec, rule: QuadratureRule, prev: list) -> IterationRecord:
    m = surface_metrics(spec, rule)
    try:
        ratio = curvature_ratio(m.nu, m.mu_sq)
    except UndefinedRatioError:
        ratio = None
    rec = IterationRecord(n=spec.depth, area=m.area, mu_sq=m.mu_sq, nu=m.nu, ratio=ratio)
    if prev:
        a0, a_prev = prev[0].area, prev[-1].area
        ref = spec.entry.reference_area
        if ref is not None and ref < a0:
            rec.p_pct = 100.0 * (a_prev - m.area) / (a0 - ref)
            rec.p_total = 100.0 * (a0 - m.area) / (a0 - ref)
        else:
            rec.q_pct = 100.0 * (a_prev - m.area) / a0
            rec.q_total = 100.0 * (a0 - m.area) / a0
        mu_prev = math.sqrt(max(prev[-1].mu_sq, 0.0))
        if mu_prev > 0:
            rec.mu_rms_decrease_pct = 100.0 * (mu_prev - math.sqrt(max(m.mu_sq, 0.0))) / mu_prev
    return rec


def iterate(
    spec: SurfaceSpec,
    steps: int,
    rule: QuadratureRule | None = None,
    bracket=DEFAULT_BRACKET,
    records: list | None = None,
) -> Report:
    """Run ``steps`` more iterations from ``spec``.

    ``records`` carries metrics of the steps already in ``spec`` (when
    resuming); otherwise the initial surface is measured first.  A failure
    stops the run and is reported in ``Report.error``.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rule = rule or build_rule(DEFAULT_QUAD_ORDER, spec.domain)
    config = {"quad_order": rule.order, "bracket": [float(bracket[0]), float(bracket[1])]}
    report = Report(spec=spec, records=list(records or []), config=config)
    try:
        if not report.records:
            report.records.append(_record(spec, rule, []))
        for _ in range(steps):
            poly = mu_sq_polynomial(spec, rule)
            if poly.degree < 1:
                t_min = 0.0
            else:
                t_min = minimize(poly, bracket).t_min
            spec = spec.with_layer(t_min)
            report.spec = spec
            rec = _record(spec, rule, report.records)
            rec.t_min, rec.mu_sq_poly = t_min, poly
            report.records.append(rec)
            log.info("step %d: t_min=%.6g area=%.6g", spec.depth, t_min, rec.area)
    except (ArithmeticError, ValueError) as exc:
        report.error = f"step {spec.depth + 1}: {exc}"
    return report


def non_iterability_ratios(entry: CatalogEntry, t_first: float, u, v) -> np.ndarray:
    """Ratio of the second layer's displacement field to the first's.

    With the constant-curvature variant applied at every step the second
    field is the first one again, so the ratio is the same at every node.
    Only the component along the dominant axis of the displacement is used.
    """
    spec = SurfaceSpec(entry).with_layer(t_first).with_layer(None)
    d0 = displacement_field(spec, 0, u, v)
    d1 = displacement_field(spec, 1, u, v)
    axis = int(np.argmax(np.abs(d0).sum(axis=tuple(range(d0.ndim - 1)))))
    return d1[..., axis] / d0[..., axis]


def boundary_displacement(spec: SurfaceSpec, samples_per_edge: int = 64, edges=None) -> float:
    """Largest ``|x_n - x_{n-1}|`` over boundary edges.

    ``edges`` defaults to the entry's prescribed edges; pass
    ``catalog.EDGES`` to sample all four.
    """
    if spec.depth == 0:
        return 0.0
    edges = spec.entry.prescribed_edges if edges is None else edges
    u, v = boundary_points(spec.domain, samples_per_edge, edges)
    a = evaluate_surface(spec, u, v, order=0)
    b = evaluate_surface(spec.truncated(spec.depth - 1), u, v, order=0)
    diff = np.stack([np.asarray(p.value) - np.asarray(q.value) for p, q in zip(a.components(), b.components())])
    return float(np.max(np.linalg.norm(diff, axis=0)))

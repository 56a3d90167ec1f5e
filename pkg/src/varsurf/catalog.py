"""Built-in starting surfaces and the JSON format for custom patches.

Built-in entries
----------------
``hemiellipsoid``  ``(sin u cos v, b sin u sin v, c cos u)`` on ``[0, pi]^2``,
                   blend ``v (pi - v)``, displacement along ``(0, 1, 0)``.
``hump``           ``(u, v, 16 u v (1-u) (1-v))`` on ``[0, 1]^2``, blend
                   ``u v (1-u) (1-v)``, displacement along ``(0, 0, 1)``.
``bilinear``       ``r (u + v - 2 u v, v, u)`` on ``[0, 1]^2``, same blend,
                   displacement along ``(-1, 0, 0)``.

Custom expression grammar
-------------------------
Components and blends are strings over ``u``, ``v``, ``pi``, numeric
literals, ``+ - *``, ``**`` with a non-negative integer literal exponent,
division by a numeric literal, and ``sin(...)``/``cos(...)`` of
sub-expressions in ``u`` and ``v``.  Anything else is rejected.
"""

from __future__ import annotations

import ast
import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import jets
from .jets import Jet

H_MODES = ("true_H", "unit_H_first_step", "unit_H_always")
EDGES = ("u0", "u1", "v0", "v1")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    components: Callable = field(repr=False)
    domain: tuple
    blend: Callable = field(repr=False)
    direction: object  # "normal" or a unit 3-tuple
    h0_mode: str = "true_H"
    reference_area: float | None = None
    params: dict = field(default_factory=dict)
    prescribed_edges: tuple = EDGES
    document: dict | None = None

    def __post_init__(self):
        if self.h0_mode not in H_MODES:
            raise CatalogError(f"unknown h0_mode {self.h0_mode!r}")
        if self.direction != "normal":
            k = np.asarray(self.direction, dtype=float)
            if k.shape != (3,) or abs(np.linalg.norm(k) - 1.0) > 1e-12:
                raise CatalogError("fixed direction must be a unit 3-vector")

    def point(self, u, v) -> np.ndarray:
        """Surface position(s) at plain parameter values, shape ``(..., 3)``."""
        uj, vj = jets.seed("u", u, 0), jets.seed("v", v, 0)
        return np.stack([np.asarray(c.value) for c in self.components(uj, vj)], axis=-1)

    def blend_value(self, u, v) -> np.ndarray:
        return np.asarray(self.blend(jets.seed("u", u, 0), jets.seed("v", v, 0)).value)

    def replace(self, **changes) -> "CatalogEntry":
        from dataclasses import replace

        return replace(self, **changes)

    def describe(self) -> dict:
        """JSON-friendly snapshot sufficient to rebuild the entry."""
        return {
            "name": self.name,
            "params": dict(self.params),
            "h0_mode": self.h0_mode,
            "reference_area": self.reference_area,
            "document": self.document,
        }


# -- built-in parametrizations --------------------------------------------------


def _hemiellipsoid(b: float, c: float):
    def components(u: Jet, v: Jet):
        su = jets.sin(u)
        return su * jets.cos(v), su * jets.sin(v) * b, jets.cos(u) * c

    return components


def _hemi_blend(u: Jet, v: Jet) -> Jet:
    return v * (math.pi - v)


def _hump(u: Jet, v: Jet):
    return u, v, 16.0 * u * v * (1.0 - u) * (1.0 - v)


def _square_blend(u: Jet, v: Jet) -> Jet:
    return u * v * (1.0 - u) * (1.0 - v)


def _bilinear(r: float):
    def components(u: Jet, v: Jet):
        # every component scales with r so the corners are r times the unit case
        return r * (u + v - 2.0 * u * v), r * v, r * u

    return components


def builtin_names() -> tuple:
    return ("hemiellipsoid", "hump", "bilinear")


def get_entry(name: str, params: dict | None = None, h0_mode: str | None = None) -> CatalogEntry:
    params = dict(params or {})
    if name == "hemiellipsoid":
        b = float(params.pop("b", 1.0))
        c = float(params.pop("c", 1.0))
        _no_extra(name, params)
        ref = None
        if b == 1.0 and c == 1.0:
            ref = math.pi
        else:
            warnings.warn(
                "no flat reference area is configured for b, c != 1; percentage "
                "decreases fall back to the initial-area form",
                stacklevel=2,
            )
        return CatalogEntry(
            name=name,
            components=_hemiellipsoid(b, c),
            domain=(0.0, math.pi, 0.0, math.pi),
            blend=_hemi_blend,
            direction=(0.0, 1.0, 0.0),
            h0_mode=h0_mode or "true_H",
            reference_area=ref,
            params={"b": b, "c": c},
            prescribed_edges=("v0", "v1"),
        )
    if name == "hump":
        _no_extra(name, params)
        return CatalogEntry(
            name=name,
            components=_hump,
            domain=(0.0, 1.0, 0.0, 1.0),
            blend=_square_blend,
            direction=(0.0, 0.0, 1.0),
            h0_mode=h0_mode or "true_H",
            reference_area=1.0,
        )
    if name == "bilinear":
        r = float(params.pop("r", 1.0))
        _no_extra(name, params)
        return CatalogEntry(
            name=name,
            components=_bilinear(r),
            domain=(0.0, 1.0, 0.0, 1.0),
            blend=_square_blend,
            direction=(-1.0, 0.0, 0.0),
            h0_mode=h0_mode or "true_H",
            params={"r": r},
        )
    if name == "custom":
        if "document" not in params:
            raise CatalogError("custom surfaces need a config document")
        return load_custom(params["document"])
    raise CatalogError(f"unknown surface {name!r}; choose from {builtin_names() + ('custom',)}")


def _no_extra(name, params):
    if params:
        raise CatalogError(f"unexpected parameters for {name}: {sorted(params)}")


# -- custom expressions ---------------------------------------------------------


def _literal(node) -> float | None:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(
        node.value, bool
    ):
        return float(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _literal(node.operand)
        if inner is not None:
            return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    return None


def compile_expression(text: str) -> Callable:
    """Compile a grammar-restricted expression into ``f(u_jet, v_jet)``."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise CatalogError(f"malformed expression {text!r}: {exc.msg}") from None

    def build(node):
        lit = _literal(node)
        if lit is not None:
            return lambda u, v: lit
        if isinstance(node, ast.Name):
            if node.id == "u":
                return lambda u, v: u
            if node.id == "v":
                return lambda u, v: v
            raise CatalogError(f"unknown symbol {node.id!r} in {text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            f = build(node.operand)
            return (lambda u, v: -f(u, v)) if isinstance(node.op, ast.USub) else f
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                n = _literal(node.right)
                if n is None or n < 0 or n != int(n):
                    raise CatalogError(f"exponents must be non-negative integers in {text!r}")
                f, k = build(node.left), int(n)
                return lambda u, v: f(u, v) ** k
            if isinstance(node.op, ast.Div):
                d = _literal(node.right)
                if d is None or d == 0.0:
                    raise CatalogError(f"only division by a non-zero number is allowed in {text!r}")
                f = build(node.left)
                return lambda u, v: f(u, v) * (1.0 / d)
            ops = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b, ast.Mult: lambda a, b: a * b}
            op = ops.get(type(node.op))
            if op is None:
                raise CatalogError(f"unsupported operator in {text!r}")
            f, g = build(node.left), build(node.right)
            return lambda u, v: op(f(u, v), g(u, v))
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in ("sin", "cos"):
                raise CatalogError(f"unsupported function in {text!r}")
            if len(node.args) != 1 or node.keywords:
                raise CatalogError(f"{node.func.id} takes one argument in {text!r}")
            fn = jets.sin if node.func.id == "sin" else jets.cos
            f = build(node.args[0])

            def call(u, v):
                arg = f(u, v)
                if not isinstance(arg, Jet):
                    arg = u * 0.0 + arg
                return fn(arg)

            return call
        raise CatalogError(f"unsupported syntax in {text!r}")

    body = build(tree.body)

    def evaluate(u: Jet, v: Jet) -> Jet:
        out = body(u, v)
        if not isinstance(out, Jet):
            out = u * 0.0 + out
        return out

    return evaluate


BOUNDARY_SAMPLES = 64


def boundary_points(domain, n_per_edge: int, edges=EDGES) -> tuple[np.ndarray, np.ndarray]:
    u0, u1, v0, v1 = domain
    s = np.linspace(0.0, 1.0, n_per_edge)
    us, vs = [], []
    for e in edges:
        if e == "u0":
            us.append(np.full_like(s, u0)); vs.append(v0 + s * (v1 - v0))
        elif e == "u1":
            us.append(np.full_like(s, u1)); vs.append(v0 + s * (v1 - v0))
        elif e == "v0":
            us.append(u0 + s * (u1 - u0)); vs.append(np.full_like(s, v0))
        else:
            us.append(u0 + s * (u1 - u0)); vs.append(np.full_like(s, v1))
    return np.concatenate(us), np.concatenate(vs)


def load_custom(document) -> CatalogEntry:
    """Build an entry from a dict or JSON string (see module docstring)."""
    if isinstance(document, str):
        document = json.loads(document)
    try:
        name = str(document.get("name", "custom"))
        exprs = list(document["components"])
        domain = tuple(float(x) for x in document["domain"])
        blend_text = document["blend"]
    except (KeyError, TypeError) as exc:
        raise CatalogError(f"custom surface document is missing a field: {exc}") from None
    if len(exprs) != 3:
        raise CatalogError("custom surfaces need exactly three component expressions")
    if len(domain) != 4 or not (domain[1] > domain[0] and domain[3] > domain[2]):
        raise CatalogError(f"bad domain {domain}")
    funcs = [compile_expression(e) for e in exprs]
    blend = compile_expression(blend_text)
    direction = document.get("direction", "normal")
    if isinstance(direction, dict):
        if "fixed" not in direction:
            raise CatalogError("direction must be 'normal' or {'fixed': [kx, ky, kz]}")
        direction = tuple(float(k) for k in direction["fixed"])
    elif direction != "normal":
        raise CatalogError("direction must be 'normal' or {'fixed': [kx, ky, kz]}")

    def components(u: Jet, v: Jet):
        return tuple(f(u, v) for f in funcs)

    ref = document.get("reference_area")
    entry = CatalogEntry(
        name=name,
        components=components,
        domain=domain,
        blend=blend,
        direction=direction,
        h0_mode=document.get("h0_mode", "true_H"),
        reference_area=None if ref is None else float(ref),
        params={},
        document=dict(document),
    )
    bu, bv = boundary_points(domain, BOUNDARY_SAMPLES // 4)
    worst = float(np.max(np.abs(entry.blend_value(bu, bv))))
    if worst >= 1e-12:
        raise CatalogError(f"blend does not vanish on the boundary (max |b| = {worst:.3g})")
    return entry


def entry_from_description(desc: dict) -> CatalogEntry:
    """Inverse of :meth:`CatalogEntry.describe`."""
    if desc.get("document") is not None:
        return load_custom(desc["document"]).replace(h0_mode=desc.get("h0_mode", "true_H"))
    entry = get_entry(desc["name"], desc.get("params"), h0_mode=desc.get("h0_mode"))
    return entry

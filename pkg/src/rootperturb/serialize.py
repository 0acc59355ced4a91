"""JSON encodings of inputs and reports.

Complex numbers are ``[re, im]`` pairs.  Output is canonical: keys in a
fixed order and every float printed with 17 significant digits, so the same
inputs always give byte-identical text and floats round-trip exactly.
Non-finite floats are written as the strings ``"inf"``, ``"-inf"`` and
``"nan"``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .bounds import BoundReport
from .domains import Disc, HalfPlane, Polydomain, Rect
from .errors import ParseError
from .grouping import RootGrouping, SeparationRadii
from .multivar import MultiPoly, ProbeResult, ZeroClassification
from .poly import Poly
from .rootfind import DistinctRoots, RootSet


def _float(x) -> str:
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    text = format(x, ".17g")
    return "0" if text == "-0" else text


def dumps(obj, indent: int = 2) -> str:
    """Canonical JSON text for dicts, lists, strings, numbers, bools and None."""
    pad = " " * indent

    def enc(o, level):
        if o is None:
            return "null"
        if o is True:
            return "true"
        if o is False:
            return "false"
        if isinstance(o, int):
            return str(o)
        if isinstance(o, float):
            return _float(o)
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, complex):
            return "[" + _float(o.real) + ", " + _float(o.imag) + "]"
        inner = pad * (level + 1)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [inner + json.dumps(str(k)) + ": " + enc(v, level + 1) for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + pad * level + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            if all(isinstance(v, (int, float, complex)) and not isinstance(v, bool) for v in o):
                return "[" + ", ".join(enc(v, level) for v in o) + "]"
            return "[\n" + ",\n".join(inner + enc(v, level + 1) for v in o) + "\n" + pad * level + "]"
        raise TypeError(f"cannot encode {type(o).__name__}")

    return enc(obj, 0) + "\n"


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _complex(v, what="complex number") -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if (isinstance(v, list) and len(v) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)):
        z = complex(v[0], v[1])
        if math.isfinite(z.real) and math.isfinite(z.imag):
            return z
    raise ParseError(f"bad {what}: {v!r} (expected [re, im])")


def _cpair(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _require(d, key, kind, where):
    if not isinstance(d, dict) or key not in d:
        raise ParseError(f"{where}: missing field {key!r}")
    v = d[key]
    if kind is int and (not isinstance(v, int) or isinstance(v, bool)):
        raise ParseError(f"{where}: field {key!r} must be an integer")
    if kind is list and not isinstance(v, list):
        raise ParseError(f"{where}: field {key!r} must be a list")
    return v


# -- inputs ------------------------------------------------------------------

def poly_to_json(p: Poly) -> dict:
    return {"n": p.n, "coeffs": [_cpair(c) for c in p.coeffs]}


def poly_from_json(d) -> Poly:
    n = _require(d, "n", int, "polynomial")
    coeffs = _require(d, "coeffs", list, "polynomial")
    if n < 0:
        raise ParseError("polynomial: n must be nonnegative")
    if len(coeffs) != n + 1:
        raise ParseError(f"polynomial: expected {n + 1} coefficients, got {len(coeffs)}")
    return Poly([_complex(c, "coefficient") for c in coeffs])


def multipoly_to_json(f: MultiPoly) -> dict:
    return {"nvars": f.nvars,
            "terms": [{"exp": list(e), "coeff": _cpair(c)} for e, c in f.terms.items()]}


def multipoly_from_json(d) -> MultiPoly:
    m = _require(d, "nvars", int, "multivariate polynomial")
    terms = _require(d, "terms", list, "multivariate polynomial")
    if m < 1:
        raise ParseError("multivariate polynomial: nvars must be at least 1")
    acc = []
    for t in terms:
        exp = _require(t, "exp", list, "term")
        if len(exp) != m or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0
                                    for e in exp):
            raise ParseError(f"term: bad exponent {exp!r} for {m} variables")
        acc.append((tuple(exp), _complex(_require(t, "coeff", None, "term"), "coefficient")))
    return MultiPoly(m, acc)


def factor_to_json(b) -> dict:
    if isinstance(b, Disc):
        return {"kind": "disc", "center": _cpair(b.center), "radius": b.radius}
    if isinstance(b, HalfPlane):
        return {"kind": "halfplane", "theta": b.theta}
    if isinstance(b, Rect):
        return {"kind": "rect", "re": list(b.re), "im": list(b.im)}
    raise TypeError(f"unknown factor {b!r}")


def _real(v, where) -> float:
    if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
        raise ParseError(f"{where}: expected a finite number, got {v!r}")
    return float(v)


def factor_from_json(d):
    kind = _require(d, "kind", None, "domain factor")
    try:
        if kind == "disc":
            return Disc(_complex(_require(d, "center", None, "disc"), "center"),
                        _real(_require(d, "radius", None, "disc"), "disc radius"))
        if kind == "halfplane":
            return HalfPlane(_real(_require(d, "theta", None, "halfplane"), "halfplane theta"))
        if kind == "rect":
            re = _require(d, "re", list, "rect")
            im = _require(d, "im", list, "rect")
            if len(re) != 2 or len(im) != 2:
                raise ParseError("rect: re and im must be [lo, hi]")
            return Rect(tuple(_real(x, "rect") for x in re), tuple(_real(y, "rect") for y in im))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"domain factor: {exc}") from exc
    raise ParseError(f"domain factor: unknown kind {kind!r}")


def polydomain_to_json(dom: Polydomain) -> dict:
    return {"factors": [factor_to_json(b) for b in dom.factors]}


def polydomain_from_json(d) -> Polydomain:
    factors = _require(d, "factors", list, "polydomain")
    if not factors:
        raise ParseError("polydomain: needs at least one factor")
    return Polydomain([factor_from_json(b) for b in factors])


def point_from_json(v) -> tuple[complex, ...]:
    if not isinstance(v, list):
        raise ParseError(f"point: expected a list of [re, im], got {v!r}")
    return tuple(_complex(x, "coordinate") for x in v)


# -- reports -----------------------------------------------------------------

def rootset_to_json(rs: RootSet, distinct: DistinctRoots | None = None) -> dict:
    out = {
        "converged": True,
        "degree": len(rs.roots),
        "roots": [_cpair(r) for r in rs.roots],
        "residuals": list(rs.residuals),
        "tol": rs.tol,
        "iterations": rs.iterations,
        "reconstruction_defect": rs.reconstruction_defect,
    }
    if distinct is not None:
        out["distinct"] = [{"point": _cpair(z), "multiplicity": m}
                           for z, m in zip(distinct.points, distinct.multiplicities)]
    return out


def bound_report_to_json(rep: BoundReport) -> dict:
    h = rep.hypotheses
    return {
        "C": rep.constants.C,
        "D": rep.constants.D,
        "sum_ratio": rep.constants.sum_ratio,
        "threshold": rep.threshold,
        "infinity_bound": rep.bound.infinity_bound,
        "near_bound": rep.bound.near_bound,
        "hypotheses": {
            "constant_term": h.h_constant_term,
            "leading_at_deg_q": h.h_leading_at_degq,
            "global_small": h.h_global_small,
            "eps_admissible": h.h_eps_admissible,
            "all": h.all_hold,
            "max_dev": h.max_dev,
            "shift_applied": None if h.shift_applied is None else _cpair(h.shift_applied),
        },
        "q_roots": [_cpair(z) for z in rep.q_roots],
        "per_root": [{"root": _cpair(r.root), "regime": r.regime, "slack": r.slack}
                     for r in rep.per_root],
        "violations": len(rep.violations),
    }


def grouping_to_json(g: RootGrouping, radii: SeparationRadii | None = None) -> dict:
    out = {
        "epsilon": g.epsilon,
        "clusters": [{"center": _cpair(c.center), "multiplicity": c.multiplicity,
                      "members": [_cpair(x) for x in c.members]} for c in g.clusters],
        "infinity_group": [_cpair(x) for x in g.infinity_group],
        "unassigned": [_cpair(x) for x in g.unassigned],
        "counts_valid": g.counts_valid,
        "eps_admissible": g.eps_admissible,
        # geometry for plotting: one ball per cluster and the escape circle
        "escape_radius": 1.0 / g.epsilon,
    }
    if radii is not None:
        out["omega"] = radii.omega
        out["psi"] = radii.psi
        out["eps_max"] = radii.eps_max
    return out


def classification_to_json(c: ZeroClassification) -> dict:
    return {
        "kind": c.kind.value,
        "alpha": [_cpair(x) for x in c.alpha],
        "S": sorted(c.S),
        "certificate": c.certificate,
        "threshold": c.threshold,
    }


def probe_to_json(r: ProbeResult) -> dict:
    return {
        "evidence_only": True,
        "zero_found": None if r.zero_found is None else [_cpair(x) for x in r.zero_found],
        "source": r.source,
        "min_abs": r.min_abs,
        "samples": r.samples,
        "slices": r.slices,
    }

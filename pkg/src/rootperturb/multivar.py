"""Sparse multivariate polynomials and boundary zeros of stable polynomials.

A polynomial with no zeros on an open polydomain ``B_0 x ... x B_{m-1}``
can vanish at a point ``alpha`` of the closure in only two ways: every
coordinate of ``alpha`` lies on its factor's boundary, or, with ``S`` the
set of coordinates lying in the open factors, the polynomial vanishes
identically once the coordinates outside ``S`` are fixed to ``alpha``.
:func:`classify_boundary_zero` decides which case a given zero falls in and
checks the second case numerically.

Variables are indexed from 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

from .domains import DEFAULT_TAU, Polydomain, is_in_closure, is_open_member
from .errors import (ArityMismatch, FullAssignment, NoConvergence, NotAZero,
                     OutsideClosure, ZeroPolynomial)
from .poly import ZERO_POLY, Poly, formal_degree
from .rootfind import roots

DEFAULT_DROP_TOL = 1e-12
ZERO_VALUE = 1e-12


def _coerce(c) -> complex:
    if isinstance(c, (list, tuple)) and len(c) == 2:
        c = complex(float(c[0]), float(c[1]))
    z = complex(c)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite coefficient {c!r}")
    return z


@dataclass(frozen=True, eq=False)
class MultiPoly:
    """``sum(a_beta * prod(z_j ** beta[j]))`` over a finite set of exponent tuples.

    Exactly-zero coefficients are dropped; repeated exponents are summed.

    >>> f = MultiPoly(2, {(0, 0): -3, (1, 0): 4, (0, 1): 2})
    >>> eval_multi(f, (1, 1))
    (3+0j)
    """

    nvars: int
    terms: Mapping[tuple[int, ...], complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("need at least one variable")
        items = self.terms.items() if isinstance(self.terms, Mapping) else self.terms
        acc: dict[tuple[int, ...], complex] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars:
                raise ArityMismatch(f"exponent {exp} has length {len(exp)}, expected {self.nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            acc[exp] = acc.get(exp, 0j) + _coerce(c)
        clean = {e: c for e, c in sorted(acc.items()) if c != 0}
        object.__setattr__(self, "terms", MappingProxyType(clean))

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.nvars, tuple(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def max_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        if other.nvars != self.nvars:
            raise ArityMismatch("factors have different numbers of variables")
        acc: dict[tuple[int, ...], complex] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0j) + c1 * c2
        return MultiPoly(self.nvars, acc)

    def __call__(self, *z):
        return eval_multi(self, z)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {dict(self.terms)!r})"


def _check_point(f: MultiPoly, z: Sequence) -> tuple[complex, ...]:
    z = tuple(complex(x) for x in z)
    if len(z) != f.nvars:
        raise ArityMismatch(f"point has {len(z)} coordinates, polynomial has {f.nvars} variables")
    return z


def _check_var(f: MultiPoly, j: int) -> None:
    if not 0 <= j < f.nvars:
        raise ArityMismatch(f"variable index {j} out of range for {f.nvars} variables")


def eval_multi(f: MultiPoly, z: Sequence) -> complex:
    z = _check_point(f, z)
    total = 0j
    for exp, c in f.terms.items():
        term = c
        for x, e in zip(z, exp):
            if e:
                term *= x ** e
        total += term
    return total


def deg_in_var(f: MultiPoly, j: int):
    """Highest power of ``z_j`` with a nonzero coefficient, or ``ZERO_POLY``."""
    _check_var(f, j)
    if f.is_zero():
        return ZERO_POLY
    return max(exp[j] for exp in f.terms)


def insert(w: Sequence, j: int, t) -> tuple:
    """Full point from the other coordinates ``w`` with ``t`` placed at index ``j``."""
    w = tuple(w)
    return w[:j] + (t,) + w[j:]


def slice_poly(f: MultiPoly, j: int, w: Sequence) -> Poly:
    """Univariate polynomial in ``z_j`` with the other variables fixed to ``w``.

    The ambient degree is always ``deg_in_var(f, j)`` even when the leading
    coefficient polynomial vanishes at ``w``.
    """
    _check_var(f, j)
    if f.is_zero():
        raise ZeroPolynomial("slice of the zero polynomial")
    w = tuple(complex(x) for x in w)
    if len(w) != f.nvars - 1:
        raise ArityMismatch(f"expected {f.nvars - 1} fixed values, got {len(w)}")
    n_j = deg_in_var(f, j)
    coeffs = [0j] * (n_j + 1)
    for exp, c in f.terms.items():
        term = c
        for x, e in zip(w, exp[:j] + exp[j + 1:]):
            if e:
                term *= x ** e
        coeffs[exp[j]] += term
    return Poly(coeffs)


def restrict(f: MultiPoly, fixed: Mapping[int, complex],
             drop_tol: float = DEFAULT_DROP_TOL) -> MultiPoly:
    """Substitute ``z_j = fixed[j]`` and collect over the remaining variables.

    The result has one variable per unfixed index, in increasing order.
    Collected coefficients with ``|c| <= drop_tol * f.max_coeff()`` are
    dropped; pass ``drop_tol=0`` to keep every nonzero one.
    """
    fixed = {int(j): complex(v) for j, v in fixed.items()}
    for j in fixed:
        _check_var(f, j)
    free = [j for j in range(f.nvars) if j not in fixed]
    if not free:
        raise FullAssignment("every variable is fixed; use eval_multi")
    acc: dict[tuple[int, ...], complex] = {}
    for exp, c in f.terms.items():
        term = c
        for j, v in fixed.items():
            if exp[j]:
                term *= v ** exp[j]
        key = tuple(exp[j] for j in free)
        acc[key] = acc.get(key, 0j) + term
    cut = drop_tol * f.max_coeff()
    return MultiPoly(len(free), {e: c for e, c in acc.items() if abs(c) > cut})


class ZeroKind(enum.Enum):
    CASE_ONE = "case_one"
    CASE_TWO = "case_two"
    VIOLATION = "violation"


@dataclass(frozen=True)
class ZeroClassification:
    kind: ZeroKind
    alpha: tuple[complex, ...]
    S: frozenset[int] = frozenset()
    # max |coefficient| of f with the coordinates outside S fixed (cases two and violation)
    certificate: float | None = None
    threshold: float | None = None


def classify_boundary_zero(f: MultiPoly, dom: Polydomain, alpha: Sequence,
                           tol: float = 1e-9, tau: float = DEFAULT_TAU) -> ZeroClassification:
    """Decide which boundary-zero case ``alpha`` belongs to.

    ``S`` is the set of coordinates strictly inside their factor.  An empty
    ``S`` is case one.  Otherwise ``f`` restricted by fixing the coordinates
    outside ``S`` must vanish identically; its largest coefficient is the
    certificate and must not exceed ``tol * (1 + f.max_coeff())``.  A larger
    certificate is reported as a violation: for a genuinely stable ``f``
    that can only come from rounding or from ``f`` not being stable.
    """
    alpha = _check_point(f, alpha)
    if len(dom) != f.nvars:
        raise ArityMismatch(f"domain has {len(dom)} factors, polynomial has {f.nvars} variables")
    value = abs(eval_multi(f, alpha))
    if value > tol:
        raise NotAZero(f"|f(alpha)| = {value:.3g} exceeds tol {tol:.3g}")
    for j, (b, x) in enumerate(zip(dom.factors, alpha)):
        if not is_in_closure(b, x, tau):
            raise OutsideClosure(f"coordinate {j} = {x} is outside the closure of its factor")

    S = frozenset(j for j, (b, x) in enumerate(zip(dom.factors, alpha))
                  if is_open_member(b, x, tau))
    if not S:
        return ZeroClassification(ZeroKind.CASE_ONE, alpha, S)
    fixed = {j: alpha[j] for j in range(f.nvars) if j not in S}
    rest = restrict(f, fixed, drop_tol=0.0)
    cert = rest.max_coeff()
    threshold = tol * (1.0 + f.max_coeff())
    kind = ZeroKind.CASE_TWO if cert <= threshold else ZeroKind.VIOLATION
    return ZeroClassification(kind, alpha, S, cert, threshold)


@dataclass(frozen=True)
class ProbeResult:
    """Sampling evidence about stability; never a proof of it."""

    zero_found: tuple[complex, ...] | None
    min_abs: float
    source: str | None = None  # "sample" or "slice"
    samples: int = 0
    slices: int = 0


def stability_probe(f: MultiPoly, dom: Polydomain, samples: int = 256, seed: int = 0,
                    anchors: int | None = None, tau: float = DEFAULT_TAU) -> ProbeResult:
    """Look for zeros of ``f`` inside the open polydomain.

    ``samples`` scrambled-Halton points are evaluated directly.  Then, for
    each variable ``j``, the first ``anchors`` points (default
    ``min(samples, 32)``) fix the other coordinates, the slice in ``z_j`` is
    solved, and any root strictly inside the ``j``-th factor yields a zero.
    A slice that vanishes identically at an interior anchor also yields one.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if len(dom) != f.nvars:
        raise ArityMismatch(f"domain has {len(dom)} factors, polynomial has {f.nvars} variables")
    if f.is_zero():
        pts = dom.sample(1, seed)
        return ProbeResult(tuple(complex(x) for x in pts[0]), 0.0, "sample", 1, 0)

    pts = dom.sample(samples, seed)
    zero_found, source = None, None
    min_abs = math.inf
    for row in pts:
        z = tuple(complex(x) for x in row)
        v = abs(eval_multi(f, z))
        min_abs = min(min_abs, v)
        if zero_found is None and v <= ZERO_VALUE and dom.contains(z, tau):
            zero_found, source = z, "sample"

    n_anchor = min(samples, 32) if anchors is None else min(anchors, samples)
    n_slices = 0
    for j in range(f.nvars):
        if zero_found is not None:
            break
        for row in pts[:n_anchor]:
            w = tuple(complex(x) for k, x in enumerate(row) if k != j)
            sl = slice_poly(f, j, w)
            n_slices += 1
            d = formal_degree(sl)
            if d is ZERO_POLY:
                zero_found, source = tuple(complex(x) for x in row), "slice"
                min_abs = 0.0
                break
            if d == 0:
                continue
            try:
                found = roots(sl).roots
            except NoConvergence:
                continue
            hit = next((t for t in found if is_open_member(dom.factors[j], t, tau)), None)
            if hit is not None:
                zero_found, source = insert(w, j, hit), "slice"
                min_abs = min(min_abs, abs(eval_multi(f, zero_found)))
                break
    return ProbeResult(zero_found, float(min_abs), source, samples, n_slices)


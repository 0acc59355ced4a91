"""Explicit perturbation bounds for roots of nonmonic polynomials.

Three results are implemented here:

* the monic root bound ``|root| <= max(1, sum_{i>=1} |a_i|)``;
* the minimum-distance bound for two polynomials of full degree ``n``
  written in descending form ``f = a_0 z^n + ... + a_n``,
  ``min_i |alpha - beta_i| <= (C * max_i |a_i - b_i|) ** (1/n)``;
* the two-regime bound for ``p, q`` of ambient degree ``n`` with
  ``q(0) != 0``: every root of ``p`` either satisfies
  ``1/|lam| <= (C * dev) ** (1/n)`` (it escaped towards infinity) or lies
  within ``2 * max|zeta|**2 * (C * dev) ** (1/n)`` of a root of ``q``.

For the two-regime bound the ascending coefficients of ``q`` are passed to
:func:`cd_constants` unreversed: ``b_0 = q(0)`` plays the role of the
leading coefficient, because the bound is derived on reciprocal
polynomials.  When ``q(0) = 0`` both polynomials are first translated to a
point where ``q`` does not vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import AmbientMismatch, DegreeZero, LeadingZero, ZeroPolynomial
from .poly import (ZERO_POLY, Poly, find_nonvanishing_point, formal_degree,
                   max_abs_diff, shift)
from .rootfind import DEFAULT_TOL, roots

# multiplies max|zeta| from the numerical roots, guarding against underestimation
DEFAULT_INFLATION = 1 + 1e-8


@dataclass(frozen=True)
class BoundConstants:
    C: float
    D: float
    sum_ratio: float


@dataclass(frozen=True)
class Prop2Result:
    bound: float
    constants: BoundConstants
    max_dev: float
    h_leading: bool
    h_global_small: bool

    @property
    def hypotheses_hold(self) -> bool:
        return self.h_leading and self.h_global_small


@dataclass(frozen=True)
class HypothesisReport:
    h_constant_term: bool
    h_leading_at_degq: bool
    h_global_small: bool
    # vacuous (True) when deg q = 0
    h_eps_admissible: bool
    max_dev: float
    shift_applied: complex | None = None

    @property
    def all_hold(self) -> bool:
        return (self.h_constant_term and self.h_leading_at_degq
                and self.h_global_small and self.h_eps_admissible)


@dataclass(frozen=True)
class TwoRegimeBound:
    infinity_bound: float
    # None when deg q = 0: there is no root of q to be near
    near_bound: float | None


@dataclass(frozen=True)
class RootRegime:
    root: complex
    regime: str  # "near", "infinity" or "violation"
    inv_modulus: float
    near_distance: float | None
    # bound minus measured quantity for the chosen regime (>= 0 when satisfied)
    slack: float


@dataclass(frozen=True)
class BoundReport:
    constants: BoundConstants
    threshold: float
    bound: TwoRegimeBound
    hypotheses: HypothesisReport
    per_root: tuple[RootRegime, ...]
    q_roots: tuple[complex, ...] = field(default=())

    @property
    def violations(self) -> tuple[RootRegime, ...]:
        return tuple(r for r in self.per_root if r.regime == "violation")

    @property
    def regimes(self) -> tuple[str, ...]:
        return tuple(r.regime for r in self.per_root)


def monic_root_bound(f: Poly) -> float:
    """``max(1, sum |a_i / a_deg|)`` over the non-leading coefficients."""
    d = formal_degree(f)
    if d is ZERO_POLY:
        raise ZeroPolynomial("root bound of the zero polynomial")
    if d == 0:
        raise DegreeZero("a nonzero constant has no roots to bound")
    lead = abs(f.coeffs[d])
    return max(1.0, math.fsum(abs(c) for c in f.coeffs[:d]) / lead)


def cd_constants(b: Sequence[complex], n: int | None = None) -> BoundConstants:
    """Constants ``C``, ``D`` and ``sum |b_i / b_0|`` of the distance bound.

    ``b[0]`` is the coefficient the bound normalizes by.  With
    ``w_i = 2 (|b_0| + |b_i|) / |b_0|**2``::

        sum_ratio = sum_{i=0..n} |b_i / b_0|
        D = (1 + sum_{i=0..n} w_i) * sum_ratio
        C = sum_{i=1..n} w_i * D**(n - i)

    >>> cd_constants([-1, 1, -1, 1, 0])
    BoundConstants(C=1779314.0, D=76.0, sum_ratio=4.0)
    """
    b = [complex(x) for x in b]
    if n is None:
        n = len(b) - 1
    if len(b) != n + 1:
        raise AmbientMismatch(f"expected {n + 1} coefficients, got {len(b)}")
    b0 = abs(b[0])
    if b0 == 0:
        raise LeadingZero("b_0 must be nonzero")
    mods = [abs(x) for x in b]
    sum_ratio = math.fsum(m / b0 for m in mods)
    w = [2.0 / b0 ** 2 * (b0 + m) for m in mods]
    D = (1.0 + math.fsum(w)) * sum_ratio
    C = math.fsum(w[i] * D ** (n - i) for i in range(1, n + 1))
    return BoundConstants(C=C, D=D, sum_ratio=sum_ratio)


def _nth_root(x: float, n: int) -> float:
    return x ** (1.0 / n) if x > 0 else 0.0


def prop2_bound(f: Poly, g: Poly) -> Prop2Result:
    """Distance bound from each root of ``f`` to the nearest root of ``g``.

    ``g`` must have formal degree equal to the shared ambient degree ``n``.
    Hypotheses are reported, not enforced.
    """
    if f.n != g.n:
        raise AmbientMismatch(f"ambient degrees differ: {f.n} vs {g.n}")
    n = g.n
    if n == 0:
        raise DegreeZero("ambient degree must be at least 1")
    # descending form: position i holds the coefficient of z**(n - i)
    a = f.coeffs[::-1]
    b = g.coeffs[::-1]
    if b[0] == 0:
        raise LeadingZero("g must have full degree n")
    consts = cd_constants(b, n)
    dev = max_abs_diff(f, g)
    return Prop2Result(
        bound=_nth_root(consts.C * dev, n),
        constants=consts,
        max_dev=dev,
        h_leading=abs(a[0] - b[0]) <= 0.5 * abs(b[0]),
        h_global_small=dev <= consts.sum_ratio,
    )


def _threshold(consts: BoundConstants, max_zeta: float, n: int) -> float:
    return (2.0 * max_zeta) ** (-n) / consts.C


def admissibility_threshold(q: Poly, n: int | None = None, inflation: float = 1.0,
                            tol: float = DEFAULT_TOL) -> float:
    """Largest ``max |a_i - b_i|`` for which the two-regime bound applies.

    Equals ``(2 max|zeta|)**(-n) / C``; ``+inf`` when ``q`` is a nonzero
    constant (the condition is vacuous).
    """
    if n is not None and n != q.n:
        q = q.with_ambient(n)
    d = formal_degree(q)
    if d is ZERO_POLY:
        raise ZeroPolynomial("q must be nonzero")
    if d == 0:
        return math.inf
    if q.coeffs[0] == 0:
        raise LeadingZero("q(0) must be nonzero; shift q first")
    consts = cd_constants(q.coeffs, q.n)
    max_zeta = max(abs(z) for z in roots(q, tol).roots) * inflation
    return _threshold(consts, max_zeta, q.n)


def theorem4_analyze(p: Poly, q: Poly, inflation: float = DEFAULT_INFLATION,
                     tol: float = DEFAULT_TOL, atol: float = 0.0) -> BoundReport:
    """Check the hypotheses of the two-regime bound and classify every root of ``p``.

    A root is labelled ``"near"`` when its distance to the closest root of
    ``q`` is within ``near_bound``, else ``"infinity"`` when
    ``1/|root| <= infinity_bound``, else ``"violation"``.  ``atol`` widens
    both comparisons to absorb root-finder error.

    If ``q(0) = 0`` the pair is translated by the first integer ``z0`` with
    ``q(z0) != 0``; the analysis runs on the translated pair and reported
    roots are moved back by ``z0``.
    """
    if q.is_zero():
        raise ZeroPolynomial("no perturbation theory exists around q = 0")
    if p.n != q.n:
        raise AmbientMismatch(f"ambient degrees differ: {p.n} vs {q.n}")
    n = q.n
    if n == 0:
        raise DegreeZero("ambient degree must be at least 1")

    z0 = None
    if q.coeffs[0] == 0:
        z0 = find_nonvanishing_point(q)
        p, q = shift(p, z0), shift(q, z0)
    b = q.coeffs
    a = p.coeffs
    consts = cd_constants(b, n)
    dq = formal_degree(q)
    dev = max_abs_diff(p, q)

    zetas = roots(q, tol).roots if dq >= 1 else ()
    if zetas:
        max_zeta = max(abs(z) for z in zetas) * inflation
        threshold = _threshold(consts, max_zeta, n)
    else:
        max_zeta = 0.0
        threshold = math.inf

    hyp = HypothesisReport(
        h_constant_term=abs(a[0] - b[0]) <= 0.5 * abs(b[0]),
        h_leading_at_degq=abs(a[dq] - b[dq]) < abs(b[dq]),
        h_global_small=dev <= consts.sum_ratio,
        h_eps_admissible=dev <= threshold,
        max_dev=dev,
        shift_applied=z0,
    )
    inf_bound = _nth_root(consts.C * dev, n)
    near_bound = 2.0 * max_zeta ** 2 * inf_bound if zetas else None

    per_root = []
    dp = formal_degree(p)
    lams = roots(p, tol).roots if dp not in (ZERO_POLY, 0) else ()
    back = z0 if z0 is not None else 0j
    for lam in lams:
        inv = 1.0 / abs(lam) if lam != 0 else math.inf
        dist = min(abs(lam - z) for z in zetas) if zetas else None
        if dist is not None and dist <= near_bound + atol:
            regime, slack = "near", near_bound - dist
        elif inv <= inf_bound + atol:
            regime, slack = "infinity", inf_bound - inv
        else:
            regime = "violation"
            slack = inf_bound - inv if dist is None else max(inf_bound - inv, near_bound - dist)
        per_root.append(RootRegime(lam + back, regime, inv, dist, slack))

    return BoundReport(
        constants=consts,
        threshold=threshold,
        bound=TwoRegimeBound(inf_bound, near_bound),
        hypotheses=hyp,
        per_root=tuple(per_root),
        q_roots=tuple(z + back for z in zetas),
    )

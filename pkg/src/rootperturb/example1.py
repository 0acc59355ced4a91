"""End-to-end check on ``q = z^3 - z^2 + z - 1`` perturbed by ``eta`` in every slot.

The perturbed polynomial is
``p = eta z^4 + (1+eta) z^3 + (-1+eta) z^2 + (1+eta) z + (-1+eta)`` in the
space of degree-4 polynomials.  Reference values are the published ones for
``eta = 1e-8``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import admissibility_threshold, cd_constants, theorem4_analyze
from .grouping import group_roots
from .poly import Poly
from .rootfind import distinct_roots, roots

ETA = 1e-8


def example1_pair(eta: float = ETA) -> tuple[Poly, Poly]:
    q = Poly([-1, 1, -1, 1, 0])
    p = Poly([b + eta for b in q.coeffs])
    return p, q


@dataclass(frozen=True)
class Check:
    name: str
    computed: object
    expected: object
    tolerance: str
    passed: bool


def identify_roots(lams) -> dict[str, complex]:
    """Label the four roots: the large one, the one near 1, and the pair near +-i."""
    lams = sorted(lams, key=abs)
    big = lams[-1]
    small = lams[:-1]
    one = min(small, key=lambda z: abs(z - 1))
    rest = [z for z in small if z is not one]
    up = max(rest, key=lambda z: z.imag)
    down = min(rest, key=lambda z: z.imag)
    return {"lambda1": one, "lambda2": up, "lambda3": down, "lambda4": big}


def run_example1(eta: float = ETA) -> list[Check]:
    p, q = example1_pair(eta)
    checks = []

    def add(name, computed, expected, tolerance, passed):
        checks.append(Check(name, computed, expected, tolerance, bool(passed)))

    k = cd_constants(q.coeffs, q.n)
    add("sum_ratio", k.sum_ratio, 4, "exact", k.sum_ratio == 4)
    add("D", k.D, 76, "exact", k.D == 76)
    add("C", k.C, 1779314, "exact", k.C == 1779314)

    th = admissibility_threshold(q)
    exact = Fraction(1, 28469024)
    add("threshold", th, "1/28469024", "1e-15 rel",
        abs(Fraction(th) - exact) <= Fraction(1, 10 ** 15) * exact)

    rep = theorem4_analyze(p, q)
    found = roots(p).roots
    lam = identify_roots(found)
    l1, l2, l3, l4 = lam["lambda1"], lam["lambda2"], lam["lambda3"], lam["lambda4"]
    add("lambda1", l1, "1.00000", "1e-5 abs", abs(l1 - 1) <= 1e-5)
    add("lambda2", l2, "2.5000e-9 + 1.00000i", "1e-6 abs, Re in [1e-10, 1e-8]",
        abs(l2 - 1j) <= 1e-6 and 1e-10 <= l2.real <= 1e-8)
    add("lambda3", l3, "2.5000e-9 - 1.00000i", "1e-6 abs, Re in [1e-10, 1e-8]",
        abs(l3 + 1j) <= 1e-6 and 1e-10 <= l3.real <= 1e-8)
    inv4 = 1 / abs(l4)
    add("1/|lambda4|", inv4, 1.0e-8, "1e-3 rel", abs(inv4 - 1e-8) <= 1e-3 * 1e-8)

    add("infinity_bound", rep.bound.infinity_bound, 0.36523, "1e-4 abs",
        abs(rep.bound.infinity_bound - 0.36523) <= 1e-4)
    add("near_bound", rep.bound.near_bound, 0.73045, "1e-4 abs",
        abs(rep.bound.near_bound - 0.73045) <= 1e-4)
    add("hypotheses", rep.hypotheses.all_hold, True, "all true", rep.hypotheses.all_hold)
    regime_of = {r.root: r.regime for r in rep.per_root}
    regimes = tuple(regime_of[min(regime_of, key=lambda z: abs(z - x))] for x in (l1, l2, l3, l4))
    add("regimes", regimes, ("near", "near", "near", "infinity"), "exact",
        regimes == ("near", "near", "near", "infinity"))

    grouping = group_roots(distinct_roots(q), found, 0.9)
    add("grouping eps=0.9", grouping.counts_valid, True, "counts valid", grouping.counts_valid)
    return checks


def format_checks(checks: list[Check]) -> str:
    lines = [f"{'check':<18} {'computed':<46} {'reference':<38} {'tolerance':<32} result"]
    for c in checks:
        computed = repr(c.computed) if not isinstance(c.computed, float) else format(c.computed, ".10g")
        lines.append(f"{c.name:<18} {computed:<46} {str(c.expected):<38} {c.tolerance:<32} "
                     f"{'PASS' if c.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"

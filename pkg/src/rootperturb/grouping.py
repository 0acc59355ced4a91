"""Partition the roots of a perturbed polynomial around the roots of the original.

For ``0 < eps < min(omega, psi)``, where ``omega`` is the smallest distance
between distinct roots of ``q`` and ``psi = 1 / max|zeta|``, a small enough
coefficient perturbation ``p`` of ``q`` has exactly ``m_j`` roots within
``eps`` of each root ``zeta_j`` (multiplicity ``m_j``) and exactly
``deg p - deg q`` roots outside the closed disc of radius ``1/eps``.
:func:`group_roots` checks those counts for a concrete ``p``, and
:func:`find_delta_empirically` estimates how large the perturbation may be.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidEpsilon, NoConvergence
from .poly import ZERO_POLY, Poly, formal_degree
from .rootfind import DEFAULT_TOL, DistinctRoots, distinct_roots, roots


@dataclass(frozen=True)
class SeparationRadii:
    omega: float
    psi: float

    @property
    def eps_max(self) -> float:
        return min(self.omega, self.psi)


@dataclass(frozen=True)
class Cluster:
    center: complex
    multiplicity: int
    members: tuple[complex, ...]


@dataclass(frozen=True)
class RootGrouping:
    epsilon: float
    clusters: tuple[Cluster, ...]
    infinity_group: tuple[complex, ...]
    unassigned: tuple[complex, ...]
    counts_valid: bool
    # False when epsilon >= eps_max; the grouping is still computed
    eps_admissible: bool = True

    @property
    def total(self) -> int:
        return (sum(len(c.members) for c in self.clusters)
                + len(self.infinity_group) + len(self.unassigned))


def separation_radii(q_roots: DistinctRoots) -> SeparationRadii:
    pts = q_roots.points
    d = len(pts)
    if d <= 1:
        omega = math.inf
    else:
        omega = min(abs(pts[i] - pts[j]) for i in range(d) for j in range(i + 1, d))
    if d == 0 or (d == 1 and pts[0] == 0):
        psi = math.inf
    else:
        psi = 1.0 / max(abs(z) for z in pts)
    return SeparationRadii(omega, psi)


def group_roots(q_roots: DistinctRoots, p_roots, epsilon: float,
                deg_p: int | None = None, deg_q: int | None = None) -> RootGrouping:
    """Assign each root of ``p`` to a cluster, the infinity group, or neither.

    A root joins the cluster of the nearest ``zeta_j`` with
    ``|lam - zeta_j| < eps``; otherwise it joins the infinity group when
    ``|lam| > 1/eps``.  Roots exactly on ``|lam| = 1/eps`` stay unassigned.

    ``counts_valid`` checks the exact counts with every region counted on
    its own: ``m_j`` roots in each ball ``B(zeta_j, eps)``,
    ``deg_p - deg_q`` roots with ``|lam| > 1/eps`` and nothing left over.
    A root lying in two regions (two overlapping balls, or a ball and the
    exterior) therefore invalidates the grouping even though it is
    assigned only once.
    """
    if not epsilon > 0:
        raise InvalidEpsilon(f"epsilon must be positive, got {epsilon}")
    lams = tuple(complex(x) for x in p_roots)
    if deg_p is None:
        deg_p = len(lams)
    if deg_q is None:
        deg_q = q_roots.degree
    centers = q_roots.points
    members: list[list[complex]] = [[] for _ in centers]
    infinity, unassigned = [], []
    radius = 1.0 / epsilon
    for lam in lams:
        best, best_dist = None, math.inf
        for j, z in enumerate(centers):
            dist = abs(lam - z)
            if dist < epsilon and dist < best_dist:
                best, best_dist = j, dist
        if best is not None:
            members[best].append(lam)
        elif abs(lam) > radius:
            infinity.append(lam)
        else:
            unassigned.append(lam)

    clusters = tuple(Cluster(z, m, tuple(mem))
                     for z, m, mem in zip(centers, q_roots.multiplicities, members))
    in_ball = [sum(abs(lam - z) < epsilon for lam in lams) for z in centers]
    outside = sum(abs(lam) > radius for lam in lams)
    valid = (all(k == m for k, m in zip(in_ball, q_roots.multiplicities))
             and outside == deg_p - deg_q and not unassigned)
    return RootGrouping(
        epsilon=epsilon,
        clusters=clusters,
        infinity_group=tuple(infinity),
        unassigned=tuple(unassigned),
        counts_valid=valid,
        eps_admissible=epsilon < separation_radii(q_roots).eps_max,
    )


def grouping_chain_holds(g: RootGrouping) -> bool:
    """Geometric consistency of a valid grouping.

    Every center lies in the open disc of radius ``1/eps``, no center lies
    in another center's ball, cluster members satisfy ``|lam| <= 1/eps`` and
    infinity-group members satisfy ``|lam| > 1/eps``.
    """
    R = 1.0 / g.epsilon
    centers = [c.center for c in g.clusters]
    if any(abs(z) >= R for z in centers):
        return False
    for i, zi in enumerate(centers):
        for j, zj in enumerate(centers):
            if i != j and abs(zj - zi) < g.epsilon:
                return False
    if any(abs(lam) > R for c in g.clusters for lam in c.members):
        return False
    return all(abs(lam) > R for lam in g.infinity_group)


def unit_perturbations(n: int, trials: int, seed: int) -> list[np.ndarray]:
    """Per-trial perturbation directions with ``max |u_i| = 1``.

    Moduli are uniform on ``[0, 1]`` with uniform phases; one coefficient
    per trial, chosen at random, is set to modulus exactly 1.  Trial ``t``
    draws from its own stream seeded by ``(seed, t)``.
    """
    out = []
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        mod = rng.uniform(0.0, 1.0, n + 1)
        mod[rng.integers(n + 1)] = 1.0
        out.append(mod * np.exp(2j * np.pi * rng.random(n + 1)))
    return out


def aligned_perturbations(q_roots: DistinctRoots, n: int) -> list[np.ndarray]:
    """One unit-modulus direction per distinct root ``zeta``, ``u_i = conj(zeta**i) / |zeta**i|``.

    To first order the root near ``zeta`` moves by
    ``delta * sum(u_i zeta**i) / q'(zeta)``; these phases make every term of
    the sum add up, which is the largest displacement available at that size.
    """
    out = []
    for z in q_roots.points:
        if z == 0:
            u = np.zeros(n + 1, dtype=complex)
            u[0] = 1.0
        else:
            u = np.exp(-1j * np.angle(z) * np.arange(n + 1))
        out.append(u)
    return out


def _trial_valid(q: Poly, q_roots: DistinctRoots, deg_q: int, u: np.ndarray,
                 delta: float, epsilon: float, tol: float) -> bool:
    p = Poly([b + delta * x for b, x in zip(q.coeffs, u)])
    dp = formal_degree(p)
    if dp is ZERO_POLY:
        return False
    try:
        lams = roots(p, tol).roots if dp > 0 else ()
    except NoConvergence:
        return False
    return group_roots(q_roots, lams, epsilon, dp, deg_q).counts_valid


def perturbations_valid(q: Poly, q_roots: DistinctRoots, delta: float, epsilon: float,
                        directions, tol: float = DEFAULT_TOL) -> bool:
    """True when every ``q + delta * u`` for ``u`` in ``directions`` groups correctly."""
    deg_q = q_roots.degree
    return all(_trial_valid(q, q_roots, deg_q, u, delta, epsilon, tol) for u in directions)


def find_delta_empirically(q: Poly, epsilon: float, trials: int = 16, seed: int = 0,
                           q_roots: DistinctRoots | None = None, *,
                           delta_lo: float | None = None, delta_hi: float | None = None,
                           steps: int = 30, cluster_tol: float = 1e-6,
                           tol: float = DEFAULT_TOL, aligned: bool = True) -> float:
    """Largest tested perturbation size for which every random trial groups correctly.

    Bisection on ``log(delta)`` between ``delta_lo`` (default
    ``1e-14 * max|b_i|``) and ``delta_hi`` (default ``sum |b_i|``).  The
    same ``trials`` random directions are reused at every candidate, so the
    result is reproducible for a given ``seed``.  With ``aligned=True`` the
    first-order worst-case direction of each root (see
    :func:`aligned_perturbations`) is tested as well, which keeps the
    estimate conservative against fresh random draws.  Returns 0 when even
    ``delta_lo`` fails.
    """
    if not epsilon > 0:
        raise InvalidEpsilon(f"epsilon must be positive, got {epsilon}")
    if q_roots is None:
        q_roots = distinct_roots(q, cluster_tol, tol)
    scale = max(abs(b) for b in q.coeffs)
    lo = 1e-14 * scale if delta_lo is None else delta_lo
    hi = math.fsum(abs(b) for b in q.coeffs) if delta_hi is None else delta_hi
    dirs = unit_perturbations(q.n, trials, seed)
    if aligned:
        dirs = aligned_perturbations(q_roots, q.n) + dirs

    def ok(delta):
        return perturbations_valid(q, q_roots, delta, epsilon, dirs, tol)

    if not ok(lo):
        return 0.0
    if ok(hi):
        return hi
    for _ in range(steps):
        mid = math.sqrt(lo * hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo

"""All roots of a univariate polynomial, with multiplicities by repetition.

The solver is the Aberth-Ehrlich simultaneous iteration started on a circle
whose radius is the monic root bound ``max(1, sum |a_i / a_deg|)``, followed
by Newton polishing.  Points outside the unit disc are evaluated through the
reversed polynomial so that roots of size ``1e8`` (a tiny leading
coefficient) neither overflow nor lose the small roots' accuracy.

Residuals are componentwise backward errors
``|p(x)| / sum(|a_i| |x|**i)``, which stay at rounding level even when the
leading coefficient is tiny or a root is multiple.
"""

from __future__ import annotations

import cmath
import math
import os
import sys
from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage

from .errors import DegreeZero, NoConvergence, ZeroPolynomial
from .poly import ZERO_POLY, Poly, formal_degree

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITERS = 200
MAX_ITERS_ENV = "ROOTPERTURB_MAX_ITERS"

_EPS = sys.float_info.epsilon


def default_max_iters() -> int:
    value = os.environ.get(MAX_ITERS_ENV)
    if value:
        iters = int(value)
        if iters < 1:
            raise ValueError(f"{MAX_ITERS_ENV} must be positive, got {value!r}")
        return iters
    return DEFAULT_MAX_ITERS


@dataclass(frozen=True)
class RootSet:
    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    tol: float = DEFAULT_TOL
    iterations: int = 0
    # max_i |rebuilt_i - a_i| / max_i |a_i| for rebuilt = a_deg * prod(z - root)
    reconstruction_defect: float = 0.0

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


@dataclass(frozen=True)
class DistinctRoots:
    points: tuple[complex, ...]
    multiplicities: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.multiplicities)

    def __len__(self):
        return len(self.points)


def _newton_term(c, absc, z):
    """Newton correction ``p(z)/p'(z)`` and backward error at ``z``.

    ``c`` is monic with ascending coefficients.  For ``|z| > 1`` the reversed
    polynomial ``r(w) = w**m p(1/w)`` is evaluated at ``w = 1/z`` and
    ``p/p' = z / (m - w r'(w)/r(w))``.
    """
    m = len(c) - 1
    if abs(z) <= 1.0:
        val, der, scale = c[m], 0j, absc[m]
        az = abs(z)
        for i in range(m - 1, -1, -1):
            der = der * z + val
            val = val * z + c[i]
            scale = scale * az + absc[i]
        if val == 0:
            return 0j, 0.0
        return val / der, abs(val) / scale
    w = 1.0 / z
    aw = abs(w)
    val, der, scale = c[0], 0j, absc[0]
    for i in range(1, m + 1):
        der = der * w + val
        val = val * w + c[i]
        scale = scale * aw + absc[i]
    if val == 0:
        return 0j, 0.0
    denom = m - w * der / val
    if denom == 0:
        return complex(math.inf), abs(val) / scale
    return z / denom, abs(val) / scale


def _aberth(c, max_iters):
    m = len(c) - 1
    absc = [abs(x) for x in c]
    radius = max(1.0, math.fsum(absc[:-1]))
    z = [radius * cmath.exp(1j * (2 * math.pi * k / m + 0.4)) for k in range(m)]
    active = [True] * m
    # stop once p(z) is at rounding level relative to the coefficient magnitudes
    stop = 4 * m * _EPS
    it = 0
    for it in range(1, max_iters + 1):
        for k in range(m):
            if not active[k]:
                continue
            zk = z[k]
            corr, berr = _newton_term(c, absc, zk)
            if berr <= stop:
                active[k] = False
                continue
            s = 0j
            for j in range(m):
                if j != k:
                    d = zk - z[j]
                    if d != 0:
                        s += 1.0 / d
            denom = 1.0 - corr * s
            step = corr / denom if denom != 0 and cmath.isfinite(corr) else None
            if step is None or not cmath.isfinite(step):
                # coincident or degenerate iterate: perturb it off the collision
                step = 1e-3 * (1.0 + abs(zk)) * cmath.exp(1j * (k + 1))
            z[k] = zk - step
            if abs(step) <= 2 * _EPS * abs(z[k]):
                active[k] = False
        if not any(active):
            break
    return z, it


def _polish(c, z, steps=2):
    absc = [abs(x) for x in c]
    out = []
    for x in z:
        for _ in range(steps):
            corr, berr = _newton_term(c, absc, x)
            if corr == 0 or not cmath.isfinite(corr):
                break
            trial = x - corr
            if _newton_term(c, absc, trial)[1] < berr:
                x = trial
            else:
                break
        out.append(x)
    return out


def backward_errors(p: Poly, points) -> tuple[float, ...]:
    """``|p(x)| / sum(|a_i| |x|**i)`` for each point, computed without overflow."""
    d = formal_degree(p)
    lead = p.coeffs[d]
    c = [x / lead for x in p.coeffs[: d + 1]]
    absc = [abs(x) for x in c]
    return tuple(_newton_term(c, absc, complex(x))[1] for x in points)


def _reconstruction_defect(p: Poly, found) -> float:
    d = formal_degree(p)
    coeffs = np.asarray(p.coeffs[: d + 1], dtype=complex)
    rebuilt = coeffs[-1] * np.polynomial.polynomial.polyfromroots(found)
    return float(np.max(np.abs(rebuilt - coeffs)) / np.max(np.abs(coeffs)))


def roots(p: Poly, tol: float = DEFAULT_TOL, max_iters: int | None = None) -> RootSet:
    """All ``deg p`` roots of ``p``.

    Exact zero roots are split off before iterating.  Each root's residual
    is its componentwise backward error ``|p(z)| / sum |a_i| |z|**i``.

    >>> rs = roots(Poly([-1, 1, -1, 1]))
    >>> len(rs), max(rs.residuals) <= rs.tol
    (3, True)
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iters is None:
        max_iters = default_max_iters()
    d = formal_degree(p)
    if d is ZERO_POLY:
        raise ZeroPolynomial("the zero polynomial has every point as a root")
    if d == 0:
        raise DegreeZero("a nonzero constant has no roots")

    full = p.coeffs[: d + 1]
    k = next(i for i, x in enumerate(full) if x != 0)
    c = [x / full[-1] for x in full[k:]]
    m = d - k
    iterations = 0
    if m == 0:
        found = []
    elif m == 1:
        found = [-c[0]]
    else:
        found, iterations = _aberth(c, max_iters)
        found = _polish(c, found)
    found = found + [0j] * k

    residuals = backward_errors(p, found)
    result = tuple(complex(r) for r in found)
    if any(not cmath.isfinite(r) for r in result) or max(residuals) > tol:
        raise NoConvergence(
            f"residual {max(residuals):.3g} above tol {tol:.3g} after {iterations} sweeps",
            roots=result, residuals=residuals, iterations=iterations)
    return RootSet(result, residuals, tol, iterations, _reconstruction_defect(p, found))


def cluster(rs, cluster_tol: float) -> DistinctRoots:
    """Single-linkage clusters of the roots at distance ``cluster_tol``.

    Each cluster is reported at its centroid, multiplicity = cluster size,
    in order of first appearance.
    """
    if cluster_tol <= 0:
        raise ValueError("cluster_tol must be positive")
    pts = np.asarray(list(rs), dtype=complex)
    if pts.size == 0:
        return DistinctRoots((), ())
    if pts.size == 1:
        labels = np.array([1])
    else:
        xy = np.column_stack([pts.real, pts.imag])
        labels = fcluster(linkage(xy, method="single"), t=cluster_tol, criterion="distance")
    order = []
    for lab in labels:
        if lab not in order:
            order.append(lab)
    points = tuple(complex(pts[labels == lab].mean()) for lab in order)
    mults = tuple(int(np.sum(labels == lab)) for lab in order)
    return DistinctRoots(points, mults)


def distinct_roots(p: Poly, cluster_tol: float = 1e-6, tol: float = DEFAULT_TOL) -> DistinctRoots:
    """Distinct roots of ``p``; a nonzero constant gives an empty result."""
    d = formal_degree(p)
    if d is ZERO_POLY:
        raise ZeroPolynomial("the zero polynomial has every point as a root")
    if d == 0:
        return DistinctRoots((), ())
    return cluster(roots(p, tol), cluster_tol)

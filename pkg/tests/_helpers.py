"""Random instance generators shared by the test modules."""

from __future__ import annotations

import numpy as np

from rootperturb import MultiPoly, Poly


def random_complex(rng, size=None, scale=1.0):
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def roots_in_annulus(rng, k, r_lo, r_hi, min_sep=0.0, max_tries=10_000):
    """``k`` points with moduli uniform in [r_lo, r_hi], pairwise at least ``min_sep`` apart."""
    pts = []
    for _ in range(max_tries):
        if len(pts) == k:
            break
        z = rng.uniform(r_lo, r_hi) * np.exp(2j * np.pi * rng.random())
        if all(abs(z - w) >= min_sep for w in pts):
            pts.append(complex(z))
    if len(pts) < k:
        raise RuntimeError("could not place separated roots")
    return pts


def poly_with_roots(rng, degree, r_lo=0.1, r_hi=10.0, n=None, leading=None):
    zs = roots_in_annulus(rng, degree, r_lo, r_hi)
    lead = complex(leading) if leading is not None else complex(random_complex(rng))
    return Poly.from_roots(zs, leading=lead, n=n), zs


def random_poly(rng, degree, n=None):
    """Gaussian complex coefficients with a nonzero leading coefficient."""
    c = random_complex(rng, degree + 1)
    return Poly(list(c), n=n)


def random_monic(rng, degree):
    c = list(random_complex(rng, degree)) + [1.0]
    return Poly(c)


def direction(rng, n):
    """A perturbation direction with ``max |u_i| = 1``."""
    mod = rng.uniform(0.0, 1.0, n + 1)
    mod[rng.integers(n + 1)] = 1.0
    return mod * np.exp(2j * np.pi * rng.random(n + 1))


def perturb(q, delta, u):
    return Poly([b + delta * x for b, x in zip(q.coeffs, u)])


def random_multipoly(rng, nvars, total_degree, nterms):
    terms = {}
    for _ in range(nterms):
        left = total_degree
        exp = []
        for _ in range(nvars):
            e = int(rng.integers(0, left + 1))
            exp.append(e)
            left -= e
        rng.shuffle(exp)
        terms[tuple(exp)] = complex(random_complex(rng))
    return MultiPoly(nvars, terms)


def term_scale(f, z):
    """``sum |a_beta| |z^beta|``: the natural magnitude of ``f(z)`` before cancellation."""
    total = 0.0
    for exp, c in f.terms.items():
        m = abs(c)
        for x, e in zip(z, exp):
            m *= abs(x) ** e
        total += m
    return total

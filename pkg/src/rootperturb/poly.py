"""Dense univariate complex polynomials with an explicit ambient degree.

A :class:`Poly` lives in the space of polynomials of degree at most ``n``.
Coefficients are stored in ascending order (``coeffs[i]`` multiplies
``z**i``) and the tuple always has length ``n + 1``; zeros above the formal
degree are kept, because the perturbation bounds sum over all ``n + 1``
coefficient slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, isfinite
from typing import Iterable, Sequence

from .errors import AmbientMismatch, EvalAtRoot, ZeroPolynomial

# |p(z)| below this is treated as a root by log_derivative
DIVISION_GUARD = 1e-300


class _ZeroPolyMarker:
    """Degree of the zero polynomial (left undefined rather than -inf)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_POLY"

    def __reduce__(self):
        return (_ZeroPolyMarker, ())


ZERO_POLY = _ZeroPolyMarker()


def _as_complex(c) -> complex:
    if isinstance(c, (list, tuple)) and len(c) == 2:
        c = complex(float(c[0]), float(c[1]))
    z = complex(c)
    if not (isfinite(z.real) and isfinite(z.imag)):
        raise ValueError(f"non-finite coefficient {c!r}")
    return z


@dataclass(frozen=True)
class Poly:
    """Polynomial ``sum(coeffs[i] * z**i)`` of ambient degree ``len(coeffs) - 1``.

    >>> q = Poly([-1, 1, -1, 1, 0])
    >>> q.n, formal_degree(q)
    (4, 3)
    """

    coeffs: tuple[complex, ...]

    def __init__(self, coeffs: Iterable, n: int | None = None):
        cs = [_as_complex(c) for c in coeffs]
        if n is not None:
            if n < 0:
                raise ValueError("ambient degree must be nonnegative")
            if len(cs) > n + 1:
                if any(c != 0 for c in cs[n + 1:]):
                    raise ValueError(
                        f"{len(cs)} coefficients do not fit ambient degree {n}")
                cs = cs[:n + 1]
            cs += [0j] * (n + 1 - len(cs))
        if not cs:
            cs = [0j]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    ambient_degree = n

    @classmethod
    def from_roots(cls, roots: Sequence, leading: complex = 1.0,
                   n: int | None = None) -> "Poly":
        cs = [complex(leading)]
        for r in roots:
            r = complex(r)
            nxt = [0j] * (len(cs) + 1)
            for i, c in enumerate(cs):
                nxt[i + 1] += c
                nxt[i] -= r * c
            cs = nxt
        return cls(cs, n)

    def with_ambient(self, n: int) -> "Poly":
        """Same polynomial re-embedded with ambient degree ``n``."""
        return Poly(self.coeffs, n)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


def formal_degree(p: Poly, zero_tol: float = 0.0):
    """Largest index with ``|coeff| > zero_tol``, or ``ZERO_POLY``."""
    for i in range(p.n, -1, -1):
        if abs(p.coeffs[i]) > zero_tol:
            return i
    return ZERO_POLY


def evaluate(p: Poly, z) -> complex:
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def derivative(p: Poly) -> Poly:
    if p.n == 0:
        return Poly([0j])
    return Poly([(i + 1) * c for i, c in enumerate(p.coeffs[1:])])


def log_derivative(p: Poly, z: complex) -> complex:
    """``p'(z) / p(z)``, which equals the sum of ``1/(z - root)`` over the roots."""
    if p.is_zero():
        raise ZeroPolynomial("log-derivative of the zero polynomial")
    value = evaluate(p, z)
    if abs(value) < DIVISION_GUARD:
        raise EvalAtRoot(f"|p({z})| = {abs(value):.3g} is below the division guard")
    return evaluate(derivative(p), z) / value


def reciprocal(p: Poly) -> Poly:
    """Reflected polynomial ``z**deg(p) * p(1/z)``.

    The result has ambient degree ``deg p``; its formal degree drops by the
    number of vanishing low-order coefficients of ``p``.
    """
    d = formal_degree(p)
    if d is ZERO_POLY:
        raise ZeroPolynomial("reciprocal of the zero polynomial")
    return Poly(p.coeffs[d::-1])


def shift(p: Poly, z0: complex) -> Poly:
    """Polynomial ``r`` with ``r(z) = p(z + z0)`` (Taylor shift, same ambient degree)."""
    z0 = complex(z0)
    if z0 == 0:
        return p
    cs = list(p.coeffs)
    n = p.n
    # repeated synthetic division by (z - z0)
    for k in range(n):
        for i in range(n - 1, k - 1, -1):
            cs[i] += z0 * cs[i + 1]
    return Poly(cs)


def shift_binomial(p: Poly, z0: complex) -> Poly:
    """Taylor shift via the binomial expansion; reference route for :func:`shift`."""
    z0 = complex(z0)
    n = p.n
    out = [0j] * (n + 1)
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        for k in range(i + 1):
            out[k] += c * comb(i, k) * z0 ** (i - k)
    return Poly(out)


def _candidates():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def find_nonvanishing_point(q: Poly, rel_tol: float = 1e-8, max_tries: int = 1000) -> complex:
    """First point of 0, 1, -1, 2, -2, ... where ``q`` is clearly nonzero.

    "Clearly" means ``|q(z)| > rel_tol * sum(|b_i| |z|**i)``, so a root that
    is merely close to an integer candidate is skipped too.  With
    ``rel_tol=0`` the test is exact inequality.
    """
    if q.is_zero():
        raise ZeroPolynomial("every point is a root of the zero polynomial")
    for tries, z in enumerate(_candidates()):
        scale = sum(abs(c) * abs(z) ** i for i, c in enumerate(q.coeffs))
        if abs(evaluate(q, z)) > rel_tol * scale:
            return complex(z)
        if tries >= max_tries:
            break
    raise RuntimeError("no nonvanishing integer point found")  # pragma: no cover


def max_abs_diff(p: Poly, q: Poly) -> float:
    """``max |a_i - b_i|`` over all ambient slots."""
    if p.n != q.n:
        raise AmbientMismatch(f"ambient degrees differ: {p.n} vs {q.n}")
    return max(abs(a - b) for a, b in zip(p.coeffs, q.coeffs))

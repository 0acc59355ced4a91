"""Open planar domains and their Cartesian products.

Each factor exposes a signed distance to its boundary: negative inside,
zero on the boundary, positive outside.  Membership tests use a band of
half-width ``tau`` around the boundary, so "open membership" means
``sd < -tau``, "on the boundary" means ``|sd| <= tau`` and "in the closure"
means ``sd <= tau``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.stats import qmc

DEFAULT_TAU = 1e-9


@dataclass(frozen=True)
class Disc:
    center: complex = 0j
    radius: float = 1.0

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("disc radius must be positive")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))

    def signed_distance(self, z: complex) -> float:
        return abs(z - self.center) - self.radius

    def from_unit(self, u: float, v: float) -> complex:
        # area-uniform; sqrt(u) < 1 keeps the point strictly inside
        return self.center + self.radius * math.sqrt(u) * cmath.exp(2j * math.pi * v)


@dataclass(frozen=True)
class HalfPlane:
    """The rotated right half-plane ``exp(i*theta) * {Re w > 0}``."""

    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta))

    def signed_distance(self, z: complex) -> float:
        return -(cmath.exp(-1j * self.theta) * z).real

    def from_unit(self, u: float, v: float) -> complex:
        # exponential depth, Cauchy-distributed offset along the boundary line
        depth = -math.log1p(-u) if u > 0 else 1e-3
        along = math.tan(math.pi * (v - 0.5)) if 0 < v < 1 else 0.0
        return cmath.exp(1j * self.theta) * complex(max(depth, 1e-12), along)


@dataclass(frozen=True)
class Rect:
    """Open rectangle ``x1 < Re z < x2``, ``y1 < Im z < y2``."""

    re: tuple[float, float]
    im: tuple[float, float]

    def __post_init__(self):
        re = tuple(float(x) for x in self.re)
        im = tuple(float(y) for y in self.im)
        if not (re[0] < re[1] and im[0] < im[1]):
            raise ValueError("rectangle must have positive width and height")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def signed_distance(self, z: complex) -> float:
        dx = max(self.re[0] - z.real, z.real - self.re[1])
        dy = max(self.im[0] - z.imag, z.imag - self.im[1])
        if dx <= 0 and dy <= 0:
            return max(dx, dy)
        return math.hypot(max(dx, 0.0), max(dy, 0.0))

    def from_unit(self, u: float, v: float) -> complex:
        x1, x2 = self.re
        y1, y2 = self.im
        return complex(x1 + (x2 - x1) * u, y1 + (y2 - y1) * v)


Factor = Union[Disc, HalfPlane, Rect]

UNIT_DISC = Disc(0j, 1.0)
RIGHT_HALF_PLANE = HalfPlane(0.0)
UPPER_HALF_PLANE = HalfPlane(math.pi / 2)


def is_open_member(b: Factor, z: complex, tau: float = DEFAULT_TAU) -> bool:
    return b.signed_distance(z) < -tau


def is_on_boundary(b: Factor, z: complex, tau: float = DEFAULT_TAU) -> bool:
    return abs(b.signed_distance(z)) <= tau


def is_in_closure(b: Factor, z: complex, tau: float = DEFAULT_TAU) -> bool:
    return b.signed_distance(z) <= tau


@dataclass(frozen=True)
class Polydomain:
    factors: tuple[Factor, ...]

    def __init__(self, factors: Sequence[Factor]):
        object.__setattr__(self, "factors", tuple(factors))
        if not self.factors:
            raise ValueError("a polydomain needs at least one factor")

    @classmethod
    def polydisc(cls, m: int) -> "Polydomain":
        return cls([UNIT_DISC] * m)

    @classmethod
    def right_polyhalfplane(cls, m: int) -> "Polydomain":
        return cls([RIGHT_HALF_PLANE] * m)

    @classmethod
    def upper_polyhalfplane(cls, m: int) -> "Polydomain":
        return cls([UPPER_HALF_PLANE] * m)

    @property
    def nvars(self) -> int:
        return len(self.factors)

    def __len__(self):
        return len(self.factors)

    def contains(self, z: Sequence[complex], tau: float = DEFAULT_TAU) -> bool:
        return all(is_open_member(b, x, tau) for b, x in zip(self.factors, z))

    def sample(self, count: int, seed: int) -> np.ndarray:
        """``count`` scrambled-Halton points strictly inside, shape ``(count, m)``."""
        m = self.nvars
        u = qmc.Halton(d=2 * m, scramble=True, seed=seed).random(count)
        # Halton coordinates lie in [0, 1); keep u away from the exact boundary image
        u = np.clip(u, 1e-12, 1 - 1e-12)
        out = np.empty((count, m), dtype=complex)
        for j, b in enumerate(self.factors):
            for i in range(count):
                out[i, j] = b.from_unit(u[i, 2 * j], u[i, 2 * j + 1])
        return out

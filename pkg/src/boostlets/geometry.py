"""Boost, dilation and boost-dilation matrices and the boostlet group law.

Everything here is a pure function of immutable values.  Matrices are small
frozen value objects rather than numpy arrays so that they can be hashed,
compared and passed around freely; :meth:`Matrix2.as_array` bridges to numpy
when vectorised work is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import InvalidArgumentError

#: Largest rapidity accepted anywhere in the package.  cosh overflows near
#: 710, but relative accuracy of boosted coordinates is long gone before that.
MAX_RAPIDITY = 20.0


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise InvalidArgumentError(f"rapidity must be finite, got {alpha!r}")
    if abs(alpha) > MAX_RAPIDITY:
        raise InvalidArgumentError(
            f"|alpha| = {abs(alpha):g} exceeds the supported range {MAX_RAPIDITY:g}"
        )
    return alpha


def _check_c(c: float) -> float:
    c = float(c)
    if not (math.isfinite(c) and c > 0.0):
        raise InvalidArgumentError(f"dilation must be finite and > 0, got {c!r}")
    return c


@dataclass(frozen=True)
class Matrix2:
    a11: float
    a12: float
    a21: float
    a22: float

    @classmethod
    def identity(cls) -> "Matrix2":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, a) -> "Matrix2":
        a = np.asarray(a, dtype=float)
        if a.shape != (2, 2):
            raise InvalidArgumentError(f"expected a 2x2 array, got shape {a.shape}")
        return cls(float(a[0, 0]), float(a[0, 1]), float(a[1, 0]), float(a[1, 1]))

    def as_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]])

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21

    @property
    def T(self) -> "Matrix2":
        return Matrix2(self.a11, self.a21, self.a12, self.a22)

    def __matmul__(self, other):
        if isinstance(other, Matrix2):
            return Matrix2(
                self.a11 * other.a11 + self.a12 * other.a21,
                self.a11 * other.a12 + self.a12 * other.a22,
                self.a21 * other.a11 + self.a22 * other.a21,
                self.a21 * other.a12 + self.a22 * other.a22,
            )
        return self.apply(other)

    def apply(self, v):
        """Apply to a column vector ``(x, y)``; arrays broadcast componentwise."""
        x, y = v
        return (self.a11 * x + self.a12 * y, self.a21 * x + self.a22 * y)

    def allclose(self, other: "Matrix2", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.as_array(), other.as_array(), rtol=0.0, atol=atol))


#: Minkowski metric diag(1, -1).
MINKOWSKI = Matrix2(1.0, 0.0, 0.0, -1.0)


def boost_matrix(alpha: float) -> Matrix2:
    alpha = _check_alpha(alpha)
    ch, sh = math.cosh(alpha), math.sinh(alpha)
    return Matrix2(ch, -sh, -sh, ch)


def dilation_matrix(c: float) -> Matrix2:
    c = _check_c(c)
    return Matrix2(c, 0.0, 0.0, c)


def boost_dilation(c: float, alpha: float) -> Matrix2:
    """``D_c B_alpha``.  Symmetric, so it is also its own transpose."""
    c = _check_c(c)
    alpha = _check_alpha(alpha)
    ch, sh = math.cosh(alpha), math.sinh(alpha)
    return Matrix2(c * ch, -c * sh, -c * sh, c * ch)


def invert_boost_dilation(c: float, alpha: float) -> Matrix2:
    return boost_dilation(1.0 / _check_c(c), -_check_alpha(alpha))


@dataclass(frozen=True)
class SpaceTimePoint:
    s: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.s) and math.isfinite(self.t)):
            raise InvalidArgumentError(f"non-finite space-time point ({self.s}, {self.t})")


def minkowski_quadratic(p) -> float:
    """``s**2 - t**2`` for a :class:`SpaceTimePoint` or an ``(s, t)`` pair."""
    if isinstance(p, SpaceTimePoint):
        s, t = p.s, p.t
    else:
        s, t = p
    return s * s - t * t


@dataclass(frozen=True)
class GroupElement:
    """A point ``(c, alpha, tau)`` of the boostlet group."""

    c: float
    alpha: float = 0.0
    tau: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "c", _check_c(self.c))
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))
        ts, tt = (float(x) for x in self.tau)
        if not (math.isfinite(ts) and math.isfinite(tt)):
            raise InvalidArgumentError(f"non-finite translation {self.tau!r}")
        object.__setattr__(self, "tau", (ts, tt))

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1.0, 0.0, (0.0, 0.0))

    @property
    def matrix(self) -> Matrix2:
        return boost_dilation(self.c, self.alpha)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return group_product(self, other)

    def allclose(self, other: "GroupElement", atol: float = 1e-12) -> bool:
        a = np.array([self.c, self.alpha, *self.tau])
        b = np.array([other.c, other.alpha, *other.tau])
        return bool(np.allclose(a, b, rtol=0.0, atol=atol))


def group_product(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """``(c c', alpha + alpha', tau + B_alpha D_c tau')``."""
    shift = (boost_matrix(g1.alpha) @ dilation_matrix(g1.c)).apply(g2.tau)
    return GroupElement(
        g1.c * g2.c,
        g1.alpha + g2.alpha,
        (g1.tau[0] + shift[0], g1.tau[1] + shift[1]),
    )


def group_inverse(g: GroupElement) -> GroupElement:
    shift = (boost_matrix(-g.alpha) @ dilation_matrix(1.0 / g.c)).apply(g.tau)
    return GroupElement(1.0 / g.c, -g.alpha, (-shift[0], -shift[1]))


def warp_frequencies(c: float, alpha: float, ws, wt):
    """Return ``M_{c,alpha}^T omega`` componentwise; all arguments broadcast."""
    ch, sh = np.cosh(alpha), np.sinh(alpha)
    return c * (ch * ws - sh * wt), c * (ch * wt - sh * ws)

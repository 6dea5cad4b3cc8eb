"""Closed-form transform of ``exp(||mu||^2)`` against a complex Gaussian window.

The window is ``exp(-(s^2 - (1 - i eps) t^2) / 2)`` and ``||mu||^2 = s^2 - t^2``
is the Minkowski quadratic form.  The expressions below are formal: the
defining integral does not converge for any ``c`` (it would need both
``c^2 < 1/2`` and ``c^2 > 1/2``), so they are evaluated as printed and only
their internal identities are testable.  Square roots take the principal
branch.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import InvalidArgumentError, NearPoleError

POLE_TOL = 1e-9
SQRT_BRANCH = "principal"


@dataclass(frozen=True)
class ClosedFormInputs:
    c: float
    alpha: float
    tau_s: float
    tau_t: float
    epsilon: float = 0.1

    def __post_init__(self):
        for name in ("c", "alpha", "tau_s", "tau_t", "epsilon"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise InvalidArgumentError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if self.c <= 0:
            raise InvalidArgumentError(f"c must be > 0, got {self.c!r}")
        if self.epsilon <= 0:
            raise InvalidArgumentError(f"epsilon must be > 0, got {self.epsilon!r}")


@dataclass(frozen=True)
class ClosedFormIntermediates:
    q1: Tuple[complex, complex]  # diagonal of Q1
    L_s: float
    L_t: float
    L_s1: float
    L_t1: float
    C: float


def example_intermediates(x: ClosedFormInputs) -> ClosedFormIntermediates:
    ch, sh = math.cosh(x.alpha), math.sinh(x.alpha)
    ts, tt = x.tau_s, x.tau_t
    c2 = x.c * x.c
    return ClosedFormIntermediates(
        q1=(complex(1.0 - 2.0 * c2), complex(2.0 * c2 - 1.0, -x.epsilon)),
        L_s=ch * ts + sh * tt,
        L_t=-sh * ts - ch * tt,
        L_s1=-ch * ts + sh * tt,
        L_t1=sh * ts + ch * tt,
        C=ts * ts - tt * tt,
    )


def closed_form_component(c, L_s, L_t, C, epsilon):
    """``c e^C 2 pi / sqrt(q_s q_t) exp(2 c^2 (L_s^2 / q_s + L_t^2 / q_t))``.

    ``q_s = 1 - 2c^2`` and ``q_t = 2c^2 - 1 - i eps``.  Vectorised over numpy
    arguments; the caller is responsible for staying off the pole.
    """
    c = np.asarray(c, dtype=float)
    c2 = c * c
    qs = (1.0 - 2.0 * c2).astype(complex)
    qt = 2.0 * c2 - 1.0 - 1j * np.asarray(epsilon, dtype=float)
    pref = c * 2.0 * np.pi / np.sqrt(qs * qt)
    return pref * np.exp(C + 2.0 * c2 * (L_s**2 / qs + L_t**2 / qt))


def _check_pole(c2) -> None:
    gap = np.abs(2.0 * np.asarray(c2) - 1.0)
    if np.any(gap < POLE_TOL):
        raise NearPoleError(f"|2c^2 - 1| = {float(np.min(gap)):.3g} is below {POLE_TOL:g}")


def example_cbt(x: ClosedFormInputs) -> Tuple[complex, complex]:
    """Both printed components at one input point."""
    _check_pole(x.c * x.c)
    k = example_intermediates(x)
    first = closed_form_component(x.c, k.L_s, k.L_t, k.C, x.epsilon)
    second = closed_form_component(x.c, k.L_s1, k.L_t1, -k.C, x.epsilon)
    return complex(first), complex(second)


def tau_zero_value(c: float, epsilon: float) -> complex:
    """``c 2 pi / sqrt((1 - 2c^2)(2c^2 - 1 - i eps))``."""
    _check_pole(c * c)
    return c * 2.0 * math.pi / cmath.sqrt((1.0 - 2.0 * c * c) * complex(2.0 * c * c - 1.0, -epsilon))


def negated_first_component(x: ClosedFormInputs) -> complex:
    """First-component expression at ``-tau`` with the sign of ``C`` flipped.

    At ``alpha = 0`` this equals the second component exactly; for other
    rapidities the two differ unless ``tau_s tau_t = 0``.
    """
    _check_pole(x.c * x.c)
    k = example_intermediates(ClosedFormInputs(x.c, x.alpha, -x.tau_s, -x.tau_t, x.epsilon))
    return complex(closed_form_component(x.c, k.L_s, k.L_t, -k.C, x.epsilon))


@dataclass(frozen=True, eq=False)
class ExampleSweep:
    """Both components on a ``tau_s x tau_t x c x alpha`` lattice.

    ``values`` has shape ``(2, n_tau_s, n_tau_t, n_c, n_alpha)``; entries at
    near-pole ``c`` are NaN and listed in ``pole_rows``.
    """

    c: np.ndarray
    alpha: np.ndarray
    tau_s: np.ndarray
    tau_t: np.ndarray
    epsilon: float
    values: np.ndarray
    pole_rows: Tuple[int, ...]

    @property
    def magnitude(self) -> np.ndarray:
        """``sqrt(|first|^2 + |second|^2)``, shape ``(n_tau_s, n_tau_t, n_c, n_alpha)``."""
        return np.sqrt(np.abs(self.values[0]) ** 2 + np.abs(self.values[1]) ** 2)


def example_sweep(c, alpha, tau_s, tau_t, epsilon: float = 0.1) -> ExampleSweep:
    c = np.asarray(c, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    tau_s = np.asarray(tau_s, dtype=float)
    tau_t = np.asarray(tau_t, dtype=float)
    if np.any(c <= 0) or epsilon <= 0:
        raise InvalidArgumentError("sweep needs c > 0 and epsilon > 0")
    TS, TT, CC, AA = np.meshgrid(tau_s, tau_t, c, alpha, indexing="ij")
    ch, sh = np.cosh(AA), np.sinh(AA)
    L_s, L_t = ch * TS + sh * TT, -sh * TS - ch * TT
    L_s1, L_t1 = -ch * TS + sh * TT, sh * TS + ch * TT
    C = TS * TS - TT * TT
    poles = np.abs(2.0 * c * c - 1.0) < POLE_TOL
    c_safe = np.where(poles[None, None, :, None], 0.25, CC)
    with np.errstate(over="ignore", invalid="ignore"):
        first = closed_form_component(c_safe, L_s, L_t, C, epsilon)
        second = closed_form_component(c_safe, L_s1, L_t1, -C, epsilon)
    values = np.stack([first, second])
    values[:, :, :, poles, :] = np.nan
    return ExampleSweep(c, alpha, tau_s, tau_t, float(epsilon), values,
                        tuple(int(i) for i in np.flatnonzero(poles)))

"""Seeded test signals whose spectra live inside a frequency cone.

Every draw goes through ``numpy.random.default_rng(seed)`` (PCG64), whose
stream is specified bit-for-bit across platforms, so a suite is fully
replayable from its seed.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import List, Tuple

import numpy as np

from .boostlet import Cone, bump, hyperbolic_coordinates
from .field import Field2D, GridSpec, Spectrum2D, dft_inverse

# Suite signals stay inside this (log radius, rapidity) box so the default
# group quadrature covers every orbit through their support.
SUITE_U_BOX = (-0.35, 0.35)
SUITE_BETA_BOX = (-0.5, 0.5)


@dataclass(frozen=True)
class ConeBump:
    """Spectrum ``A bump((u - u0)/su) bump((beta - b0)/sb) exp(-2 pi i mu0.w)``.

    ``half`` picks the positive (+1) or negative (-1) half of the cone, or
    both (0) with the negative half weighted by ``mirror``.
    """

    u0: float
    su: float
    b0: float
    sb: float
    half: int = 1
    amplitude: complex = 1.0
    mirror: complex = 0.5
    shift: Tuple[float, float] = (0.0, 0.0)
    cone: str = Cone.SUPERSONIC.value

    def spectrum_fn(self):
        """The exact spectrum as a vectorised ``(ws, wt) -> complex`` map."""
        cone = Cone(self.cone)
        halves = {1: [(1, 1.0)], -1: [(-1, 1.0)], 0: [(1, 1.0), (-1, self.mirror)]}[self.half]

        def fn(ws, wt):
            ws = np.asarray(ws, dtype=float)
            wt = np.asarray(wt, dtype=float)
            vals = np.zeros(np.broadcast(ws, wt).shape, dtype=complex)
            for sgn, weight in halves:
                u, beta, inside = hyperbolic_coordinates(sgn * ws, sgn * wt, cone)
                env = bump((u - self.u0) / self.su) * bump((beta - self.b0) / self.sb)
                vals += weight * np.where(inside, env, 0.0)
            phase = np.exp(-2j * np.pi * (self.shift[0] * ws + self.shift[1] * wt))
            return self.amplitude * vals * phase

        return fn

    def spectrum(self, grid: GridSpec) -> Spectrum2D:
        W, V = grid.freq_mesh()
        return Spectrum2D(grid, self.spectrum_fn()(W, V))

    def field(self, grid: GridSpec) -> Field2D:
        return dft_inverse(self.spectrum(grid))

    def record(self) -> dict:
        d = asdict(self)
        d["amplitude"] = complex(self.amplitude)
        d["mirror"] = complex(self.mirror)
        return d


def random_cone_bump(rng: np.random.Generator, cone=Cone.SUPERSONIC,
                     u_box=SUITE_U_BOX, beta_box=SUITE_BETA_BOX, max_shift: float = 2.0) -> ConeBump:
    su = rng.uniform(0.12, 0.2)
    sb = rng.uniform(0.15, 0.25)
    u0 = rng.uniform(u_box[0] + su, u_box[1] - su)
    b0 = rng.uniform(beta_box[0] + sb, beta_box[1] - sb)
    half = int(rng.integers(-1, 2))
    amp = complex(*rng.normal(size=2))
    mirror = complex(*rng.normal(size=2))
    r = max_shift * np.sqrt(rng.uniform())
    th = rng.uniform(0, 2 * np.pi)
    return ConeBump(float(u0), float(su), float(b0), float(sb), half, amp, mirror,
                    (float(r * np.cos(th)), float(r * np.sin(th))), Cone(cone).value)


def signal_suite(grid: GridSpec, seed: int = 0, n: int = 20,
                 cone=Cone.SUPERSONIC) -> List[Tuple[ConeBump, Field2D]]:
    """``n`` seeded cone-band-limited bumps and their sampled fields."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        b = random_cone_bump(rng, cone)
        out.append((b, b.field(grid)))
    return out


def random_band_limited(grid: GridSpec, rng: np.random.Generator, cone=Cone.SUPERSONIC,
                        u_box=SUITE_U_BOX, beta_box=SUITE_BETA_BOX) -> Field2D:
    """Random complex spectrum under a flat-topped ``cos^2`` envelope covering
    the box on both halves of the cone.  Rough in frequency, so spread out
    in space."""
    W, V = grid.freq_mesh()
    cone = Cone(cone)
    uc, us = 0.5 * (u_box[0] + u_box[1]), 0.5 * (u_box[1] - u_box[0])
    bc, bs = 0.5 * (beta_box[0] + beta_box[1]), 0.5 * (beta_box[1] - beta_box[0])
    env = np.zeros(grid.shape)
    for sgn in (1, -1):
        u, beta, inside = hyperbolic_coordinates(sgn * W, sgn * V, cone)
        env += np.where(inside, (bump((u - uc) / us) * bump((beta - bc) / bs)) ** 0.25, 0.0)
    noise = rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape)
    return dft_inverse(Spectrum2D(grid, env * noise))

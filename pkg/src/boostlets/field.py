"""Sampled complex fields on a uniform space-time grid and their spectra.

The grid covers the half-open rectangle ``[-extent_s, extent_s) x
[-extent_t, extent_t)``; row index is space ``s``, column index time ``t``.
Spectra live on the dual lattice with spacing ``1 / (2 extent)`` per axis,
zero frequency centred at index ``n // 2``, and are scaled so that they
approximate the continuous transform ``int f(mu) exp(-2 pi i omega.mu) dmu``.
With that scaling the discrete Plancherel identity is exact:
``sum |f|^2 ds dt == sum |F|^2 dws dwt``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Tuple

import numpy as np

from .errors import GridMismatchError, InvalidArgumentError, SamplingError


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    n_s: int
    n_t: int
    extent_s: float
    extent_t: float

    def __post_init__(self):
        for name in ("n_s", "n_t"):
            n = getattr(self, name)
            if int(n) != n or n < 8 or not _is_power_of_two(int(n)):
                raise InvalidArgumentError(f"{name} must be a power of two >= 8, got {n!r}")
            object.__setattr__(self, name, int(n))
        for name in ("extent_s", "extent_t"):
            e = float(getattr(self, name))
            if not (math.isfinite(e) and e > 0):
                raise InvalidArgumentError(f"{name} must be finite and > 0, got {e!r}")
            object.__setattr__(self, name, e)

    @classmethod
    def square(cls, n: int, extent: float) -> "GridSpec":
        return cls(n, n, extent, extent)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_s, self.n_t)

    @property
    def ds(self) -> float:
        return 2.0 * self.extent_s / self.n_s

    @property
    def dt(self) -> float:
        return 2.0 * self.extent_t / self.n_t

    @property
    def cell_area(self) -> float:
        return self.ds * self.dt

    @property
    def area(self) -> float:
        return 4.0 * self.extent_s * self.extent_t

    @property
    def dws(self) -> float:
        return 1.0 / (2.0 * self.extent_s)

    @property
    def dwt(self) -> float:
        return 1.0 / (2.0 * self.extent_t)

    @property
    def freq_cell_area(self) -> float:
        return self.dws * self.dwt

    @property
    def nyquist(self) -> Tuple[float, float]:
        """Largest positive frequency on the lattice along each axis."""
        return ((self.n_s // 2 - 1) * self.dws, (self.n_t // 2 - 1) * self.dwt)

    @cached_property
    def s_nodes(self) -> np.ndarray:
        return -self.extent_s + self.ds * np.arange(self.n_s)

    @cached_property
    def t_nodes(self) -> np.ndarray:
        return -self.extent_t + self.dt * np.arange(self.n_t)

    @cached_property
    def ws_nodes(self) -> np.ndarray:
        return self.dws * (np.arange(self.n_s) - self.n_s // 2)

    @cached_property
    def wt_nodes(self) -> np.ndarray:
        return self.dwt * (np.arange(self.n_t) - self.n_t // 2)

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.s_nodes, self.t_nodes, indexing="ij")

    def freq_mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.ws_nodes, self.wt_nodes, indexing="ij")

    @cached_property
    def _signs(self) -> Tuple[np.ndarray, np.ndarray]:
        # exp(2 pi i omega_k extent) = (-1)**(k - n/2): exact, no round-off
        return (
            np.where((np.arange(self.n_s) - self.n_s // 2) % 2 == 0, 1.0, -1.0),
            np.where((np.arange(self.n_t) - self.n_t // 2) % 2 == 0, 1.0, -1.0),
        )

    def node_index(self, s: float, t: float) -> Tuple[int, int]:
        """Index of the grid node nearest to ``(s, t)`` (modulo the period)."""
        i = int(round((s + self.extent_s) / self.ds)) % self.n_s
        j = int(round((t + self.extent_t) / self.dt)) % self.n_t
        return i, j


def _check_values(grid: GridSpec, values) -> np.ndarray:
    v = np.array(values, dtype=np.complex128)
    if v.shape != grid.shape:
        raise GridMismatchError(f"values have shape {v.shape}, grid expects {grid.shape}")
    if not np.all(np.isfinite(v)):
        raise SamplingError("field contains non-finite values")
    v.setflags(write=False)
    return v


class _Sampled:
    grid: GridSpec
    values: np.ndarray

    def _same_grid(self, other) -> None:
        if self.grid != other.grid:
            raise GridMismatchError(f"grid mismatch: {self.grid} vs {other.grid}")

    def _new(self, values):
        return type(self)(self.grid, values)

    def __add__(self, other):
        self._same_grid(other)
        return self._new(self.values + other.values)

    def __sub__(self, other):
        self._same_grid(other)
        return self._new(self.values - other.values)

    def __mul__(self, a):
        return self._new(complex(a) * self.values)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.values)

    def conj(self):
        return self._new(np.conj(self.values))


@dataclass(frozen=True, eq=False)
class Field2D(_Sampled):
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.grid, self.values))

    @classmethod
    def zeros(cls, grid: GridSpec) -> "Field2D":
        return cls(grid, np.zeros(grid.shape, dtype=np.complex128))

    def reflected(self) -> "Field2D":
        """Samples of ``f(-mu)`` on the same (periodic) grid."""
        return Field2D(self.grid, _reflect(self.values))


@dataclass(frozen=True, eq=False)
class Spectrum2D(_Sampled):
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.grid, self.values))

    def reflected(self) -> "Spectrum2D":
        """Samples of ``F(-omega)`` on the same lattice."""
        return Spectrum2D(self.grid, _reflect(self.values))


def _reflect(a: np.ndarray) -> np.ndarray:
    # index k -> (n - k) mod n maps node x_k to -x_k on both the space grid
    # (origin at index n/2 once the -extent offset is accounted for) and the
    # centred frequency lattice
    return np.roll(a[::-1, ::-1], (1, 1), axis=(0, 1))


def sample_function(fn: Callable, grid: GridSpec) -> Field2D:
    """Evaluate ``fn(s, t)`` at every grid node.

    ``fn`` is called once with broadcast ``(n_s, n_t)`` coordinate arrays; a
    function that only accepts scalars is detected and evaluated pointwise.
    """
    S, T = grid.mesh()
    try:
        values = np.asarray(fn(S, T), dtype=np.complex128)
        if values.shape != grid.shape:
            values = np.broadcast_to(values, grid.shape)
    except (TypeError, ValueError):
        values = np.array(
            [[complex(fn(s, t)) for t in grid.t_nodes] for s in grid.s_nodes]
        )
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        i, j = (int(x) for x in bad[0])
        raise SamplingError(
            f"non-finite sample at node ({i}, {j}) = "
            f"(s={grid.s_nodes[i]:.17g}, t={grid.t_nodes[j]:.17g})"
        )
    return Field2D(grid, values)


def sample_spectrum(fn: Callable, grid: GridSpec) -> Spectrum2D:
    """Evaluate ``fn(omega_s, omega_t)`` on the frequency lattice."""
    W, V = grid.freq_mesh()
    values = np.broadcast_to(np.asarray(fn(W, V), dtype=np.complex128), grid.shape)
    if not np.all(np.isfinite(values)):
        raise SamplingError("non-finite spectral sample")
    return Spectrum2D(grid, values)


def dft_forward(f: Field2D) -> Spectrum2D:
    g = f.grid
    sign_s, sign_t = g._signs
    raw = np.fft.fftshift(np.fft.fft2(f.values))
    return Spectrum2D(g, g.cell_area * raw * sign_s[:, None] * sign_t[None, :])


def dft_inverse(F: Spectrum2D) -> Field2D:
    g = F.grid
    sign_s, sign_t = g._signs
    shifted = F.values * sign_s[:, None] * sign_t[None, :]
    return Field2D(g, np.fft.ifft2(np.fft.ifftshift(shifted)) / g.cell_area)


def inner_product(f: Field2D, g: Field2D) -> complex:
    """Riemann approximation of ``int f conj(g)``."""
    f._same_grid(g)
    return complex(np.vdot(g.values, f.values) * f.grid.cell_area)


def l2_norm(f) -> float:
    """L2 norm of a field, or of a spectrum with the frequency cell area."""
    area = f.grid.freq_cell_area if isinstance(f, Spectrum2D) else f.grid.cell_area
    return math.sqrt(float(np.sum(np.abs(f.values) ** 2)) * area)


def circular_translate(f: Field2D, k) -> Field2D:
    """``f(mu - k)`` for integer sample offsets ``k`` under periodic boundaries."""
    ks, kt = (int(x) for x in k)
    return Field2D(f.grid, np.roll(f.values, (ks, kt), axis=(0, 1)))

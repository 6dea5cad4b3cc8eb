"""Both sides of the boostlet uncertainty inequalities, evaluated numerically.

Group integrals use the measure ``dc dalpha dtau / c**3``.  On the
logarithmic ``c`` lattice ``dc / c**3 = d(log c) / c**2``, so a
:class:`GroupQuadrature` is a :class:`~boostlets.boostlet.QuadratureLattice`
with the ``1 / c**2`` folded into its weights; the ``tau`` integral is the
full grid sum times the cell area.

The transform is pair valued.  ``|B psi|^2`` is read as the sum of the
squared moduli of both components (``components="both"``); the first
component alone is available with ``components="first"``.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .boostlet import (
    AdmissibilityResult,
    MotherBoostlet,
    QuadratureLattice,
    admissibility,
    live_planes,
    covered_region,
    interior_frequencies,
    lattice_covering,
)
from .errors import (
    DegenerateReportError,
    DivergenceError,
    DivergenceWarning,
    InvalidArgumentError,
    TruncationWarning,
)
from .field import Field2D, GridSpec, dft_forward, l2_norm

SATISFIED_RTOL = 1e-9
BOUNDARY_LIMIT = 1e-3
ORIGIN_MASS_LIMIT = 1e-8

EULER_GAMMA = 0.57721566490153286061


# --- special functions -------------------------------------------------------

# B_2k / (2k) for k = 1..8
_ASYMPTOTIC = (1 / 12, -1 / 120, 1 / 252, -1 / 240, 1 / 132, -691 / 32760, 1 / 12, -3617 / 8160)


def digamma(x: float) -> float:
    """``Gamma'(x) / Gamma(x)`` for real ``x`` (poles at non-positive integers).

    Upward recurrence ``psi(x) = psi(x + 1) - 1/x`` to ``x >= 10``, then the
    asymptotic Bernoulli series; negative arguments use the reflection
    ``psi(1 - x) - psi(x) = pi cot(pi x)``.
    """
    x = float(x)
    if not math.isfinite(x):
        raise InvalidArgumentError(f"digamma needs a finite argument, got {x!r}")
    if x <= 0 and x == math.floor(x):
        raise InvalidArgumentError(f"digamma has a pole at {x:g}")
    if x < 0:
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for coeff in _ASYMPTOTIC:
        series += coeff * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - series


def digamma_half() -> float:
    """``psi(1/2) = -gamma_Euler - 2 ln 2``."""
    return digamma(0.5)


def log_constant() -> float:
    """``psi(1/2) - ln(pi)``, the constant of the logarithmic inequality."""
    return digamma_half() - math.log(math.pi)


def pitt_constant(lam: float) -> float:
    """``pi**lam * (Gamma((2 - lam)/4) / Gamma((2 + lam)/4))**2`` for ``0 <= lam < 2``."""
    lam = float(lam)
    if not (0.0 <= lam < 2.0):
        raise InvalidArgumentError(f"Pitt exponent must lie in [0, 2), got {lam!r}")
    return math.pi**lam * (math.gamma((2.0 - lam) / 4.0) / math.gamma((2.0 + lam) / 4.0)) ** 2


# --- quadrature ---------------------------------------------------------------


@dataclass(frozen=True)
class GroupQuadrature:
    lattice: QuadratureLattice

    @classmethod
    def default(cls, m: MotherBoostlet, n_c: int = 64, n_alpha: int = 64,
                widths: float = 3.0) -> "GroupQuadrature":
        """``log c`` and ``alpha`` within ``widths`` profile widths of zero."""
        if m.scale_profile is None or m.rapidity_profile is None:
            raise InvalidArgumentError("default quadrature needs a profile mother")
        hu = widths * m.scale_profile.width
        ha = widths * m.rapidity_profile.width
        return cls(QuadratureLattice((math.exp(-hu), math.exp(hu)), (-ha, ha), n_c, n_alpha))

    @classmethod
    def covering(cls, m: MotherBoostlet, u_box, beta_box, n_c: int = 64, n_alpha: int = 64,
                 margin: float = 1.0) -> "GroupQuadrature":
        return cls(lattice_covering(m, u_box, beta_box, n_c, n_alpha, margin))

    @property
    def c_nodes(self) -> np.ndarray:
        return self.lattice.c

    @cached_property
    def c_weights(self) -> np.ndarray:
        return self.lattice.log_c_weights / self.lattice.c**2

    @property
    def alpha_nodes(self) -> np.ndarray:
        return self.lattice.alpha

    @property
    def alpha_weights(self) -> np.ndarray:
        return self.lattice.alpha_weights

    @cached_property
    def weights(self) -> np.ndarray:
        return self.c_weights[:, None] * self.alpha_weights[None, :]

    @property
    def total_measure(self) -> float:
        return float(self.weights.sum())

    @property
    def ident(self) -> str:
        return self.lattice.ident

    def refined(self, factor: int = 2) -> "GroupQuadrature":
        return GroupQuadrature(self.lattice.refined(factor))

    def admissibility(self, m: MotherBoostlet, per_axis: int = 4) -> AdmissibilityResult:
        """Admissibility on the same lattice, sampled inside the covered region."""
        region = covered_region(m, self.lattice)
        if region is None:
            raise InvalidArgumentError("quadrature lattice covers no complete orbit")
        (u0, u1), (b0, b1) = region
        shrink = 0.05
        u_box = (u0 + shrink * (u1 - u0), u1 - shrink * (u1 - u0))
        b_box = (b0 + shrink * (b1 - b0), b1 - shrink * (b1 - b0))
        lat = self.lattice
        return admissibility(m, interior_frequencies(m, u_box, b_box, per_axis),
                             lat.c_range, lat.alpha_range, lat.n_c, lat.n_alpha)


# --- coefficient density -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoefficientDensity:
    """Group-integrated coefficient density over the translation grid.

    ``energy[tau] = sum_{c, alpha} w |B psi(c, alpha, tau)|^2`` and, for each
    requested ``p``, ``power[p][tau] = sum w |B psi|^p``.
    """

    grid: GridSpec
    energy: np.ndarray
    power: Dict[float, np.ndarray]
    boundary_fraction: float
    components: str
    quadrature_id: str

    def integrate(self, weight: np.ndarray, p: Optional[float] = None) -> float:
        density = self.energy if p is None else self.power[float(p)]
        return float(np.sum(weight * density) * self.grid.cell_area)

    @property
    def total(self) -> float:
        return self.integrate(np.ones(self.grid.shape))


def coefficient_density(psi: Field2D, m: MotherBoostlet, q: GroupQuadrature,
                        p_values: Iterable[float] = (), components: str = "both",
                        strict: bool = False) -> CoefficientDensity:
    if components not in ("both", "first"):
        raise InvalidArgumentError(f"components must be 'both' or 'first', got {components!r}")
    p_values = sorted({float(p) for p in p_values})
    F = dft_forward(psi)
    mag = np.abs(F.values)
    support = mag > 1e-14 * mag.max() if mag.max() > 0 else np.zeros(mag.shape, bool)
    energy = np.zeros(psi.grid.shape)
    power = {p: np.zeros(psi.grid.shape) for p in p_values}
    edge = 0.0
    n_c = len(q.c_nodes)
    for i, c in enumerate(q.c_nodes):
        live, planes = live_planes(F, m, float(c), q.alpha_nodes, strict=strict, support=support)
        if live.size == 0:
            continue
        mod2 = np.abs(planes[0]) ** 2
        if components == "both":
            mod2 += np.abs(planes[1]) ** 2
        w = q.weights[i, live]
        slice_energy = np.tensordot(w, mod2, axes=1)
        energy += slice_energy
        for p in p_values:
            mod_p = mod2 if p == 2.0 else mod2 ** (0.5 * p)
            power[p] += np.tensordot(w, mod_p, axes=1)
        if i in (0, n_c - 1):
            edge += float(slice_energy.sum())
        else:
            ends = (live == 0) | (live == len(q.alpha_nodes) - 1)
            edge += float(np.tensordot(w[ends], mod2[ends], axes=1).sum())
    total = float(energy.sum())
    frac = edge / total if total > 0 else 0.0
    return CoefficientDensity(psi.grid, energy, power, frac, components, q.ident)


def _tau_radius(grid: GridSpec, regularize_origin: bool) -> np.ndarray:
    S, T = grid.mesh()
    r = np.hypot(S, T)
    if regularize_origin:
        i, j = grid.node_index(0.0, 0.0)
        r[i, j] = math.hypot(0.5 * grid.ds, 0.5 * grid.dt)
    return r


def _gamma_radius(grid: GridSpec, regularize_origin: bool) -> np.ndarray:
    W, V = grid.freq_mesh()
    r = np.hypot(W, V)
    if regularize_origin:
        r[grid.n_s // 2, grid.n_t // 2] = math.hypot(0.5 * grid.dws, 0.5 * grid.dwt)
    return r


def _radial_weight(r0: np.ndarray, r_reg: np.ndarray, exponent):
    if exponent == "log":
        return np.log(r_reg)
    exponent = float(exponent)
    if exponent > 0:
        return r0**exponent
    return r_reg**exponent


def spatial_dispersion(psi: Field2D, m: MotherBoostlet, q: GroupQuadrature,
                       exponent: float = 2.0, density: Optional[CoefficientDensity] = None,
                       components: str = "both") -> float:
    """``int |tau|^exponent |B psi|^2 dc dalpha dtau / c^3``.

    ``exponent="log"`` gives the ``ln|tau|`` moment.  For non-positive or
    logarithmic weights the ``tau = 0`` node takes the weight of the point
    half a cell away along the diagonal.
    """
    if density is None:
        density = coefficient_density(psi, m, q, components=components)
    g = psi.grid
    weight = _radial_weight(_tau_radius(g, False), _tau_radius(g, True), exponent)
    _warn_boundary(density)
    return density.integrate(weight)


def spectral_dispersion(psi: Field2D, exponent: float = 2.0) -> float:
    """``int |gamma|^exponent |psi_hat|^2 dgamma`` (``"log"`` for ``ln|gamma|``)."""
    return _spectral_moment(psi, exponent, 2.0)


def _spectral_moment(psi: Field2D, exponent, power: float) -> float:
    g = psi.grid
    F = np.abs(dft_forward(psi).values)
    weight = _radial_weight(_gamma_radius(g, False), _gamma_radius(g, True), exponent)
    val = float(np.sum(weight * F**power) * g.freq_cell_area)
    if not math.isfinite(val):
        raise DivergenceError(
            f"spectral moment with weight {exponent!r} diverged; origin cell "
            f"({g.n_s // 2}, {g.n_t // 2}) holds |psi_hat| = {F[g.n_s // 2, g.n_t // 2]:.3g}"
        )
    return val


def origin_mass_fraction(psi: Field2D) -> float:
    g = psi.grid
    F2 = np.abs(dft_forward(psi).values) ** 2
    total = float(F2.sum())
    return float(F2[g.n_s // 2, g.n_t // 2]) / total if total > 0 else 0.0


def _warn_boundary(density: CoefficientDensity) -> Optional[str]:
    if density.boundary_fraction > BOUNDARY_LIMIT:
        msg = (f"quadrature boundary nodes carry {density.boundary_fraction:.3g} of the "
               f"coefficient energy; widen the (c, alpha) ranges")
        warnings.warn(msg, TruncationWarning, stacklevel=3)
        return msg
    return None


# --- reports ---------------------------------------------------------------


@dataclass(frozen=True)
class InequalityReport:
    """One numerical comparison.  ``kind`` is ``">="``, ``"<="`` or ``"bound"``
    (no verdict); ``satisfied`` is oriented so True means the inequality holds."""

    name: str
    lhs: float
    rhs: float
    ratio: float
    satisfied: Optional[bool]
    kind: str
    parameters: dict = field(default_factory=dict)
    warnings: Tuple[str, ...] = ()

    @property
    def p_or_lambda(self):
        for key in ("p", "lambda"):
            if key in self.parameters:
                return self.parameters[key]
        return ""

    @property
    def diverging(self) -> bool:
        return any("origin" in w for w in self.warnings)


def _verdict(lhs: float, rhs: float, kind: str) -> Optional[bool]:
    if kind == ">=":
        return bool(lhs >= rhs - SATISFIED_RTOL * abs(rhs))
    if kind == "<=":
        return bool(lhs <= rhs + SATISFIED_RTOL * abs(rhs))
    return None


def _report(name, lhs, rhs, kind, parameters, notes) -> InequalityReport:
    ratio = lhs / rhs if rhs != 0 else math.inf
    return InequalityReport(name, float(lhs), float(rhs), float(ratio), _verdict(lhs, rhs, kind),
                            kind, parameters, tuple(n for n in notes if n))


@dataclass
class _Context:
    delta: float
    density: CoefficientDensity
    norm2: float


def _context(psi, m, q, delta, density, p_values=(), components="both") -> _Context:
    if delta is None:
        delta = q.admissibility(m).delta
    needed = {float(p) for p in p_values}
    if density is None or not needed.issubset(density.power):
        density = coefficient_density(psi, m, q, needed, components=components)
    return _Context(float(delta), density, l2_norm(psi) ** 2)


def _base_params(q, ctx, **extra):
    d = {"quadrature": q.ident, "delta": ctx.delta, "components": ctx.density.components}
    d.update(extra)
    return d


def heisenberg_report(psi: Field2D, m: MotherBoostlet, q: GroupQuadrature,
                      delta: Optional[float] = None,
                      density: Optional[CoefficientDensity] = None) -> InequalityReport:
    """``sqrt(int |tau|^2 |B psi|^2) sqrt(int |gamma|^2 |psi_hat|^2) >= sqrt(Delta)/2 ||psi||^2``."""
    ctx = _context(psi, m, q, delta, density)
    spatial = spatial_dispersion(psi, m, q, 2.0, ctx.density)
    spectral = spectral_dispersion(psi, 2.0)
    lhs = math.sqrt(spatial) * math.sqrt(spectral)
    rhs = 0.5 * math.sqrt(ctx.delta) * ctx.norm2
    return _report("heisenberg", lhs, rhs, ">=", _base_params(q, ctx),
                   [_warn_boundary(ctx.density)])


def lp_heisenberg_i_report(psi: Field2D, m: MotherBoostlet, p: float, q: GroupQuadrature,
                           delta: Optional[float] = None,
                           density: Optional[CoefficientDensity] = None) -> InequalityReport:
    """``(int |tau|^p |B psi|^p)^(1/p) (int |gamma|^p |psi_hat|^p)^(1/p) >= sqrt(Delta)/2 ||psi||^2``."""
    p = float(p)
    if not (1.0 <= p <= 2.0):
        raise InvalidArgumentError(f"first L^p variant needs 1 <= p <= 2, got {p!r}")
    ctx = _context(psi, m, q, delta, density, (p,))
    g = psi.grid
    spatial = ctx.density.integrate(_tau_radius(g, False) ** p, p)
    spectral = _spectral_moment(psi, p, p)
    lhs = spatial ** (1 / p) * spectral ** (1 / p)
    rhs = 0.5 * math.sqrt(ctx.delta) * ctx.norm2
    return _report("lp_i", lhs, rhs, ">=", _base_params(q, ctx, p=p), [_warn_boundary(ctx.density)])


def lp_heisenberg_ii_report(psi: Field2D, m: MotherBoostlet, p: float, q: GroupQuadrature,
                            delta: Optional[float] = None,
                            density: Optional[CoefficientDensity] = None) -> InequalityReport:
    """``(int |tau|^p |B psi|^2)^(1/p) (int |gamma|^p |psi_hat|^2)^(1/p)`` against
    ``Delta^(1/p) ||psi||^(4/p) / 2``; the bound without the 1/2 is kept in
    ``parameters["rhs_statement"]``."""
    p = float(p)
    if p < 2.0:
        raise InvalidArgumentError(f"second L^p variant needs p >= 2, got {p!r}")
    ctx = _context(psi, m, q, delta, density)
    spatial = spatial_dispersion(psi, m, q, p, ctx.density)
    spectral = spectral_dispersion(psi, p)
    lhs = spatial ** (1 / p) * spectral ** (1 / p)
    statement = ctx.delta ** (1 / p) * ctx.norm2 ** (2 / p)
    rhs = 0.5 * statement
    params = _base_params(q, ctx, p=p, rhs_statement=statement,
                          satisfied_statement=_verdict(lhs, statement, ">="))
    return _report("lp_ii", lhs, rhs, ">=", params, [_warn_boundary(ctx.density)])


def _origin_note(psi: Field2D) -> Optional[str]:
    frac = origin_mass_fraction(psi)
    if frac > ORIGIN_MASS_LIMIT:
        msg = f"frequency origin cell holds {frac:.3g} of the spectral mass"
        warnings.warn(msg, DivergenceWarning, stacklevel=3)
        return msg
    return None


def log_uncertainty_report(psi: Field2D, m: MotherBoostlet, q: GroupQuadrature,
                           delta: Optional[float] = None,
                           density: Optional[CoefficientDensity] = None) -> InequalityReport:
    """``int ln|tau| |B psi|^2 + Delta int ln|gamma| |psi_hat|^2 >= Delta ||psi||^2 (psi(1/2) - ln pi)``."""
    ctx = _context(psi, m, q, delta, density)
    notes = [_origin_note(psi), _warn_boundary(ctx.density)]
    lhs = spatial_dispersion(psi, m, q, "log", ctx.density) + ctx.delta * spectral_dispersion(psi, "log")
    rhs = ctx.delta * ctx.norm2 * log_constant()
    return _report("log", lhs, rhs, ">=", _base_params(q, ctx, constant=log_constant()), notes)


def pitt_report(f: Field2D, m: MotherBoostlet, lam: float, q: GroupQuadrature,
                delta: Optional[float] = None,
                density: Optional[CoefficientDensity] = None) -> InequalityReport:
    """``Delta int |w|^-lam |f_hat|^2 <= C_lam int |tau|^lam |B f|^2``."""
    lam = float(lam)
    const = pitt_constant(lam)
    ctx = _context(f, m, q, delta, density)
    notes = [_origin_note(f) if lam > 0 else None, _warn_boundary(ctx.density)]
    lhs = ctx.delta * spectral_dispersion(f, -lam)
    rhs = const * spatial_dispersion(f, m, q, lam, ctx.density)
    return _report("pitt", lhs, rhs, "<=", _base_params(q, ctx, **{"lambda": lam, "C": const}),
                   notes)


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned ``[lo_s, hi_s) x [lo_t, hi_t)``; may be empty."""

    lo_s: float
    hi_s: float
    lo_t: float
    hi_t: float

    @classmethod
    def empty(cls) -> "Rectangle":
        return cls(0.0, 0.0, 0.0, 0.0)

    @classmethod
    def centered(cls, half_s: float, half_t: float, center=(0.0, 0.0)) -> "Rectangle":
        cs, ct = center
        return cls(cs - half_s, cs + half_s, ct - half_t, ct + half_t)

    def snap(self, nodes_s: np.ndarray, nodes_t: np.ndarray, hs: float, ht: float):
        """Mask of the lattice cells whose nodes fall inside, and the snapped sides."""
        ins = (nodes_s >= self.lo_s) & (nodes_s < self.hi_s)
        int_ = (nodes_t >= self.lo_t) & (nodes_t < self.hi_t)
        return ins[:, None] & int_[None, :], (ins.sum() * hs, int_.sum() * ht)

    def as_tuple(self):
        return (self.lo_s, self.hi_s, self.lo_t, self.hi_t)


def mean_width(sides: Tuple[float, float]) -> float:
    """Mean of the two side lengths, used as the mean-width proxy."""
    return 0.5 * (sides[0] + sides[1])


def _lambert_w(x: float) -> float:
    # principal branch, x >= 0, by Halley iteration
    w = math.log1p(x)
    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - x
        step = f / (ew * (w + 1) - (w + 2) * f / (2 * w + 2))
        w -= step
        if abs(step) <= 1e-15 * max(1.0, abs(w)):
            break
    return w


def nazarov_report(f: Field2D, m: MotherBoostlet, A1: Rectangle, A2: Rectangle,
                   q: GroupQuadrature, delta: Optional[float] = None,
                   density: Optional[CoefficientDensity] = None) -> InequalityReport:
    """Energy outside ``group x A1`` and ``A2`` against the total energy.

    ``lhs = Delta ||f||^2``, ``rhs = factor * braces`` and ``ratio`` is the
    implied lower bound on the universal constant ``M`` when the prefactor is
    read as the product ``M * factor``.  The bound under the exponential
    reading ``M exp(M factor)`` is kept in ``parameters``.
    """
    ctx = _context(f, m, q, delta, density)
    g = f.grid
    mask1, sides1 = A1.snap(g.s_nodes, g.t_nodes, g.ds, g.dt)
    mask2, sides2 = A2.snap(g.ws_nodes, g.wt_nodes, g.dws, g.dwt)
    area1, area2 = sides1[0] * sides1[1], sides2[0] * sides2[1]
    factor = min(area1 * area2, math.sqrt(area1) * mean_width(sides2), mean_width(sides1) * area2)
    if factor <= 0:
        raise DegenerateReportError(
            f"geometric factor vanishes for |A1| = {area1:g}, |A2| = {area2:g}"
        )
    F2 = np.abs(dft_forward(f).values) ** 2
    spec_total = float(F2.sum()) * g.freq_cell_area
    spec_in = float(F2[mask2].sum()) * g.freq_cell_area
    coeff_in = ctx.density.integrate(mask1.astype(float))
    braces = ctx.delta * ctx.norm2 - coeff_in + ctx.delta * spec_total - ctx.delta * spec_in
    if not braces > 0:
        raise DegenerateReportError(
            f"braces term is {braces:.3g}; the field is concentrated on A1 x A2"
        )
    lhs = ctx.delta * ctx.norm2
    rhs = factor * braces
    needed = lhs / braces
    params = _base_params(
        q, ctx, A1=A1.as_tuple(), A2=A2.as_tuple(), A1_sides=sides1, A2_sides=sides2,
        braces=braces, factor=factor,
        implied_M_exponential=_lambert_w(needed * factor) / factor,
    )
    return _report("nazarov", lhs, rhs, "bound", params, [_warn_boundary(ctx.density)])


# --- batches and export -------------------------------------------------------


def standard_reports(psi: Field2D, m: MotherBoostlet, q: GroupQuadrature, delta: float,
                     p_i: Sequence[float] = (1.0, 1.5, 2.0), p_ii: Sequence[float] = (2.0, 4.0, 8.0),
                     lambdas: Sequence[float] = (0.0, 0.5, 1.0),
                     rectangles: Optional[Tuple[Rectangle, Rectangle]] = None,
                     components: str = "both") -> List[InequalityReport]:
    """Every report for one signal, sharing a single coefficient density."""
    density = coefficient_density(psi, m, q, p_i, components=components)
    rows = [heisenberg_report(psi, m, q, delta, density)]
    rows += [lp_heisenberg_i_report(psi, m, p, q, delta, density) for p in p_i]
    rows += [lp_heisenberg_ii_report(psi, m, p, q, delta, density) for p in p_ii]
    rows.append(log_uncertainty_report(psi, m, q, delta, density))
    rows += [pitt_report(psi, m, lam, q, delta, density) for lam in lambdas]
    if rectangles is not None:
        rows.append(nazarov_report(psi, m, rectangles[0], rectangles[1], q, delta, density))
    return rows


CSV_COLUMNS = ("name", "p_or_lambda", "lhs", "rhs", "ratio", "satisfied", "quadrature_id")


def reports_to_csv(reports: Iterable[InequalityReport], prefix_columns: Sequence[str] = (),
                   prefixes: Optional[Sequence[Sequence]] = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(tuple(prefix_columns) + CSV_COLUMNS)
    for k, r in enumerate(reports):
        flag = "" if r.satisfied is None else str(r.satisfied).lower()
        head = tuple(prefixes[k]) if prefixes is not None else ()
        w.writerow(head + (r.name, r.p_or_lambda, repr(r.lhs), repr(r.rhs), repr(r.ratio), flag,
                           r.parameters.get("quadrature", "")))
    return buf.getvalue()

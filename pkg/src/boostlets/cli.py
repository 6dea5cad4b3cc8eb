"""Command-line front end.

Subcommands::

    boostlets transform     coefficient planes for a (c, alpha) lattice
    boostlets admissibility admissibility integral of the configured mother
    boostlets verify        algebraic and covariance property suite
    boostlets uncertainty   inequality reports over the seeded signal suite
    boostlets example       closed-form example sweep (CSV + PGM surfaces)

Exit codes: 0 success, 1 a check failed, 2 I/O or file format, 3 invalid
model, aliasing or degenerate window, 4 admissibility spread above the
threshold, 5 divergence in a strict run.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings
from typing import List, Optional, Sequence

import numpy as np

from . import closed_form, io
from .boostlet import (
    Cone,
    QuadratureLattice,
    admissibility,
    cbt_slice,
    default_mother,
    interior_frequencies,
    lattice_covering,
)
from .config import (
    RunConfig,
    build_config,
    load_config,
    parse_floats,
    parse_grid,
    parse_range,
    parse_rect,
)
from .errors import (
    BoostletError,
    DivergenceError,
    DivergenceWarning,
    FormatError,
    InvalidArgumentError,
)
from .field import Field2D, GridSpec
from .properties import path_equivalence, run_property_suite
from .signals import random_band_limited, signal_suite
from .uncertainty import (
    CoefficientDensity,
    GroupQuadrature,
    Rectangle,
    coefficient_density,
    heisenberg_report,
    log_uncertainty_report,
    lp_heisenberg_i_report,
    lp_heisenberg_ii_report,
    nazarov_report,
    pitt_report,
    reports_to_csv,
)

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_IO = 2
EXIT_MODEL = 3
EXIT_SPREAD = 4
EXIT_DIVERGENCE = 5

# command-specific defaults used when the (c, alpha) keys are left unset
TRANSFORM_LATTICE = ((0.8, 1.25), (-0.5, 0.5), 4, 4)
EXAMPLE_LATTICE = ((0.2, 0.65), (-2.0, 2.0), 16, 16)
PATH_TOLERANCE = 1e-10
CONVERGENCE_TOLERANCE = 5e-3


def _extent(text: str):
    v = parse_floats(text)
    return v if len(v) == 2 else (v[0], v[0])


# key -> (parser, metavar, help)
_FLAGS = {
    "grid": (parse_grid, "NSxNT", "lattice size"),
    "extent": (_extent, "ES[,ET]", "domain side lengths"),
    "cone": (str, "{supersonic,subsonic}", "frequency cone of the mother"),
    "scale_center": (float, "U", "centre of the log-radius profile"),
    "scale_width": (float, "W", "half-width of the log-radius profile"),
    "rapidity_width": (float, "W", "half-width of the rapidity profile"),
    "c_range": (parse_range, "A:B", "dilation range"),
    "alpha_range": (parse_range, "A:B", "rapidity range"),
    "n_c": (int, "N", "number of dilation nodes"),
    "n_alpha": (int, "N", "number of rapidity nodes"),
    "seed": (int, "N", "seed for every random draw"),
    "n_signals": (int, "N", "size of the signal suite"),
    "p": (parse_floats, "P[,P...]", "L^p exponents (p <= 2 first variant, p > 2 second)"),
    "lam": (parse_floats, "L[,L...]", "Pitt exponents"),
    "rect_a1": (parse_rect, "S0:S1,T0:T1", "space-time rectangle for the Nazarov report"),
    "rect_a2": (parse_rect, "S0:S1,T0:T1", "frequency rectangle for the Nazarov report"),
    "components": (str, "{both,first}", "which planes enter |B psi|^2"),
    "spread_threshold": (float, "X", "admissibility spread limit"),
    "epsilon": (float, "EPS", "window regulariser of the closed-form example"),
    "tau_range": (parse_range, "A:B", "translation range of the example sweep"),
    "n_tau": (int, "N", "translation nodes per axis in the example sweep"),
    "input": (str, "FILE", "input field (.bsf)"),
    "out": (str, "DIR", "output directory"),
    "images": (None, None, "also render PGM/PNG images"),
    "strict": (None, None, "treat divergence and band violations as errors"),
    "verify_paths": (None, None, "spot-check direct, FFT and convolution paths"),
}

_COMMON = ("grid", "extent", "cone", "scale_center", "scale_width", "rapidity_width", "seed")
_QUAD = ("c_range", "alpha_range", "n_c", "n_alpha")
_COMMAND_KEYS = {
    "transform": _COMMON + _QUAD + ("input", "out", "images", "strict", "verify_paths"),
    "admissibility": _COMMON + _QUAD + ("spread_threshold", "out", "images"),
    "verify": _COMMON,
    "uncertainty": _COMMON + _QUAD + ("n_signals", "p", "lam", "rect_a1", "rect_a2",
                                      "components", "out", "images", "strict"),
    "example": ("c_range", "alpha_range", "n_c", "n_alpha", "epsilon", "tau_range",
                "n_tau", "out", "images"),
}
_HELP = {
    "transform": "coefficient planes of an input field on a (c, alpha) lattice",
    "admissibility": "admissibility integral and its spread over cone frequencies",
    "verify": "property suite on seeded random inputs",
    "uncertainty": "uncertainty-inequality reports over the seeded signal suite",
    "example": "closed-form example sweep with CSV and PGM export",
}


def _show(value) -> str:
    if value is None:
        return "derived"
    if isinstance(value, tuple):
        return ",".join(f"{x:g}" if isinstance(x, float) else str(x) for x in value)
    return str(value)


_LATTICE_DEFAULTS = {"transform": TRANSFORM_LATTICE, "example": EXAMPLE_LATTICE}


def _add_flags(sp: argparse.ArgumentParser, command: str, keys: Sequence[str]) -> None:
    defaults = RunConfig()
    lattice = dict(zip(_QUAD, _LATTICE_DEFAULTS.get(command, (None,) * 4)))
    sp.add_argument("--config", metavar="FILE", default=None,
                    help="flat key = value file; flags override it (default: none)")
    for key in keys:
        parser, metavar, text = _FLAGS[key]
        flag = "--" + ("lambda" if key == "lam" else key.replace("_", "-"))
        shown = _show(lattice[key] if key in lattice else getattr(defaults, key))
        if parser is None:
            sp.add_argument(flag, dest=key, action="store_const", const=True, default=None,
                            help=f"{text} (default: {shown})")
        else:
            sp.add_argument(flag, dest=key, type=_argtype(parser), metavar=metavar, default=None,
                            help=f"{text} (default: {shown})")


def _argtype(parser):
    def conv(text):
        try:
            return parser(text)
        except (ValueError, BoostletError) as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    conv.__name__ = getattr(parser, "__name__", "value")
    return conv


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boostlets",
        description="Continuous boostlet transform on sampled space-time fields.",
        epilog="exit codes: 0 ok, 1 check failed, 2 I/O, 3 invalid model, "
               "4 admissibility spread, 5 strict divergence",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for name, keys in _COMMAND_KEYS.items():
        sp = sub.add_parser(name, help=_HELP[name], description=_HELP[name])
        _add_flags(sp, name, keys)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    file_values = load_config(args.config) if args.config else {}
    flags = {k: getattr(args, k) for k in _FLAGS if hasattr(args, k)}
    return build_config(file_values, flags)


# --- shared pieces -------------------------------------------------------------


def _grid(cfg: RunConfig) -> GridSpec:
    return GridSpec(cfg.grid[0], cfg.grid[1], cfg.extent[0], cfg.extent[1])


def _mother(cfg: RunConfig, grid: GridSpec):
    return default_mother(grid, Cone(cfg.cone), cfg.scale_center, cfg.scale_width,
                          cfg.rapidity_width)


def _lattice_nodes(cfg: RunConfig, fallback, log_c: bool = True):
    c_range = cfg.c_range or fallback[0]
    a_range = cfg.alpha_range or fallback[1]
    n_c = cfg.n_c or fallback[2]
    n_a = cfg.n_alpha or fallback[3]
    if min(c_range) <= 0 or n_c < 1 or n_a < 1:
        raise InvalidArgumentError("dilation range must be positive and node counts at least 1")
    spacing = np.geomspace if log_c else np.linspace
    return spacing(c_range[0], c_range[1], n_c), np.linspace(a_range[0], a_range[1], n_a)


def _quadrature(cfg: RunConfig, m) -> GroupQuadrature:
    n_c, n_a = cfg.n_c or 64, cfg.n_alpha or 64
    if cfg.c_range is None and cfg.alpha_range is None:
        return GroupQuadrature.default(m, n_c, n_a)
    base = GroupQuadrature.default(m, n_c, n_a).lattice
    return GroupQuadrature(QuadratureLattice(cfg.c_range or base.c_range,
                                             cfg.alpha_range or base.alpha_range, n_c, n_a))


def _extent_box(grid: GridSpec):
    return [grid.s_nodes[0], grid.s_nodes[-1], grid.t_nodes[0], grid.t_nodes[-1]]


# --- transform ------------------------------------------------------------------


def cmd_transform(cfg: RunConfig) -> int:
    if cfg.input:
        f = io.read_bsf(cfg.input)
        grid = f.grid
    else:
        grid = _grid(cfg)
        f = random_band_limited(grid, np.random.default_rng(cfg.seed))
    m = _mother(cfg, grid)
    cs, alphas = _lattice_nodes(cfg, TRANSFORM_LATTICE)
    out = io.ensure_dir(cfg.out)
    rows, mags, titles = [], [], []
    for i, c in enumerate(cs):
        for j, a in enumerate(alphas):
            coeffs = cbt_slice(f, m, float(c), float(a), strict=True)
            for k, plane in enumerate(coeffs.planes, 1):
                name = f"plane_c{i:02d}_a{j:02d}_{k}.bsf"
                io.write_bsf(out / name, plane)
                rows.append((float(c), float(a), k, name))
                if cfg.images:
                    mag = np.abs(plane.values)
                    io.write_pgm(out / name.replace(".bsf", ".pgm"), mag.T[::-1])
                    mags.append(mag)
                    titles.append(f"c={c:.3g} a={a:.3g} #{k}")
    io.write_manifest(out / "manifest.txt", ("c", "alpha", "component", "file"), rows,
                      notes=[f"grid {grid.n_s}x{grid.n_t} extent {grid.extent_s!r},{grid.extent_t!r}",
                             f"mother {m.label}"])
    print(f"wrote {len(rows)} planes to {out}")
    if cfg.images:
        from . import plotting
        plotting.plane_grid(out / "planes.png", mags, titles, _extent_box(grid))
    if cfg.verify_paths:
        rng = np.random.default_rng(cfg.seed)
        probe = random_band_limited(grid, rng)
        err = max(path_equivalence(probe, m, float(c), float(a), rng, n_points=4)
                  for c in cs for a in alphas)
        status = "PASS" if err < PATH_TOLERANCE else "FAIL"
        print(f"{status} path equivalence max relative error {err:.3e} (tol {PATH_TOLERANCE:.0e})")
        if err >= PATH_TOLERANCE:
            return EXIT_CHECK
    return EXIT_OK


# --- admissibility --------------------------------------------------------------


def admissibility_run(cfg: RunConfig, m, factor: int = 1):
    """Admissibility on the configured (or covering) lattice at 32 samples
    spread over the mother's own support box."""
    u_box, b_box = m.scale_profile.support, m.rapidity_profile.support
    n_c, n_a = (cfg.n_c or 128) * factor, (cfg.n_alpha or 128) * factor
    if cfg.c_range is None or cfg.alpha_range is None:
        lat = lattice_covering(m, u_box, b_box, n_c, n_a, margin=3.0)
        c_range = cfg.c_range or lat.c_range
        a_range = cfg.alpha_range or lat.alpha_range
    else:
        c_range, a_range = cfg.c_range, cfg.alpha_range
    omega = interior_frequencies(m, u_box, b_box, per_axis=4)
    return admissibility(m, omega, c_range, a_range, n_c, n_a)


def cmd_admissibility(cfg: RunConfig) -> int:
    m = _mother(cfg, _grid(cfg))
    res = admissibility_run(cfg, m)
    fine = admissibility_run(cfg, m, factor=2)
    change = abs(fine.delta - res.delta) / res.delta if res.delta > 0 else math.inf
    q = res.quadrature
    print(f"mother           {m.label}")
    print(f"quadrature       c {q['c_range'][0]:.6g}:{q['c_range'][1]:.6g} x {q['n_c']}, "
          f"alpha {q['alpha_range'][0]:.6g}:{q['alpha_range'][1]:.6g} x {q['n_alpha']}")
    print(f"samples          {len(res.omega_samples)}")
    print(f"delta            {res.delta:.12g}")
    for label, v in (("delta_phi", res.delta_phi), ("delta_phi_star", res.delta_phi_star)):
        print(f"{label:16s} min {v.min():.6g} max {v.max():.6g} mean {v.mean():.6g}")
    print(f"relative_spread  {res.relative_spread:.3e} (threshold {cfg.spread_threshold:g})")
    print(f"convergence      doubled delta {fine.delta:.12g}, relative change {change:.3e}"
          f" ({'ok' if change < CONVERGENCE_TOLERANCE else 'not converged'})")
    for w in res.warnings:
        print(f"warning: {w}")
    if cfg.images:
        from . import plotting
        out = io.ensure_dir(cfg.out)
        plotting.admissibility_plot(out / "admissibility.png", res)
    if not res.admissible or res.relative_spread >= cfg.spread_threshold:
        return EXIT_SPREAD
    return EXIT_OK


# --- verify ---------------------------------------------------------------------


def cmd_verify(cfg: RunConfig) -> int:
    m = _mother(cfg, _grid(cfg))
    results = run_property_suite(m, seed=cfg.seed)
    for r in results:
        print(r.line())
    failed = [r for r in results if r.passed is False]
    print(f"{len(results) - len(failed)}/{len(results)} lines ok, {len(failed)} failed")
    return EXIT_CHECK if failed else EXIT_OK


# --- uncertainty ----------------------------------------------------------------


def signal_reports(psi: Field2D, m, q: GroupQuadrature, delta: float, cfg: RunConfig,
                   density: Optional[CoefficientDensity] = None):
    """Heisenberg, one row per ``p``, log, one row per ``lambda``, Nazarov."""
    p_first = [p for p in cfg.p if p <= 2.0]
    if density is None:
        density = coefficient_density(psi, m, q, p_first, components=cfg.components,
                                      strict=cfg.strict)
    rows = [heisenberg_report(psi, m, q, delta, density)]
    for p in cfg.p:
        if p <= 2.0:
            rows.append(lp_heisenberg_i_report(psi, m, p, q, delta, density))
        else:
            rows.append(lp_heisenberg_ii_report(psi, m, p, q, delta, density))
    rows.append(log_uncertainty_report(psi, m, q, delta, density))
    rows += [pitt_report(psi, m, lam, q, delta, density) for lam in cfg.lam]
    rows.append(nazarov_report(psi, m, Rectangle(*cfg.rect_a1), Rectangle(*cfg.rect_a2), q,
                               delta, density))
    return rows, density


def cmd_uncertainty(cfg: RunConfig) -> int:
    grid = _grid(cfg)
    m = _mother(cfg, grid)
    q = _quadrature(cfg, m)
    delta = q.admissibility(m).delta
    out = io.ensure_dir(cfg.out)
    reports, ids = [], []
    diverged = 0
    first_density = None
    for k, (_, psi) in enumerate(signal_suite(grid, cfg.seed, cfg.n_signals, Cone(cfg.cone))):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                rows, density = signal_reports(psi, m, q, delta, cfg)
            except DivergenceError as exc:
                print(f"signal {k}: {exc}", file=sys.stderr)
                diverged += 1
                continue
        rows_diverging = any(r.diverging for r in rows) or any(
            issubclass(w.category, DivergenceWarning) for w in caught)
        diverged += int(rows_diverging)
        if first_density is None:
            first_density = density
        reports += rows
        ids += [k] * len(rows)
    (out / "uncertainty.csv").write_text(
        reports_to_csv(reports, ("signal",), [(i,) for i in ids]), encoding="ascii")

    by_label = {}
    for r in reports:
        label = r.name if r.p_or_lambda == "" else f"{r.name}({r.p_or_lambda:g})"
        by_label.setdefault(label, []).append(r)
    print(f"quadrature {q.ident}, delta {delta:.6g}, {cfg.n_signals} signals")
    for label, rs in by_label.items():
        ratios = [r.ratio for r in rs]
        flags = [r.satisfied for r in rs if r.satisfied is not None]
        verdict = "bound" if not flags else f"{sum(flags)}/{len(flags)} satisfied"
        print(f"{label:14s} ratio min {min(ratios):.4g} max {max(ratios):.4g}  {verdict}")
    print(f"wrote {len(reports)} rows to {out / 'uncertainty.csv'}")
    if diverged:
        print(f"warning: {diverged} signal(s) raised divergence warnings")

    if cfg.images and first_density is not None:
        from . import plotting
        plotting.ratio_plot(out / "ratios.png", ids, reports)
        io.write_pgm(out / "density_signal00.pgm", first_density.energy.T[::-1])
        plotting.density_image(out / "density_signal00.png", first_density.energy,
                               _extent_box(grid))
    if cfg.strict and diverged:
        return EXIT_DIVERGENCE
    if any(r.satisfied is False for r in reports):
        return EXIT_CHECK
    return EXIT_OK


# --- example --------------------------------------------------------------------


def sweep_from_config(cfg: RunConfig) -> closed_form.ExampleSweep:
    cs, alphas = _lattice_nodes(cfg, EXAMPLE_LATTICE, log_c=False)
    taus = np.linspace(cfg.tau_range[0], cfg.tau_range[1], cfg.n_tau)
    return closed_form.example_sweep(cs, alphas, taus, taus, cfg.epsilon)


def sweep_table(sweep: closed_form.ExampleSweep) -> np.ndarray:
    """Rows ``c, alpha, tau_s, tau_t, re1, im1, re2, im2`` with ``tau_t``
    varying fastest, then ``tau_s``, ``alpha``, ``c``."""
    v = np.transpose(sweep.values, (0, 3, 4, 1, 2))  # (2, c, alpha, tau_s, tau_t)
    C, A, TS, TT = np.meshgrid(sweep.c, sweep.alpha, sweep.tau_s, sweep.tau_t, indexing="ij")
    cols = [C, A, TS, TT, v[0].real, v[0].imag, v[1].real, v[1].imag]
    return np.stack([x.ravel() for x in cols], axis=1)


def cmd_example(cfg: RunConfig) -> int:
    sweep = sweep_from_config(cfg)
    out = io.ensure_dir(cfg.out)
    table = sweep_table(sweep)
    np.savetxt(out / "example.csv", table, fmt="%.17g", delimiter=",",
               header="c,alpha,tau_s,tau_t,re1,im1,re2,im2", comments="")
    mag = sweep.magnitude
    rows = []
    for i, c in enumerate(sweep.c):
        for j, a in enumerate(sweep.alpha):
            name = f"slice_c{i:02d}_a{j:02d}.pgm"
            lo, hi = io.write_pgm(out / name, mag[:, :, i, j].T[::-1])
            rows.append((float(c), float(a), lo, hi, name))
    io.write_manifest(out / "example_manifest.txt", ("c", "alpha", "min", "max", "file"), rows,
                      notes=[f"epsilon {sweep.epsilon!r}",
                             f"sqrt branch {closed_form.SQRT_BRANCH}",
                             f"tau {float(sweep.tau_s[0])!r}:{float(sweep.tau_s[-1])!r} x {len(sweep.tau_s)}",
                             "pixel value: linear map of sqrt(|B1|^2 + |B2|^2) over min:max"])
    n_pole = len(sweep.pole_rows) * len(sweep.alpha) * len(sweep.tau_s) * len(sweep.tau_t)
    print(f"wrote {len(table)} rows and {len(rows)} slice images to {out}")
    if n_pole:
        print(f"warning: {n_pole} rows at near-pole c set to nan")
    if cfg.images:
        from . import plotting
        i = len(sweep.c) // 2
        j = int(np.argmin(np.abs(sweep.alpha)))
        plotting.example_surface(out / "example_surface.png", sweep.tau_s, sweep.tau_t,
                                 mag[:, :, i, j],
                                 title=f"c={sweep.c[i]:.3g}, alpha={sweep.alpha[j]:.3g}")
    return EXIT_OK


_COMMANDS = {
    "transform": cmd_transform,
    "admissibility": cmd_admissibility,
    "verify": cmd_verify,
    "uncertainty": cmd_uncertainty,
    "example": cmd_example,
}


def run(cfg: RunConfig, command: str) -> int:
    try:
        return _COMMANDS[command](cfg)
    except (OSError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except BoostletError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL


def _attach_values(argv: Sequence[str]) -> List[str]:
    # argparse reads "-1:1" as an option; glue values onto their flags
    valued = {"--" + ("lambda" if k == "lam" else k.replace("_", "-"))
              for k, (parser, _, _) in _FLAGS.items() if parser is not None}
    valued.add("--config")
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in valued and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_values(argv))
    try:
        cfg = config_from_args(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BoostletError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    return run(cfg, args.command)


if __name__ == "__main__":
    sys.exit(main())

"""Matplotlib figures for the CLI report paths.

Everything renders through the Agg backend and strips the PNG software tag,
so the same inputs give the same bytes.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_RC = {
    "figure.dpi": 100,
    "font.size": 9,
    "axes.titlesize": 9,
    "image.cmap": "viridis",
    "savefig.bbox": "tight",
}


def _save(fig, path) -> Path:
    path = Path(path)
    fig.savefig(path, format="png", metadata={"Software": None})
    plt.close(fig)
    return path


def plane_grid(path, magnitudes: Sequence[np.ndarray], titles: Sequence[str],
               extent: Sequence[float], ncols: int = 4) -> Path:
    """One panel per coefficient plane, ``tau_s`` across and ``tau_t`` up."""
    n = len(magnitudes)
    ncols = max(1, min(ncols, n))
    nrows = -(-n // ncols)
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(nrows, ncols, figsize=(2.4 * ncols, 2.3 * nrows), squeeze=False)
        for ax in axes.ravel()[n:]:
            ax.set_axis_off()
        for ax, mag, title in zip(axes.ravel(), magnitudes, titles):
            ax.imshow(np.asarray(mag).T, origin="lower", extent=extent, aspect="auto")
            ax.set_title(title)
            ax.tick_params(labelsize=7)
        return _save(fig, path)


def admissibility_plot(path, result) -> Path:
    """Both integrals and their sum at each frequency sample."""
    k = np.arange(len(result.omega_samples))
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5.5, 3.0))
        ax.plot(k, result.delta_phi, "o-", ms=3, label=r"$\Delta_\varphi$")
        ax.plot(k, result.delta_phi_star, "s-", ms=3, label=r"$\Delta_{\varphi^*}$")
        ax.plot(k, result.pooled, "k^-", ms=3, label="sum")
        ax.axhline(result.delta, color="0.5", lw=0.8, ls="--")
        ax.set_xlabel("frequency sample")
        ax.set_ylabel("integral")
        ax.set_title(f"relative spread {result.relative_spread:.2e}")
        ax.legend(frameon=False, fontsize=8)
        return _save(fig, path)


def ratio_plot(path, signal_ids: Sequence[int], reports) -> Path:
    """``lhs / rhs`` by signal, one marker series per report label."""
    series = {}
    for sid, r in zip(signal_ids, reports):
        label = r.name if r.p_or_lambda == "" else f"{r.name} {r.p_or_lambda:g}"
        series.setdefault(label, ([], []))
        series[label][0].append(sid)
        series[label][1].append(r.ratio)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.0, 3.4))
        for label in sorted(series):
            x, y = series[label]
            ax.plot(x, y, "o", ms=3, label=label)
        ax.axhline(1.0, color="0.5", lw=0.8, ls="--")
        ax.set_yscale("symlog", linthresh=1e-2)
        ax.set_xlabel("signal")
        ax.set_ylabel("lhs / rhs")
        ax.legend(frameon=False, fontsize=7, ncol=2)
        return _save(fig, path)


def density_image(path, density: np.ndarray, extent: Sequence[float]) -> Path:
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(3.6, 3.2))
        im = ax.imshow(np.asarray(density).T, origin="lower", extent=extent, aspect="auto")
        fig.colorbar(im, ax=ax, shrink=0.85)
        ax.set_xlabel(r"$\tau_s$")
        ax.set_ylabel(r"$\tau_t$")
        return _save(fig, path)


def example_surface(path, tau_s: np.ndarray, tau_t: np.ndarray, magnitude: np.ndarray,
                    title: str = "") -> Path:
    """Surface of a ``(n_tau_s, n_tau_t)`` magnitude slice on a log axis."""
    TS, TT = np.meshgrid(tau_s, tau_t, indexing="ij")
    with np.errstate(divide="ignore"):
        z = np.log10(np.asarray(magnitude, dtype=float))
    with plt.rc_context(_RC):
        fig = plt.figure(figsize=(4.6, 3.8))
        ax = fig.add_subplot(projection="3d")
        ax.plot_surface(TS, TT, np.where(np.isfinite(z), z, np.nan), cmap="viridis",
                        linewidth=0, antialiased=False)
        ax.set_xlabel(r"$\tau_s$")
        ax.set_ylabel(r"$\tau_t$")
        ax.set_zlabel(r"$\log_{10}|B|$")
        ax.set_title(title)
        return _save(fig, path)

"""Plain-text field files, manifests and 8-bit PGM rasters.

``.bsf`` layout::

    BSF1 n_s n_t extent_s extent_t
    re im            (n_s * n_t lines, s outer, t inner, %.17g)

17 significant digits round-trip every double exactly.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import FormatError, InvalidArgumentError
from .field import Field2D, GridSpec

MAGIC = "BSF1"


def format_bsf(f: Field2D) -> str:
    g = f.grid
    head = f"{MAGIC} {g.n_s} {g.n_t} {g.extent_s!r} {g.extent_t!r}\n"
    v = f.values.ravel()
    body = "".join(f"{re:.17g} {im:.17g}\n" for re, im in zip(v.real.tolist(), v.imag.tolist()))
    return head + body


def write_bsf(path, f: Field2D) -> Path:
    path = Path(path)
    path.write_text(format_bsf(f), encoding="ascii")
    return path


def parse_bsf(text: str, source: str = "<string>") -> Field2D:
    lines = text.splitlines()
    if not lines:
        raise FormatError(f"{source}: empty file")
    head = lines[0].split()
    if len(head) != 5 or head[0] != MAGIC:
        raise FormatError(f"{source}: expected header '{MAGIC} n_s n_t extent_s extent_t'")
    try:
        grid = GridSpec(int(head[1]), int(head[2]), float(head[3]), float(head[4]))
    except (ValueError, InvalidArgumentError) as exc:
        raise FormatError(f"{source}: bad header: {exc}") from exc
    rows = [ln for ln in lines[1:] if ln.strip()]
    if len(rows) != grid.n_s * grid.n_t:
        raise FormatError(f"{source}: expected {grid.n_s * grid.n_t} samples, found {len(rows)}")
    try:
        data = np.array([[float(x) for x in ln.split()] for ln in rows])
    except ValueError as exc:
        raise FormatError(f"{source}: non-numeric sample: {exc}") from exc
    if data.ndim != 2 or data.shape[1] != 2:
        raise FormatError(f"{source}: every sample line needs exactly two numbers")
    values = (data[:, 0] + 1j * data[:, 1]).reshape(grid.shape)
    if not np.all(np.isfinite(values)):
        raise FormatError(f"{source}: non-finite sample")
    return Field2D(grid, values)


def read_bsf(path) -> Field2D:
    path = Path(path)
    return parse_bsf(path.read_text(encoding="ascii"), str(path))


def write_manifest(path, header: Sequence[str], rows: Iterable[Sequence], notes: Sequence[str] = ()) -> Path:
    """Whitespace-separated ASCII table; ``notes`` become leading ``#`` lines."""
    path = Path(path)
    out = [f"# {n}" for n in notes]
    out.append(" ".join(header))
    for r in rows:
        out.append(" ".join(_cell(x) for x in r))
    path.write_text("\n".join(out) + "\n", encoding="ascii")
    return path


def _cell(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def to_bytes8(a: np.ndarray) -> Tuple[np.ndarray, float, float]:
    """Linear map of ``a`` onto 0..255 over its finite min/max."""
    a = np.asarray(a, dtype=float)
    finite = np.isfinite(a)
    if not finite.any():
        return np.zeros(a.shape, np.uint8), float("nan"), float("nan")
    lo, hi = float(a[finite].min()), float(a[finite].max())
    span = hi - lo
    scaled = np.zeros(a.shape) if span == 0 else (np.where(finite, a, lo) - lo) / span
    return np.round(255 * scaled).astype(np.uint8), lo, hi


def write_pgm(path, a: np.ndarray) -> Tuple[float, float]:
    """Binary (P5) 8-bit PGM of a real array plus a ``.txt`` sidecar with the
    min/max that map to 0 and 255.  Rows of ``a`` become image rows."""
    path = Path(path)
    img, lo, hi = to_bytes8(a)
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(img.tobytes())
    sidecar = path.with_name(path.name + ".txt")
    sidecar.write_text(f"min {lo:.17g}\nmax {hi:.17g}\nmapping linear\n", encoding="ascii")
    return lo, hi


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    tokens, pos = [], 0
    while len(tokens) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        end = pos
        while end < len(data) and not data[end:end + 1].isspace():
            end += 1
        if end == pos:
            raise FormatError(f"{path}: truncated PGM header")
        tokens.append(data[pos:end])
        pos = end
    if tokens[0] != b"P5":
        raise FormatError(f"{path}: not a binary PGM")
    w, h, maxval = (int(t) for t in tokens[1:])
    if maxval != 255:
        raise FormatError(f"{path}: only 8-bit PGM is supported")
    pix = np.frombuffer(data[pos + 1: pos + 1 + w * h], dtype=np.uint8)
    if pix.size != w * h:
        raise FormatError(f"{path}: truncated pixel data")
    return pix.reshape(h, w)


def ensure_dir(path) -> Path:
    path = Path(path)
    os.makedirs(path, exist_ok=True)
    return path

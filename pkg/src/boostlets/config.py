"""Run configuration: flat ``key = value`` files overlaid by command-line flags."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional, Tuple

from .errors import InvalidArgumentError


def parse_grid(text: str) -> Tuple[int, int]:
    parts = str(text).lower().split("x")
    if len(parts) != 2:
        raise InvalidArgumentError(f"grid must look like 128x128, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise InvalidArgumentError(f"grid must look like 128x128, got {text!r}") from exc


def parse_range(text: str) -> Tuple[float, float]:
    parts = str(text).split(":")
    if len(parts) != 2:
        raise InvalidArgumentError(f"range must look like a:b, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise InvalidArgumentError(f"range must look like a:b, got {text!r}") from exc


def parse_floats(text: str) -> Tuple[float, ...]:
    try:
        return tuple(float(x) for x in str(text).split(",") if x.strip())
    except ValueError as exc:
        raise InvalidArgumentError(f"expected comma-separated numbers, got {text!r}") from exc


def parse_rect(text: str) -> Tuple[float, float, float, float]:
    """``s0:s1,t0:t1`` -> ``(s0, s1, t0, t1)``."""
    parts = str(text).split(",")
    if len(parts) != 2:
        raise InvalidArgumentError(f"rectangle must look like s0:s1,t0:t1, got {text!r}")
    return parse_range(parts[0]) + parse_range(parts[1])


def parse_bool(text: str) -> bool:
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise InvalidArgumentError(f"expected a boolean, got {text!r}")


@dataclass
class RunConfig:
    """Every recognised key.  ``None`` means "derive from the mother" for
    quadrature ranges and "command default" for node counts."""

    grid: Tuple[int, int] = (128, 128)
    extent: Tuple[float, float] = (8.0, 8.0)
    cone: str = "supersonic"
    scale_center: float = 0.0
    scale_width: float = 0.3
    rapidity_width: float = 0.3
    c_range: Optional[Tuple[float, float]] = None
    alpha_range: Optional[Tuple[float, float]] = None
    n_c: Optional[int] = None
    n_alpha: Optional[int] = None
    seed: int = 0
    n_signals: int = 20
    p: Tuple[float, ...] = (1.5,)
    lam: Tuple[float, ...] = (0.5,)
    rect_a1: Tuple[float, float, float, float] = (-2.0, 2.0, -2.0, 2.0)
    rect_a2: Tuple[float, float, float, float] = (0.5, 2.0, -1.0, 1.0)
    components: str = "both"
    spread_threshold: float = 0.01
    epsilon: float = 0.1
    tau_range: Tuple[float, float] = (-1.0, 1.0)
    n_tau: int = 32
    input: Optional[str] = None
    out: str = "out"
    images: bool = False
    strict: bool = False
    verify_paths: bool = False

    def replace(self, **kw) -> "RunConfig":
        return dataclasses.replace(self, **kw)


_PARSERS = {
    "grid": parse_grid,
    "extent": lambda t: (lambda v: v if len(v) == 2 else (v[0], v[0]))(parse_floats(t)),
    "cone": str,
    "scale_center": float,
    "scale_width": float,
    "rapidity_width": float,
    "c_range": parse_range,
    "alpha_range": parse_range,
    "n_c": int,
    "n_alpha": int,
    "seed": int,
    "n_signals": int,
    "p": parse_floats,
    "lam": parse_floats,
    "rect_a1": parse_rect,
    "rect_a2": parse_rect,
    "components": str,
    "spread_threshold": float,
    "epsilon": float,
    "tau_range": parse_range,
    "n_tau": int,
    "input": str,
    "out": str,
    "images": parse_bool,
    "strict": parse_bool,
    "verify_paths": parse_bool,
}
_ALIASES = {"lambda": "lam"}

KEYS = tuple(f.name for f in fields(RunConfig))
assert set(KEYS) == set(_PARSERS)


def parse_value(key: str, text: str):
    key = _ALIASES.get(key, key)
    if key not in _PARSERS:
        raise InvalidArgumentError(f"unknown configuration key {key!r}")
    try:
        return _PARSERS[key](text)
    except ValueError as exc:
        raise InvalidArgumentError(f"bad value for {key}: {text!r}") from exc


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """``key = value`` lines; ``#`` starts a comment; keys may use ``-``."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidArgumentError(f"{source}:{lineno}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = _ALIASES.get(key.replace("-", "_"), key.replace("-", "_"))
        if key not in _PARSERS:
            raise InvalidArgumentError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            out[key] = parse_value(key, value)
        except InvalidArgumentError as exc:
            raise InvalidArgumentError(f"{source}:{lineno}: {exc}") from exc
    return out


def load_config(path) -> dict:
    path = Path(path)
    return parse_config_text(path.read_text(encoding="ascii"), str(path))


def build_config(file_values: Optional[dict] = None, flag_values: Optional[dict] = None) -> RunConfig:
    """Defaults, then the file, then flags (only flags actually given)."""
    cfg = RunConfig()
    merged = dict(file_values or {})
    merged.update({k: v for k, v in (flag_values or {}).items() if v is not None})
    unknown = set(merged) - set(KEYS)
    if unknown:
        raise InvalidArgumentError(f"unknown configuration keys: {sorted(unknown)}")
    return cfg.replace(**merged)

"""Run configuration: flat key=value files, environment overrides, CLI overrides.

Precedence (later wins): built-in defaults < config file < PEIERLS_*
environment variables < command-line flags.  All numerics are decimal;
parse errors name the file, line, and key.  A run's effective config is
embedded verbatim in its output metadata so any artifact can be re-run
from the metadata alone.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from importlib import resources
from pathlib import Path
from typing import Any

from .model import ModelParams

__all__ = [
    "ConfigError",
    "RunConfig",
    "parse_config_file",
    "load_config",
    "reference_config_path",
]

ENV_PREFIX = "PEIERLS_"


class ConfigError(ValueError):
    """Invalid configuration; message names the offending field."""


@dataclass(frozen=True)
class RunConfig:
    # model parameters
    t: float = 1.0
    zeta: float = 0.0
    kappa: float = 0.0
    q: float = 1.0
    w: float = 0.0
    big_l: int = 16
    phonon_norm: str = "per-cell"
    strict_paper: bool = False
    # state
    z_re: float = 0.0
    z_im: float = 0.0
    # landscape grid
    re_min: float = -0.3
    re_max: float = 0.3
    im_min: float = -0.3
    im_max: float = 0.3
    resolution: int = 41
    workers: int = 1
    # critical-point search
    seed_rings: tuple[float, ...] = (0.05, 0.12)
    seed_angles: int = 8
    newton_tol: float = 1e-10
    max_step: float = 0.05
    # phase-space dynamics
    x0: float = 0.01
    v0: float = 0.0
    dt: float = 0.01
    steps: int = 20000
    settle_tol: float = 1e-10
    # kink chain
    n_sites: int = 200
    kink_site: int = 100
    kink_dt: float = 0.5
    kink_steps: int = 400
    anchor_offset: int = -4
    z_motion: str = "frozen"
    hysteresis: float = 0.25

    def __post_init__(self) -> None:
        if self.phonon_norm not in ("per-cell", "per-site"):
            raise ConfigError(f"phonon_norm must be 'per-cell' or 'per-site', got {self.phonon_norm!r}")
        if self.z_motion not in ("frozen", "lowest"):
            raise ConfigError(f"z_motion must be 'frozen' or 'lowest', got {self.z_motion!r}")
        for name in ("resolution", "workers", "steps", "kink_steps", "seed_angles"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")
        try:
            self.model_params()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def model_params(self) -> ModelParams:
        return ModelParams(t=self.t, zeta=self.zeta, kappa=self.kappa, big_l=self.big_l, q=self.q, w=self.w)

    def seeds(self) -> list[tuple[float, float]]:
        """Deterministic critical-point seeds: origin plus rings of points."""
        import math

        out: list[tuple[float, float]] = [(0.0, 0.0)]
        for r in self.seed_rings:
            for k in range(self.seed_angles):
                a = 2.0 * math.pi * k / self.seed_angles
                out.append((r * math.cos(a), r * math.sin(a)))
        return out

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
_BOOL_FIELDS = {"strict_paper"}
_INT_FIELDS = {"big_l", "resolution", "workers", "steps", "n_sites", "kink_site",
               "kink_steps", "anchor_offset", "seed_angles"}
_STR_FIELDS = {"phonon_norm", "z_motion"}
_TUPLE_FIELDS = {"seed_rings"}


def _coerce(key: str, raw: str, where: str) -> Any:
    raw = raw.strip()
    try:
        if key in _BOOL_FIELDS:
            if raw.lower() in ("1", "true", "yes", "on"):
                return True
            if raw.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(f"expected a boolean, got {raw!r}")
        if key in _INT_FIELDS:
            return int(raw)
        if key in _STR_FIELDS:
            return raw
        if key in _TUPLE_FIELDS:
            return tuple(float(part) for part in raw.split(",") if part.strip())
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{where}: field {key!r}: {exc}") from exc


def parse_config_file(path: str | Path) -> dict[str, Any]:
    """Parse a flat key=value file; '#' starts a comment, blank lines skipped."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    values: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line.strip()!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if key not in _FIELD_TYPES:
            raise ConfigError(f"{path}:{lineno}: unknown field {key!r}")
        values[key] = _coerce(key, raw, f"{path}:{lineno}")
    return values


def _env_overrides(environ: dict[str, str]) -> dict[str, Any]:
    values: dict[str, Any] = {}
    for key, raw in environ.items():
        if not key.startswith(ENV_PREFIX) or key.startswith(ENV_PREFIX + "TEST_"):
            continue
        field = key[len(ENV_PREFIX):].lower()
        if field not in _FIELD_TYPES:
            raise ConfigError(f"environment variable {key}: unknown field {field!r}")
        values[field] = _coerce(field, raw, f"environment variable {key}")
    return values


def load_config(
    config_file: str | Path | None = None,
    overrides: dict[str, Any] | None = None,
    environ: dict[str, str] | None = None,
) -> RunConfig:
    """Assemble the effective RunConfig (defaults < file < env < overrides)."""
    values: dict[str, Any] = {}
    if config_file is not None:
        values.update(parse_config_file(config_file))
    values.update(_env_overrides(os.environ if environ is None else environ))
    if overrides:
        for key, val in overrides.items():
            if key not in _FIELD_TYPES:
                raise ConfigError(f"unknown field {key!r}")
            values[key] = val
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def reference_config_path(name: str) -> Path:
    """Path of a checked-in reference config ('double_well' or 'kink_dynamics')."""
    ref = resources.files("peierls.configs").joinpath(f"{name}.cfg")
    path = Path(str(ref))
    if not path.is_file():
        raise ConfigError(f"no reference config named {name!r}")
    return path


def with_updates(config: RunConfig, **updates: Any) -> RunConfig:
    return replace(config, **updates)

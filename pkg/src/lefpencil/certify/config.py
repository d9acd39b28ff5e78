"""Run configuration: cover datum, pencil and options, loaded from JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from ..ellcurve import CoverDatum
from ..sections import PencilSpec

__all__ = ["ConfigError", "Options", "RunConfig", "load_config", "parse_config", "shipped_config_path"]

MODES = ("rational", "modular")
TIMING_MODES = ("sidecar", "embed", "off")


class ConfigError(ValueError):
    """Malformed or inconsistent configuration (usage error)."""


@dataclass(frozen=True)
class Options:
    mode: str = "modular"
    prime_count: int = 3
    irreducibility_prime_bound: int = 2000
    series_order: int = 6
    seed: int = 0
    # where wall-clock timings go; "embed" breaks byte-determinism
    timings: str = "sidecar"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.prime_count < 1:
            raise ConfigError("prime_count must be positive")
        if self.irreducibility_prime_bound < 3:
            raise ConfigError("irreducibility_prime_bound must be at least 3")
        if self.series_order < 6:
            raise ConfigError("series_order must be at least 6")
        if self.timings not in TIMING_MODES:
            raise ConfigError(f"timings must be one of {TIMING_MODES}")

    def to_dict(self) -> dict:
        return {"mode": self.mode, "prime_count": self.prime_count,
                "irreducibility_prime_bound": self.irreducibility_prime_bound,
                "series_order": self.series_order, "seed": self.seed, "timings": self.timings}


@dataclass(frozen=True)
class RunConfig:
    cover: CoverDatum
    pencil: PencilSpec
    options: Options = field(default_factory=Options)

    def with_options(self, **kw) -> "RunConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        try:
            return replace(self, options=replace(self.options, **kw))
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    def to_dict(self) -> dict:
        return {"cover": self.cover.to_dict(), "pencil": self.pencil.to_dict(),
                "options": self.options.to_dict()}


def parse_config(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    try:
        c = data["cover"]
        cover = CoverDatum.from_dict({k: c[k] for k in ("a2", "a4", "a6", "alpha", "beta")})
        pencil = PencilSpec.from_dict(data["pencil"])
    except KeyError as exc:
        raise ConfigError(f"missing configuration key {exc}") from None
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ConfigError(str(exc)) from None
    opts = data.get("options", {})
    unknown = set(opts) - set(Options.__dataclass_fields__)
    if unknown:
        raise ConfigError(f"unknown options: {sorted(unknown)}")
    try:
        options = Options(**{k: (int(v) if k in ("prime_count", "irreducibility_prime_bound",
                                                     "series_order", "seed") else v)
                             for k, v in opts.items()})
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(cover, pencil, options)


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return parse_config(data)


def shipped_config_path() -> Path:
    """Path of the bundled configuration for the curve y^2 = x^3 + x^2 + x - 3/4 and the pencil J1."""
    return Path(str(resources.files("lefpencil") / "data" / "e1_j1.json"))



"""Run configuration: validation, text forms, YAML presets and environment defaults."""

import os
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

import yaml

JOBS_ENV_VAR = "LACUNARY_HARMONIC_JOBS"
DEFAULT_MODULI = tuple(range(2, 13))
DEFAULT_PMIN = 5
DEFAULT_PMAX = 97


class ConfigError(ValueError):
    """Raised when a run configuration or preset file is invalid."""

    pass


class OutputFormat(str, Enum):
    TABLE = "table"
    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a verification sweep needs.

    checks is None for "all registered checks".
    """

    checks: Optional[tuple[str, ...]] = None
    pmin: int = DEFAULT_PMIN
    pmax: int = DEFAULT_PMAX
    moduli: tuple[int, ...] = DEFAULT_MODULI
    exclude: frozenset[int] = field(default_factory=frozenset)
    output_format: OutputFormat = OutputFormat.TABLE
    jobs: int = 1
    include_p_dividing_m: bool = False
    fail_fast: bool = False
    report_only_exceptions: bool = False
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.pmin < 1:
            raise ConfigError(f"pmin must be positive, got {self.pmin}")
        if self.pmin > self.pmax:
            raise ConfigError(f"pmin ({self.pmin}) must not exceed pmax ({self.pmax})")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        if not self.moduli:
            raise ConfigError("moduli must not be empty")
        bad = [m for m in self.moduli if m < 2]
        if bad:
            raise ConfigError(f"moduli must be >= 2, got {bad}")


def parse_moduli(text: str) -> tuple[int, ...]:
    """
    Parse "2..12", "2,3,5" or a mix such as "2..4,8".

    Raises:
        ConfigError: On malformed input
    """
    values: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo_text, hi_text = part.split("..", 1)
                lo, hi = int(lo_text), int(hi_text)
                if lo > hi:
                    raise ConfigError(f"empty moduli range: {part}")
                values.update(range(lo, hi + 1))
            else:
                values.add(int(part))
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"invalid moduli: {text!r}") from e
    if not values:
        raise ConfigError(f"invalid moduli: {text!r}")
    return tuple(sorted(values))


def parse_checks(text: str, known: Optional[set[str]] = None) -> Optional[tuple[str, ...]]:
    """
    Parse a comma-separated id list; "all" gives None.

    Raises:
        ConfigError: If an id is not in known (when known is given)
    """
    if text.strip().lower() == "all":
        return None
    ids = tuple(sorted({part.strip() for part in text.split(",") if part.strip()}))
    if not ids:
        raise ConfigError("no check ids given")
    if known is not None:
        unknown = [check_id for check_id in ids if check_id not in known]
        if unknown:
            raise ConfigError(f"Unknown check: {', '.join(unknown)}")
    return ids


def parse_exclude(text: str) -> frozenset[int]:
    """Comma-separated primes to leave out of a sweep."""
    try:
        return frozenset(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise ConfigError(f"invalid exclude list: {text!r}") from e


def default_jobs() -> int:
    """Jobs from the environment, falling back to 1."""
    raw = os.environ.get(JOBS_ENV_VAR)
    if not raw:
        return 1
    try:
        jobs = int(raw)
    except ValueError as e:
        raise ConfigError(f"{JOBS_ENV_VAR} must be an integer, got {raw!r}") from e
    if jobs < 1:
        raise ConfigError(f"{JOBS_ENV_VAR} must be >= 1, got {jobs}")
    return jobs


def _coerce(key: str, value: Any) -> Any:
    """Convert a YAML value into the RunConfig field type."""
    if key == "checks":
        if isinstance(value, str):
            return parse_checks(value)
        return tuple(sorted(str(v) for v in value))
    if key == "moduli":
        if isinstance(value, str):
            return parse_moduli(value)
        if isinstance(value, int):
            return (value,)
        return tuple(sorted({int(v) for v in value}))
    if key == "exclude":
        if isinstance(value, str):
            return parse_exclude(value)
        return frozenset(int(v) for v in value)
    if key == "output_format":
        return OutputFormat(value)
    if key in ("pmin", "pmax", "jobs"):
        return int(value)
    return bool(value)


def load_run_config(path: Union[str, Path], base: Optional[RunConfig] = None) -> RunConfig:
    """
    Load a YAML run preset on top of a base configuration.

    Keys match RunConfig field names; "format" is accepted for output_format.

    Raises:
        ConfigError: If the file is unreadable, not a mapping, or has bad values
    """
    try:
        with open(path) as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Failed to read config {path}: {e}") from e

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config {path} must be a mapping, got {type(data).__name__}")

    allowed = {f.name for f in fields(RunConfig)}
    updates: dict[str, Any] = {}
    for raw_key, value in data.items():
        key = "output_format" if raw_key == "format" else str(raw_key).replace("-", "_")
        if key not in allowed:
            raise ConfigError(f"Unknown config key: {raw_key}")
        try:
            updates[key] = _coerce(key, value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid value for {raw_key}: {value!r}") from e
    return replace(base or RunConfig(), **updates)

# config.py
# Run configuration: defaults, key=value files, environment and flag overrides

import logging
import os
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from errors import IoFailure, ParseError

logger = logging.getLogger(__name__)

DEFAULT_ORBIT_BUDGET = 10_000
DEFAULT_REFINEMENT_BITS = 4096
DEFAULT_EMBEDDING_BITS = 128
PRECISION_ENV_VAR = "NEGABETA_PRECISION_BITS"


def default_refinement_bits():
    """Refinement budget from the environment, falling back to the built-in default."""
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_REFINEMENT_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise ParseError(f"{PRECISION_ENV_VAR} must be an integer, got {raw!r}", key=PRECISION_ENV_VAR)
    if bits <= 0:
        raise ParseError(f"{PRECISION_ENV_VAR} must be positive, got {bits}", key=PRECISION_ENV_VAR)
    return bits


class RunConfig(BaseModel):
    """
    Settings for one command line run.

    Every field mirrors a long command line flag; dashes in flag names
    become underscores here.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    base_poly: str = "x^3-x^2-x-1"
    root_selector: Union[Literal["largest-real"], int] = "largest-real"
    sign: Literal["pos", "neg"] = "neg"
    orbit_budget: int = Field(default=DEFAULT_ORBIT_BUDGET, gt=0)
    refinement_bits: int = Field(default_factory=default_refinement_bits, gt=0)
    embedding_bits: int = Field(default=DEFAULT_EMBEDDING_BITS, gt=0)
    output: Optional[Path] = None
    output_format: Literal["json", "csv", "svg", "png"] = "json"
    log_level: str = "WARNING"
    json_logs: bool = False

    @field_validator("root_selector", mode="before")
    @classmethod
    def _parse_root_selector(cls, value):
        if isinstance(value, str) and value.strip().isdigit():
            return int(value)
        return value

    @field_validator("root_selector")
    @classmethod
    def _non_negative_index(cls, value):
        if isinstance(value, int) and value < 0:
            raise ValueError("root index must be non-negative")
        return value

    @field_validator("base_poly")
    @classmethod
    def _parseable_polynomial(cls, value):
        from utility_converter import parse_polynomial

        parse_polynomial(value)
        return value


def _normalise_key(key):
    return key.strip().lower().replace("-", "_")


def load_config(path):
    """
    Read a flat key=value configuration file.

    Args:
        path: Path to the file

    Returns:
        RunConfig with file values over the defaults
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read config file {path}: {exc}") from exc

    values = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"{path}:{line_no}: expected key=value, got {line!r}", key=line)
        key, value = line.split("=", 1)
        key = _normalise_key(key)
        if key not in RunConfig.model_fields:
            raise ParseError(f"{path}:{line_no}: unknown key {key!r}", key=key)
        values[key] = value.strip()

    logger.debug("Loaded %d settings from %s", len(values), path)
    return _build(values)


def merge_overrides(config, **flags):
    """
    Return a copy of config where every flag that is not None wins.

    Args:
        config: Base RunConfig (from defaults or a file)
        **flags: Field values from the command line

    Returns:
        New RunConfig
    """
    values = config.model_dump(exclude_unset=False)
    for key, value in flags.items():
        key = _normalise_key(key)
        if key not in RunConfig.model_fields:
            raise ParseError(f"unknown setting {key!r}", key=key)
        if value is not None:
            values[key] = value
    return _build(values)


def _build(values):
    try:
        return RunConfig(**values)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = str(first["loc"][0]) if first.get("loc") else None
        raise ParseError(f"invalid value for {key!r}: {first['msg']}", key=key) from exc

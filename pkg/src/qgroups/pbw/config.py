"""Sweep configuration: per-suite ranges loaded from YAML and validated by JSON Schema."""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import jsonschema
import yaml

logger = logging.getLogger(__name__)

_SCHEMA_PATH = Path(__file__).parent / "schema" / "sweeps.schema.json"
DEFAULT_CONFIG_PATH = Path(__file__).parent / "data" / "sweeps.yaml"

THREADS_ENV = "QGROUPS_PBW_THREADS"


@dataclass(frozen=True)
class SuiteRange:
    """Ranges for one verification suite; ``max_m`` bounds |m|."""

    max_a: int = 0
    max_b: int = 0
    max_m: int = 0
    max_k: int = 1
    order: int = 30
    p_values: tuple[int, ...] = field(default_factory=tuple)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SuiteRange:
        return cls(
            max_a=data.get("max_a", 0),
            max_b=data.get("max_b", 0),
            max_m=data.get("max_m", 0),
            max_k=data.get("max_k", 1),
            order=data.get("order", 30),
            p_values=tuple(data.get("p_values", ())),
        )

    def override(self, **values: Any) -> SuiteRange:
        """Return a copy with every non-None keyword applied."""
        return replace(self, **{k: v for k, v in values.items() if v is not None})


@dataclass(frozen=True)
class SweepConfig:
    version: str
    suites: dict[str, SuiteRange]

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SweepConfig:
        return cls(
            version=data["version"],
            suites={name: SuiteRange.from_dict(r) for name, r in data.get("suites", {}).items()},
        )

    def for_suite(self, name: str) -> SuiteRange:
        return self.suites.get(name, SuiteRange())


class ConfigValidationError(ValueError):
    """Raised when a sweep configuration fails schema validation."""

    def __init__(self, message: str, source: str, path: str = "") -> None:
        super().__init__(message)
        self.source = source
        self.path = path


class SweepConfigLoader:
    """Loads and validates sweep YAML files against sweeps.schema.json."""

    def __init__(self, schema_path: Path = _SCHEMA_PATH) -> None:
        with schema_path.open() as fh:
            self._schema: dict[str, Any] = json.load(fh)

    def load(self, path: Path = DEFAULT_CONFIG_PATH) -> SweepConfig:
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigValidationError(f"Cannot read sweep config {path}: {exc}", source=str(path)) from exc
        return self.load_from_string(text, source=str(path))

    def load_from_string(self, text: str, source: str = "<string>") -> SweepConfig:
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigValidationError(f"Malformed YAML in {source}: {exc}", source=source) from exc
        return self._parse(data, source=source)

    def _parse(self, data: Any, source: str) -> SweepConfig:
        try:
            jsonschema.validate(data, self._schema)
        except jsonschema.ValidationError as exc:
            path = " > ".join(str(p) for p in exc.absolute_path)
            raise ConfigValidationError(
                f"Invalid sweep config in {source}: {exc.message} (at {path})",
                source=source,
                path=path,
            ) from exc
        logger.debug("Loaded sweep config from %s", source)
        return SweepConfig.from_dict(data)


def threads_from_env() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        threads = int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r: not an integer", THREADS_ENV, raw)
        return 1
    return max(1, threads)

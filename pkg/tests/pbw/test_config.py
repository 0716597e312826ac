"""Tests for sweep configuration loading."""
from __future__ import annotations

from pathlib import Path

import pytest

from qgroups.pbw.config import (
    DEFAULT_CONFIG_PATH,
    THREADS_ENV,
    ConfigValidationError,
    SuiteRange,
    SweepConfigLoader,
    threads_from_env,
)

FIXTURES_DIR = Path(__file__).parent / "fixtures"


def test_default_config_loads() -> None:
    config = SweepConfigLoader().load(DEFAULT_CONFIG_PATH)
    assert config.version == "1"
    assert config.for_suite("inverse") == SuiteRange(max_a=8, max_b=8, max_m=12)
    assert config.for_suite("positivity").order == 30
    assert config.for_suite("closed-action").p_values == tuple(range(6, 13))
    assert config.for_suite("qbinom-identity").max_k == 20


def test_missing_suite_defaults() -> None:
    config = SweepConfigLoader().load(FIXTURES_DIR / "small_sweeps.yaml")
    assert config.for_suite("wall") == SuiteRange()


def test_override_ignores_none() -> None:
    r = SuiteRange(max_a=3, max_b=3, max_m=2)
    assert r.override(max_a=1, max_b=None, order=None) == SuiteRange(max_a=1, max_b=3, max_m=2)


@pytest.mark.parametrize("bad_yaml", [
    'version: "2"\nsuites: {}',
    'version: "1"',
    'version: "1"\nsuites:\n  unknown:\n    max_a: 1\n',
    'version: "1"\nsuites:\n  wall:\n    max_a: 1\n    stride: 2\n',
    'version: "1"\nsuites:\n  closed-action:\n    p_values: []\n',
])
def test_invalid_config_raises(bad_yaml: str) -> None:
    with pytest.raises(ConfigValidationError):
        SweepConfigLoader().load_from_string(bad_yaml)


def test_invalid_config_path() -> None:
    with pytest.raises(ConfigValidationError) as info:
        SweepConfigLoader().load(FIXTURES_DIR / "bad_sweeps.yaml")
    assert info.value.path == "suites > inverse > max_a"
    assert info.value.source.endswith("bad_sweeps.yaml")


def test_malformed_yaml() -> None:
    with pytest.raises(ConfigValidationError, match="Malformed YAML"):
        SweepConfigLoader().load_from_string("suites: [unclosed")


def test_missing_file() -> None:
    with pytest.raises(ConfigValidationError):
        SweepConfigLoader().load(FIXTURES_DIR / "nope.yaml")


@pytest.mark.parametrize("raw, expected", [("4", 4), ("0", 1), ("-3", 1), ("many", 1)])
def test_threads_from_env(monkeypatch: pytest.MonkeyPatch, raw: str, expected: int) -> None:
    monkeypatch.setenv(THREADS_ENV, raw)
    assert threads_from_env() == expected


def test_threads_default(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(THREADS_ENV, raising=False)
    assert threads_from_env() == 1

"""Run-wide thresholds collected in one overridable bag.

Every number that shapes a verdict lives here exactly once: the centroid
class bounds, the band-ratio class bounds, the band-edge fractions, the
checkpoint-shift threshold, the redundancy cutoff, and the separability
tolerance. A JSON file with any subset of the field names overrides the
defaults for a run.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

from .classify import (
    LHFR_HIGH_PASS_MAX,
    LHFR_LOW_PASS_MIN,
    SC_HIGH_BOUND,
    SC_LOW_BOUND,
)
from .probe import SEPARABILITY_TOLERANCE
from .spectral import HIGH_BAND_FRACTION, LOW_BAND_FRACTION


@dataclass(frozen=True, slots=True)
class RunConfig:
    sc_low_bound: float = SC_LOW_BOUND
    sc_high_bound: float = SC_HIGH_BOUND
    lhfr_low_pass_min: float = LHFR_LOW_PASS_MIN
    lhfr_high_pass_max: float = LHFR_HIGH_PASS_MAX
    low_band_fraction: float = LOW_BAND_FRACTION
    high_band_fraction: float = HIGH_BAND_FRACTION
    shift_threshold: float = 0.05
    redundancy_cutoff: float = 0.95
    separability_tolerance: float = SEPARABILITY_TOLERANCE

    def __post_init__(self):
        if not 0.0 < self.sc_low_bound < 0.5:
            raise ValueError(f"sc_low_bound {self.sc_low_bound} outside (0, 0.5)")
        if not 0.0 < self.sc_high_bound < 0.5:
            raise ValueError(f"sc_high_bound {self.sc_high_bound} outside (0, 0.5)")
        if not self.sc_low_bound < self.sc_high_bound:
            raise ValueError("sc_low_bound must be below sc_high_bound")
        if not self.lhfr_high_pass_max > 0:
            raise ValueError("lhfr_high_pass_max must be positive")
        if not self.lhfr_low_pass_min > self.lhfr_high_pass_max:
            raise ValueError("lhfr_low_pass_min must exceed lhfr_high_pass_max")
        for name in ("low_band_fraction", "high_band_fraction"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} {value} outside (0, 1)")
        if self.low_band_fraction + self.high_band_fraction > 1.0:
            raise ValueError("band fractions overlap; they must sum to at most 1")
        if self.shift_threshold < 0:
            raise ValueError("shift_threshold must be nonnegative")
        if not 0.0 < self.redundancy_cutoff <= 1.0:
            raise ValueError(
                f"redundancy_cutoff {self.redundancy_cutoff} outside (0, 1]"
            )
        if not self.separability_tolerance > 0:
            raise ValueError("separability_tolerance must be positive")


DEFAULT_CONFIG = RunConfig()

_FIELD_NAMES = {f.name for f in dataclasses.fields(RunConfig)}


def config_from_mapping(data) -> RunConfig:
    """RunConfig from a dict holding any subset of the field names."""
    if not isinstance(data, dict):
        raise ValueError(f"config must be a JSON object, got {type(data).__name__}")
    unknown = sorted(set(data) - _FIELD_NAMES)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    overrides = {}
    for key, value in data.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"config key {key!r} must be a number, got {value!r}")
        overrides[key] = float(value)
    return dataclasses.replace(DEFAULT_CONFIG, **overrides)


def load_config(path) -> RunConfig:
    """RunConfig from a JSON file of threshold overrides."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON ({exc})") from exc
    try:
        return config_from_mapping(data)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc

"""Life-size arithmetic for the drawing: spoke gaps, legibility, equipment.

This is the only module that works with approximations.  Values are
``decimal.Decimal`` at 40 significant digits (about 133 bits) and are rounded
half-even only when printed.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from pathlib import Path
from typing import Mapping

from .construction import spoke_height

__all__ = [
    "PRECISION",
    "ScaleConfig",
    "GapRow",
    "SpokeHeightRow",
    "LessonDimensions",
    "spoke_gaps",
    "lesson_dimensions",
    "quantize",
]

PRECISION = 40
CONFIG_KEYS = ("meters_per_foot", "legibility_threshold_cm")

# (n, metres) as printed for the spokes of 3, 5 and 17 feet
REFERENCE_HEIGHTS_M = ((3, Decimal("0.52")), (5, Decimal("0.65")), (17, Decimal("1.25")))
REFERENCE_TOLERANCE_M = Decimal("0.03")
# a 2-decimal reference is honestly rounded if within half a unit of its last digit
ROUNDING_HALF_UNIT_M = Decimal("0.005")


def _sqrt(n: int) -> Decimal:
    # goes through the exact surd so the decimal is a rendering of sqrt(n)
    return spoke_height(n).to_decimal(PRECISION)


def quantize(value: Decimal, places: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = PRECISION + 5
        return value.quantize(Decimal(1).scaleb(-places))


@dataclass(frozen=True)
class ScaleConfig:
    meters_per_foot: Decimal = Decimal("0.3")
    legibility_threshold_cm: Decimal = Decimal("7.5")

    def __post_init__(self) -> None:
        for key in CONFIG_KEYS:
            value = Decimal(getattr(self, key))
            if not value.is_finite() or value < 0 or (value == 0 and key == "meters_per_foot"):
                raise ValueError(f"{key} must be positive, got {value}")
            object.__setattr__(self, key, value)

    @classmethod
    def from_mapping(cls, values: Mapping[str, object]) -> "ScaleConfig":
        unknown = set(values) - set(CONFIG_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**{k: Decimal(str(v)) for k, v in values.items()})

    @classmethod
    def from_file(cls, path: str | Path) -> "ScaleConfig":
        """Read ``key = value`` lines (``#`` comments allowed, no sections)."""
        parser = configparser.ConfigParser()
        parser.read_string("[scale]\n" + Path(path).read_text(encoding="utf-8"))
        return cls.from_mapping(dict(parser["scale"]))


@dataclass(frozen=True)
class GapRow:
    n_low: int
    n_high: int
    gap_feet: Decimal
    gap_cm: Decimal
    legible: bool

    def to_dict(self, places: int = 12) -> dict:
        return {
            "n_low": self.n_low,
            "n_high": self.n_high,
            "gap_feet": str(quantize(self.gap_feet, places)),
            "gap_cm": str(quantize(self.gap_cm, places)),
            "legible": self.legible,
        }


def spoke_gaps(max_odd: int = 17, cfg: ScaleConfig | None = None) -> list[GapRow]:
    """Distance along QT between the crossings of consecutive arcs."""
    cfg = cfg or ScaleConfig()
    if max_odd < 5 or max_odd % 2 == 0:
        raise ValueError(f"max_odd must be odd and >= 5, got {max_odd}")
    rows = []
    with localcontext() as ctx:
        ctx.prec = PRECISION
        for n in range(3, max_odd - 1, 2):
            gap = _sqrt(n + 2) - _sqrt(n)
            cm = gap * cfg.meters_per_foot * 100
            rows.append(GapRow(n, n + 2, gap, cm, cm >= cfg.legibility_threshold_cm))
    return rows


@dataclass(frozen=True)
class SpokeHeightRow:
    n: int
    feet: Decimal
    meters: Decimal
    reference_m: Decimal | None = None

    @property
    def discrepancy_m(self) -> Decimal | None:
        if self.reference_m is None:
            return None
        return abs(self.meters - self.reference_m)

    @property
    def within_tolerance(self) -> bool | None:
        d = self.discrepancy_m
        return None if d is None else d <= REFERENCE_TOLERANCE_M

    @property
    def loosely_rounded(self) -> bool | None:
        """True when the printed reference is off by more than its own rounding."""
        d = self.discrepancy_m
        return None if d is None else d > ROUNDING_HALF_UNIT_M

    def to_dict(self) -> dict:
        d = self.discrepancy_m
        return {
            "n": self.n,
            "feet": str(quantize(self.feet, 6)),
            "meters": str(quantize(self.meters, 4)),
            "reference_m": None if self.reference_m is None else str(self.reference_m),
            "discrepancy_m": None if d is None else str(quantize(d, 4)),
            "within_tolerance": self.within_tolerance,
            "loosely_rounded": self.loosely_rounded,
        }


@dataclass(frozen=True)
class LessonDimensions:
    cord_feet: int
    cord_meters: Decimal
    baseline_feet: int
    tallest_spoke_feet: Decimal
    tallest_spoke_meters: Decimal
    spoke_heights: tuple[SpokeHeightRow, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "cord_feet": self.cord_feet,
            "cord_meters": str(self.cord_meters),
            "baseline_feet": self.baseline_feet,
            "tallest_spoke_feet": str(quantize(self.tallest_spoke_feet, 6)),
            "tallest_spoke_meters": str(quantize(self.tallest_spoke_meters, 4)),
            "reference_tolerance_m": str(REFERENCE_TOLERANCE_M),
            "spoke_heights": [row.to_dict() for row in self.spoke_heights],
        }


def lesson_dimensions(cfg: ScaleConfig | None = None, max_odd: int = 17) -> LessonDimensions:
    """Cord length, baseline length and spoke heights at real scale.

    The cord must reach the radius of the largest circle, (max_odd + 1)/2
    feet, which is also how far the baseline is marked.
    """
    cfg = cfg or ScaleConfig()
    if max_odd < 3 or max_odd % 2 == 0:
        raise ValueError(f"max_odd must be odd and >= 3, got {max_odd}")
    reach = (max_odd + 1) // 2
    refs = dict(REFERENCE_HEIGHTS_M) if max_odd == 17 else {}
    with localcontext() as ctx:
        ctx.prec = PRECISION
        heights = tuple(
            SpokeHeightRow(n, _sqrt(n), _sqrt(n) * cfg.meters_per_foot, refs.get(n))
            for n in sorted({3, 5, max_odd})
        )
        tallest = _sqrt(max_odd)
        return LessonDimensions(
            cord_feet=reach,
            cord_meters=reach * cfg.meters_per_foot,
            baseline_feet=reach,
            tallest_spoke_feet=tallest,
            tallest_spoke_meters=tallest * cfg.meters_per_foot,
            spoke_heights=heights,
        )

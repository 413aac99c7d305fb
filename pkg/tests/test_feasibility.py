from decimal import Decimal

import mpmath
import pytest

from theodorus.feasibility import (
    PRECISION,
    ScaleConfig,
    lesson_dimensions,
    quantize,
    spoke_gaps,
)


def _mp_gap(n):
    with mpmath.workdps(60):
        return mpmath.sqrt(n + 2) - mpmath.sqrt(n)


def test_gaps_against_mpmath():
    rows = spoke_gaps(99)
    for row in rows:
        expected = _mp_gap(row.n_low)
        assert abs(float(row.gap_feet - Decimal(str(expected)))) < 1e-12
        with mpmath.workdps(60):
            cm = expected * mpmath.mpf("0.3") * 100
        assert abs(float(row.gap_cm - Decimal(str(cm)))) < 1e-12


def test_gaps_shrink_monotonically():
    rows = spoke_gaps(99)
    assert all(a.gap_feet > b.gap_feet for a, b in zip(rows, rows[1:]))


def test_minimum_gap_is_the_last_pair():
    rows = spoke_gaps()
    smallest = min(rows, key=lambda r: r.gap_feet)
    assert (smallest.n_low, smallest.n_high) == (15, 17)
    assert str(quantize(smallest.gap_feet, 4)) == "0.2501"
    assert Decimal("7.1") <= smallest.gap_cm <= Decimal("8.1")
    assert smallest.legible  # 7.5037 cm clears the 7.5 cm default


def test_gap_cm_linear_in_scale():
    base = spoke_gaps(cfg=ScaleConfig(Decimal("0.3")))
    double = spoke_gaps(cfg=ScaleConfig(Decimal("0.6")))
    for a, b in zip(base, double):
        assert abs(b.gap_cm - 2 * a.gap_cm) < Decimal("1e-20")  # test-side math runs at 28 digits
        assert a.gap_feet == b.gap_feet


def test_threshold_zero_makes_everything_legible():
    rows = spoke_gaps(cfg=ScaleConfig(legibility_threshold_cm=Decimal(0)))
    assert all(r.legible for r in rows)


def test_threshold_above_gap_flags_illegible():
    rows = spoke_gaps(cfg=ScaleConfig(legibility_threshold_cm=Decimal("8")))
    assert [r.legible for r in rows][-1] is False


@pytest.mark.parametrize("kwargs", [{"meters_per_foot": 0}, {"meters_per_foot": -1}, {"legibility_threshold_cm": -1}])
def test_scale_config_rejects(kwargs):
    with pytest.raises(ValueError):
        ScaleConfig(**{k: Decimal(v) for k, v in kwargs.items()})


def test_gaps_reject_bad_max_odd():
    with pytest.raises(ValueError):
        spoke_gaps(3)
    with pytest.raises(ValueError):
        spoke_gaps(18)


def test_lesson_dimensions_defaults():
    dims = lesson_dimensions()
    assert dims.cord_feet == 9 and dims.baseline_feet == 9
    assert dims.cord_meters == Decimal("2.7")
    heights = {row.n: row for row in dims.spoke_heights}
    assert set(heights) == {3, 5, 17}
    for n, row in heights.items():
        assert row.within_tolerance
        with mpmath.workdps(50):
            expected = mpmath.sqrt(n) * mpmath.mpf("0.3")
        assert abs(float(row.meters) - float(expected)) < 1e-12
    assert not heights[3].loosely_rounded
    assert heights[5].loosely_rounded
    assert str(quantize(heights[5].discrepancy_m, 3)) == "0.021"


def test_lesson_dimensions_other_sizes():
    dims = lesson_dimensions(max_odd=9)
    assert dims.cord_feet == 5
    assert all(row.reference_m is None and row.within_tolerance is None for row in dims.spoke_heights)
    with pytest.raises(ValueError):
        lesson_dimensions(max_odd=10)


def test_config_file(tmp_path):
    path = tmp_path / "scale.cfg"
    path.write_text("# local feet\nmeters_per_foot = 0.296\nlegibility_threshold_cm = 5\n", encoding="utf-8")
    cfg = ScaleConfig.from_file(path)
    assert cfg.meters_per_foot == Decimal("0.296")
    assert cfg.legibility_threshold_cm == Decimal(5)
    path.write_text("colour = red\n", encoding="utf-8")
    with pytest.raises(ValueError):
        ScaleConfig.from_file(path)


def test_serialization_is_rounded_half_even():
    row = spoke_gaps()[-1].to_dict(places=6)
    assert row == {"n_low": 15, "n_high": 17, "gap_feet": "0.250122", "gap_cm": "7.503668", "legible": True}
    assert PRECISION >= 40

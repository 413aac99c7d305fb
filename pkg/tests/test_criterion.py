import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from theodorus.criterion import (
    LESSON_SEQUENCE,
    Mode,
    Outcome,
    RemainderReport,
    Verdict,
    decide_sqrt,
    even_reduce,
    gnomon_decompose,
    lesson_table,
    multiple_decompose,
    oracle_sweep,
    oracle_sweep_batch,
    remainder_theorem_check,
    theodorus_verdict,
    theon_sequence,
)

LESSON, ORACLE = Mode.LESSON_FAITHFUL, Mode.FULL_ORACLE


def is_square(n):
    return math.isqrt(n) ** 2 == n


# --- remainder result -----------------------------------------------------


@pytest.mark.parametrize("bound", [1, 9, 10**5])
def test_remainder_theorem_verified(bound, backend):
    report = remainder_theorem_check(bound, backend=backend)
    assert report.verified and report.counterexample is None


def test_remainder_theorem_chunks_merge():
    parts = [remainder_theorem_check(hi, start=lo) for lo, hi in [(1, 999), (1000, 5000), (5001, 10**4)]]
    merged = parts[0].merge(parts[1]).merge(parts[2])
    assert merged == RemainderReport(1, 10**4, True, None)
    with pytest.raises(ValueError):
        parts[0].merge(parts[2])


def test_remainder_theorem_beyond_int64_kernel_range():
    big = 3_037_000_499
    report = remainder_theorem_check(big + 20, start=big - 20)
    assert report.verified


def test_remainder_rejects_zero_bound():
    with pytest.raises(ValueError):
        remainder_theorem_check(0)


# --- gnomon ----------------------------------------------------------------


@pytest.mark.parametrize("k, side, rect_area", [(1, 3, 8), (0, 1, 0), (4, 9, 80)])
def test_gnomon_examples(k, side, rect_area):
    g = gnomon_decompose(k)
    assert g.square_side == side
    assert g.rectangles_area == rect_area
    assert g.rectangle_sides == (k + 1, k)
    assert g.rectangle_count == 4 and g.unit_count == 1


def test_gnomon_invariants_up_to_ten_thousand():
    for k in range(10**4 + 1):
        g = gnomon_decompose(k)
        assert 4 * k * (k + 1) + 1 == (2 * k + 1) ** 2
        assert g.area_identity_holds() and g.multiple_of_eight()
        assert g.even_side % 2 == 0 and g.even_side in (k, k + 1)


# --- multiples --------------------------------------------------------------


@pytest.mark.parametrize(
    "m, q, eights, units",
    [(17, 1, 2, 1), (3, 1, 0, 3), (3, 3, 3, 3), (9, 5, 28, 1), (1, 1, 0, 1)],
)
def test_multiple_decompose_examples(m, q, eights, units):
    d = multiple_decompose(m, q)
    assert (d.eights, d.units) == (eights, units)


def test_multiple_decompose_random_pairs():
    rng = random.Random(20261015)
    for _ in range(500):
        m = 2 * rng.randrange(0, 5000) + 1
        q = 2 * rng.randrange(0, 5000) + 1
        d = multiple_decompose(m, q)
        assert d.units == m % 8
        # independent route: plain multiplication then division by 8
        assert divmod(m * q * q, 8) == (d.eights, d.units)


@pytest.mark.parametrize("m, q", [(2, 3), (3, 2), (4, 4)])
def test_multiple_decompose_rejects_even(m, q):
    with pytest.raises(ValueError):
        multiple_decompose(m, q)


# --- verdicts -----------------------------------------------------------------


@pytest.mark.parametrize(
    "n, label",
    [
        (3, "IrrationalByResidue(3)"),
        (9, "RationalPerfectSquare(3)"),
        (17, "InconclusiveByCriterion"),
        (15, "IrrationalByResidue(7)"),
        (13, "IrrationalByResidue(5)"),
        (25, "RationalPerfectSquare(5)"),
    ],
)
def test_theodorus_verdict_examples(n, label):
    assert theodorus_verdict(n).label == label


@pytest.mark.parametrize("n", [1, 2, 4, 18])
def test_theodorus_verdict_rejects(n):
    with pytest.raises(ValueError):
        theodorus_verdict(n)


def test_even_reduce_examples():
    assert even_reduce(2).outcome is Outcome.IRRATIONAL_BY_EVEN_REDUCTION
    assert even_reduce(6).outcome is Outcome.IRRATIONAL_BY_EVEN_REDUCTION
    v = even_reduce(12)
    assert v.outcome is Outcome.REDUCED_TO_ODD and (v.core, v.multiplier) == (3, 2)
    assert v.label == "ReducedToOdd(3, 2)"
    with pytest.raises(ValueError):
        even_reduce(7)


def test_even_reduce_structure():
    for n in range(2, 5000, 2):
        v = even_reduce(n)
        if v.outcome is Outcome.REDUCED_TO_ODD:
            assert v.core % 2 == 1 and v.multiplier**2 * v.core == n


@pytest.mark.parametrize(
    "n, mode, label",
    [
        (17, LESSON, "InconclusiveByCriterion"),
        (17, ORACLE, "IrrationalNonSquareResidueOne"),
        (1, LESSON, "RationalPerfectSquare(1)"),
        (1, ORACLE, "RationalPerfectSquare(1)"),
        (33, ORACLE, "IrrationalNonSquareResidueOne"),
        (12, ORACLE, "IrrationalByResidue(3)"),
        (36, ORACLE, "RationalPerfectSquare(6)"),
        (4, LESSON, "RationalPerfectSquare(2)"),
        (68, LESSON, "InconclusiveByCriterion"),
    ],
)
def test_decide_sqrt_examples(n, mode, label):
    assert decide_sqrt(n, mode).label == label


def test_decide_sqrt_reports_reduction():
    v = decide_sqrt(12, ORACLE)
    assert (v.n, v.core, v.multiplier) == (12, 3, 2)
    assert v.to_dict() == {
        "n": 12,
        "outcome": "IrrationalByResidue(3)",
        "evidence": {"residue_mod_8": 3, "core": 3, "multiplier": 2},
        "mode": "oracle",
    }


def test_decide_sqrt_rejects_zero():
    with pytest.raises(ValueError):
        decide_sqrt(0)


def test_verdict_invariants_enforced():
    with pytest.raises(ValueError):
        Verdict(9, Outcome.IRRATIONAL_BY_RESIDUE, residue=1)
    with pytest.raises(ValueError):
        Verdict(10, Outcome.RATIONAL_PERFECT_SQUARE, root=3)


def test_criterion_never_lies():
    for n in range(3, 10**5, 2):
        v = theodorus_verdict(n)
        if v.outcome is Outcome.IRRATIONAL_BY_RESIDUE:
            assert not is_square(n)


def test_lesson_and_oracle_modes_differ_only_on_residue_one_nonsquares():
    for n in range(1, 20001):
        lesson, oracle = decide_sqrt(n, LESSON), decide_sqrt(n, ORACLE)
        if lesson.outcome is Outcome.INCONCLUSIVE_BY_CRITERION:
            odd_core = n
            while odd_core % 2 == 0:
                odd_core //= 2
            assert odd_core % 8 == 1 and not is_square(odd_core)
            assert oracle.outcome is Outcome.IRRATIONAL_NONSQUARE_RESIDUE_ONE
        else:
            assert lesson.label == oracle.label


@given(st.integers(min_value=1, max_value=10**30))
def test_decide_sqrt_big_inputs(n):
    assert decide_sqrt(n, ORACLE).is_rational == is_square(n)


def test_lesson_table():
    rows = lesson_table()
    assert [v.n for v in rows] == list(LESSON_SEQUENCE)
    assert len(rows) == 8
    assert rows[3].label == "RationalPerfectSquare(3)"
    assert rows[5].label == "IrrationalByResidue(5)"
    assert all(v.mode is LESSON for v in rows)


# --- Theon --------------------------------------------------------------------


def test_theon_sequence():
    rows = theon_sequence(9)
    assert rows[0].square == 1
    assert rows[1].square == 9 and rows[1].odd_pair_sum == 8
    assert (rows[4].odd_pair_sum, rows[4].square) == (32, 81)
    assert [r.square for r in rows] == [(2 * i + 1) ** 2 for i in range(9)]
    assert all(b.square - a.square == b.odd_pair_sum for a, b in zip(rows, rows[1:]))
    assert all(r.odd_pair_sum % 8 == 0 for r in rows[1:])
    with pytest.raises(ValueError):
        theon_sequence(0)


# --- sweeps -------------------------------------------------------------------


def test_scalar_sweep_chunks_merge():
    a = oracle_sweep(1, 5000)
    b = oracle_sweep(5001, 12000)
    merged = a.merge(b)
    whole = oracle_sweep(1, 12000)
    assert merged.ok and merged.checked == 12000
    assert merged.counts == whole.counts


@pytest.mark.parametrize("mode", [LESSON, ORACLE])
def test_batch_sweep_matches_scalar_pipeline(mode, backend):
    import numpy as np

    from theodorus import _accel

    ns = np.arange(1, 30001)
    codes, values = _accel.classify_array(ns, mode is ORACLE, backend)
    for n, code, value in zip(ns.tolist(), codes.tolist(), values.tolist()):
        v = decide_sqrt(n, mode)
        assert v.outcome == code, n
        if v.outcome is Outcome.IRRATIONAL_BY_RESIDUE:
            assert value == v.residue
        if v.outcome is Outcome.RATIONAL_PERFECT_SQUARE:
            assert value == v.root
    batch = oracle_sweep_batch(1, 30000, mode, backend)
    assert batch.ok and batch.counts == oracle_sweep(1, 30000, mode).counts

from fractions import Fraction

import pytest

from theodorus.construction import (
    BASELINE_LABELS,
    ExactCircle,
    build_figure,
    figure_from_dict,
    mean_proportional_check,
    on_circle,
    point,
    right_angle_check,
    spoke_height,
)
from theodorus.numeris import QuadraticSurd, surd_normalize

ONE = QuadraticSurd.rational(1)


@pytest.mark.parametrize("n, text", [(3, "√3"), (9, "3"), (12, "2√3"), (1, "1"), (17, "√17")])
def test_spoke_height_examples(n, text):
    assert str(spoke_height(n)) == text


def test_spoke_height_squares_back_for_odd_n():
    for n in range(1, 100, 2):
        h = spoke_height(n)
        assert h.square() == QuadraticSurd.rational(n)
        assert h.sign() > 0


def test_spoke_height_independent_route():
    # pythagoras in the right triangle with legs 1 and h against hypotenuse P..top:
    # |P top|^2 = 1 + n and |top far|^2 = n^2 + n, which sum to (1+n)^2
    for n in range(1, 100):
        h = spoke_height(n)
        top = point(1, h)
        far = point(1 + n, 0)
        p = point(0, 0)
        dx, dy = top - p
        ex, ey = top - far
        assert dx * dx + dy * dy == QuadraticSurd.rational(1 + n)
        assert ex * ex + ey * ey == QuadraticSurd.rational(n * n + n)


def test_spoke_height_rejects_zero():
    with pytest.raises(ValueError):
        spoke_height(0)


@pytest.mark.parametrize("n, mark", [(3, "C"), (5, "E")])
def test_right_angle_at_spoke_tops(n, mark):
    fig = build_figure()
    far = fig.baseline_marks[BASELINE_LABELS.index(mark)]
    assert far == point(1 + n, 0)
    top = point(1, spoke_height(n))
    assert right_angle_check(point(0, 0), top, far)


def test_right_angle_negatives():
    top = point(1, spoke_height(3))
    assert not right_angle_check(point(0, 0), top, point(5, 0))
    assert not right_angle_check(point(0, 0), point(1, 1), point(2, 1))
    assert right_angle_check(point(1, 0), point(0, 0), point(0, surd_normalize(1, 7)))
    with pytest.raises(ValueError):
        right_angle_check(top, top, point(4, 0))


def test_thales_on_every_semicircle():
    fig = build_figure(99)
    for spoke, circle in zip(fig.spokes, fig.arcs):
        assert on_circle(spoke.top, circle)
        assert on_circle(point(0, 0), circle) and on_circle(spoke.far_point, circle)
        assert not on_circle(point(1, spoke.top.y + ONE), circle)


def test_mean_proportional_for_lesson_spokes():
    for n in range(3, 18, 2):
        assert mean_proportional_check(1, n, spoke_height(n))
    assert not mean_proportional_check(1, 3, surd_normalize(1, 2))
    assert mean_proportional_check(Fraction(1, 2), 8, 2)
    with pytest.raises(ValueError):
        mean_proportional_check(0, 3, 1)


def test_circle_requires_positive_radius():
    with pytest.raises(ValueError):
        ExactCircle(point(0, 0), QuadraticSurd.rational(0))


def test_default_figure_layout():
    fig = build_figure()
    assert fig.sequence == (3, 5, 7, 9, 11, 13, 15, 17)
    assert len(fig.arcs) == 8 and len(fig.spokes) == 8
    assert len(fig.baseline_marks) == 10
    assert [fig.mark_label(i) for i in range(10)] == list(BASELINE_LABELS)
    assert {s.foot for s in fig.spokes} == {point(1, 0)}
    assert {s.n: s.label for s in fig.spokes if s.label} == {3: "U", 5: "V", 17: "W"}
    drawn = {s.n for s in fig.spokes if s.far_point_drawn}
    assert drawn == {3, 5, 7}
    assert fig.arcs[-1].radius == QuadraticSurd.rational(9)


def test_small_figure():
    fig = build_figure(3)
    assert fig.sequence == (3,) and len(fig.baseline_marks) == 3
    with pytest.raises(ValueError):
        build_figure(4)
    with pytest.raises(ValueError):
        build_figure(1)


def test_json_round_trip():
    fig = build_figure()
    d = fig.to_dict()
    assert figure_from_dict(d) == fig
    top = d["spokes"][0]["top"]
    assert top["y"] == "√3" and top["approx"]["approximate_only"] is True

"""Exact ruler-and-compass kernel for the drawing on the ground.

Frame: P at the origin, the baseline along +x, Q = (1, 0), the spoke line
QT vertical through Q.  The square root of an odd n is built as the height
at Q of the semicircle on the diameter from P to the far point (1 + n, 0).
All coordinates are :class:`QuadraticSurd` values; floats appear only in the
``approx`` fields of the serialized form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .numeris import QuadraticSurd, _natural, parse_surd, surd_compare, surd_sqrt

__all__ = [
    "ExactPoint",
    "ExactCircle",
    "Spoke",
    "TheodorusFigure",
    "BASELINE_LABELS",
    "point",
    "spoke_height",
    "right_angle_check",
    "mean_proportional_check",
    "on_circle",
    "build_figure",
    "figure_from_dict",
]

Coordinate = Union[int, Fraction, QuadraticSurd]

# baseline marks 0..9 feet
BASELINE_LABELS = ("P", "Q", "A", "B", "C", "D", "E", "F", "G", "H")
SPOKE_LABELS = {3: "U", 5: "V", 17: "W"}


def _surd(value: Coordinate) -> QuadraticSurd:
    if isinstance(value, QuadraticSurd):
        return value
    return QuadraticSurd.rational(value)


@dataclass(frozen=True)
class ExactPoint:
    x: QuadraticSurd
    y: QuadraticSurd

    def __sub__(self, other: "ExactPoint") -> tuple[QuadraticSurd, QuadraticSurd]:
        return self.x - other.x, self.y - other.y

    def to_dict(self) -> dict:
        return {
            "x": str(self.x),
            "y": str(self.y),
            "approx": {"x": float(self.x), "y": float(self.y), "approximate_only": True},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExactPoint":
        return cls(parse_surd(data["x"]), parse_surd(data["y"]))


def point(x: Coordinate, y: Coordinate) -> ExactPoint:
    return ExactPoint(_surd(x), _surd(y))


@dataclass(frozen=True)
class ExactCircle:
    center: ExactPoint
    radius: QuadraticSurd

    def __post_init__(self) -> None:
        if self.radius.sign() <= 0:
            raise ValueError("circle radius must be positive")


def _squared_distance(a: ExactPoint, b: ExactPoint) -> QuadraticSurd:
    dx, dy = a - b
    return dx * dx + dy * dy


def on_circle(p: ExactPoint, circle: ExactCircle) -> bool:
    """Exact incidence test: |p - center|**2 == radius**2."""
    return surd_compare(_squared_distance(p, circle.center), circle.radius.square()) == 0


def _dot_is_zero(u: tuple[QuadraticSurd, QuadraticSurd], v: tuple[QuadraticSurd, QuadraticSurd]) -> bool:
    # the two products may sit in different quadratic fields, so compare
    # one against the negation of the other instead of adding them
    return surd_compare(u[0] * v[0], -(u[1] * v[1])) == 0


def right_angle_check(a: ExactPoint, vertex: ExactPoint, b: ExactPoint) -> bool:
    """True iff the angle a-vertex-b is exactly right."""
    if a == vertex or b == vertex:
        raise ValueError("right_angle_check needs both endpoints distinct from the vertex")
    return _dot_is_zero(a - vertex, b - vertex)


def mean_proportional_check(oh: Coordinate, hb: Coordinate, hd: Coordinate) -> bool:
    """True iff the square on ``hd`` equals the rectangle on ``oh`` and ``hb``."""
    oh, hb, hd = _surd(oh), _surd(hb), _surd(hd)
    if min(oh.sign(), hb.sign(), hd.sign()) <= 0:
        raise ValueError("mean proportional needs positive lengths")
    return surd_compare(hd.square(), oh * hb) == 0


def _semicircle(n: int) -> ExactCircle:
    half = Fraction(1 + n, 2)
    return ExactCircle(point(half, 0), QuadraticSurd.rational(half))


def spoke_height(n: int) -> QuadraticSurd:
    """Height at x = 1 of the circle through P and (1 + n, 0); equals sqrt(n)."""
    _natural(n)
    if n < 1:
        raise ValueError("spoke_height needs n >= 1")
    circle = _semicircle(n)
    offset = circle.center.x.rat - 1
    return surd_sqrt(circle.radius.rat**2 - offset**2)


@dataclass(frozen=True)
class Spoke:
    n: int
    foot: ExactPoint
    top: ExactPoint
    far_point: ExactPoint
    far_point_drawn: bool
    label: str | None = None


@dataclass(frozen=True)
class TheodorusFigure:
    max_odd: int
    baseline_marks: tuple[ExactPoint, ...]
    arcs: tuple[ExactCircle, ...]
    spokes: tuple[Spoke, ...]

    @property
    def sequence(self) -> tuple[int, ...]:
        return tuple(s.n for s in self.spokes)

    def mark_label(self, index: int) -> str | None:
        return BASELINE_LABELS[index] if index < len(BASELINE_LABELS) else None

    def to_dict(self) -> dict:
        return {
            "max_odd": self.max_odd,
            "baseline_marks": [p.to_dict() for p in self.baseline_marks],
            "arcs": [
                {"n": s.n, "center": c.center.to_dict(), "radius": str(c.radius)}
                for s, c in zip(self.spokes, self.arcs)
            ],
            "spokes": [
                {
                    "n": s.n,
                    "label": s.label,
                    "foot": s.foot.to_dict(),
                    "top": s.top.to_dict(),
                    "far_point": s.far_point.to_dict(),
                    "far_point_drawn": s.far_point_drawn,
                }
                for s in self.spokes
            ],
        }


def figure_from_dict(data: dict) -> TheodorusFigure:
    return TheodorusFigure(
        max_odd=data["max_odd"],
        baseline_marks=tuple(ExactPoint.from_dict(p) for p in data["baseline_marks"]),
        arcs=tuple(
            ExactCircle(ExactPoint.from_dict(a["center"]), parse_surd(a["radius"]))
            for a in data["arcs"]
        ),
        spokes=tuple(
            Spoke(
                n=s["n"],
                foot=ExactPoint.from_dict(s["foot"]),
                top=ExactPoint.from_dict(s["top"]),
                far_point=ExactPoint.from_dict(s["far_point"]),
                far_point_drawn=s["far_point_drawn"],
                label=s["label"],
            )
            for s in data["spokes"]
        ),
    )


def build_figure(max_odd: int = 17) -> TheodorusFigure:
    """Baseline marks, one semicircle and one spoke for each odd n in 3..max_odd.

    Marks run from P to the center of the last circle, (max_odd + 1)/2 feet;
    the far points beyond that are kept for verification but flagged as not
    drawn (for 17 this is H').
    """
    _natural(max_odd, "max_odd")
    if max_odd < 3 or max_odd % 2 == 0:
        raise ValueError(f"max_odd must be odd and >= 3, got {max_odd}")
    last_mark = (max_odd + 1) // 2
    marks = tuple(point(i, 0) for i in range(last_mark + 1))
    foot = point(1, 0)
    arcs, spokes = [], []
    for n in range(3, max_odd + 1, 2):
        circle = _semicircle(n)
        height = spoke_height(n)
        top = ExactPoint(QuadraticSurd.rational(1), height)
        if not (
            mean_proportional_check(1, n, height)
            and on_circle(top, circle)
            and right_angle_check(marks[0], top, point(1 + n, 0))
        ):
            raise ArithmeticError(f"construction for n={n} failed its exact checks")
        arcs.append(circle)
        spokes.append(
            Spoke(
                n=n,
                foot=foot,
                top=top,
                far_point=point(1 + n, 0),
                far_point_drawn=1 + n <= last_mark,
                label=SPOKE_LABELS.get(n),
            )
        )
    return TheodorusFigure(max_odd, marks, tuple(arcs), tuple(spokes))

"""The mod-8 irrationality criterion and the decision pipeline built on it.

An odd square always leaves remainder 1 on division by 8.  So if ``n`` is odd
and ``sqrt(n) = p/q`` with ``p``, ``q`` odd, then ``n*q*q = p*p`` forces
``n % 8 == 1``.  Residues 3, 5 and 7 therefore settle irrationality at once,
residue 1 only says "perhaps", and even ``n`` reduce to their odd part by
counting factors of two.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum, IntEnum
from typing import Iterable

import numpy as np

from . import _accel
from .numeris import _natural, isqrt

__all__ = [
    "LESSON_SEQUENCE",
    "Mode",
    "Outcome",
    "Verdict",
    "GnomonDecomposition",
    "MultipleDecomposition",
    "TheonRow",
    "RemainderReport",
    "OracleSweepReport",
    "remainder_theorem_check",
    "gnomon_decompose",
    "multiple_decompose",
    "theodorus_verdict",
    "even_reduce",
    "decide_sqrt",
    "lesson_table",
    "theon_sequence",
    "oracle_sweep",
    "oracle_sweep_batch",
    "verdicts",
]

LESSON_SEQUENCE = (3, 5, 7, 9, 11, 13, 15, 17)


class Mode(str, Enum):
    LESSON_FAITHFUL = "lesson"
    FULL_ORACLE = "oracle"


class Outcome(IntEnum):
    IRRATIONAL_BY_RESIDUE = _accel.IRRATIONAL_BY_RESIDUE
    RATIONAL_PERFECT_SQUARE = _accel.RATIONAL_PERFECT_SQUARE
    IRRATIONAL_NONSQUARE_RESIDUE_ONE = _accel.IRRATIONAL_NONSQUARE_RESIDUE_ONE
    INCONCLUSIVE_BY_CRITERION = _accel.INCONCLUSIVE_BY_CRITERION
    IRRATIONAL_BY_EVEN_REDUCTION = _accel.IRRATIONAL_BY_EVEN_REDUCTION
    REDUCED_TO_ODD = _accel.REDUCED_TO_ODD

    @property
    def title(self) -> str:
        return _TITLES[self]


_TITLES = {
    Outcome.IRRATIONAL_BY_RESIDUE: "IrrationalByResidue",
    Outcome.RATIONAL_PERFECT_SQUARE: "RationalPerfectSquare",
    Outcome.IRRATIONAL_NONSQUARE_RESIDUE_ONE: "IrrationalNonSquareResidueOne",
    Outcome.INCONCLUSIVE_BY_CRITERION: "InconclusiveByCriterion",
    Outcome.IRRATIONAL_BY_EVEN_REDUCTION: "IrrationalByEvenReduction",
    Outcome.REDUCED_TO_ODD: "ReducedToOdd",
}


@dataclass(frozen=True)
class Verdict:
    """Outcome of an irrationality decision for ``sqrt(n)`` plus its evidence.

    ``residue`` accompanies IrrationalByResidue, ``root`` accompanies
    RationalPerfectSquare.  ``core``/``multiplier`` record an even reduction
    ``n = multiplier**2 * core`` when one took place.
    """

    n: int
    outcome: Outcome
    residue: int | None = None
    root: int | None = None
    core: int | None = None
    multiplier: int | None = None
    mode: Mode | None = None

    def __post_init__(self) -> None:
        if self.outcome is Outcome.IRRATIONAL_BY_RESIDUE and self.residue not in (3, 5, 7):
            raise ValueError(f"IrrationalByResidue needs residue in 3, 5, 7; got {self.residue}")
        if self.outcome is Outcome.RATIONAL_PERFECT_SQUARE and (
            self.root is None or self.root * self.root != self.n
        ):
            raise ValueError(f"RationalPerfectSquare root {self.root} does not square to {self.n}")

    @property
    def label(self) -> str:
        o = self.outcome
        if o is Outcome.IRRATIONAL_BY_RESIDUE:
            return f"{o.title}({self.residue})"
        if o is Outcome.RATIONAL_PERFECT_SQUARE:
            return f"{o.title}({self.root})"
        if o is Outcome.REDUCED_TO_ODD:
            return f"{o.title}({self.core}, {self.multiplier})"
        return o.title

    @property
    def is_rational(self) -> bool | None:
        """True/False when decided, None when the criterion alone is silent."""
        if self.outcome is Outcome.RATIONAL_PERFECT_SQUARE:
            return True
        if self.outcome in (Outcome.INCONCLUSIVE_BY_CRITERION, Outcome.REDUCED_TO_ODD):
            return None
        return False

    def evidence(self) -> dict:
        ev: dict = {}
        if self.residue is not None:
            ev["residue_mod_8"] = self.residue
        if self.root is not None:
            ev["root"] = self.root
        if self.core is not None:
            ev["core"] = self.core
            ev["multiplier"] = self.multiplier
        return ev

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "outcome": self.label,
            "evidence": self.evidence(),
            "mode": self.mode.value if self.mode else None,
        }


# --- remainder result ----------------------------------------------------


@dataclass(frozen=True)
class RemainderReport:
    lo: int
    hi: int
    verified: bool
    counterexample: int | None = None

    def merge(self, other: "RemainderReport") -> "RemainderReport":
        if other.lo != self.hi + 1 and self.lo != other.hi + 1:
            raise ValueError("reports must cover adjacent ranges")
        first, second = sorted((self, other), key=lambda r: r.lo)
        cex = first.counterexample if first.counterexample is not None else second.counterexample
        return RemainderReport(first.lo, second.hi, first.verified and second.verified, cex)


def remainder_theorem_check(
    bound: int, start: int = 1, backend: str | None = None
) -> RemainderReport:
    """Check ``q*q % 8 == 1`` for every odd ``q`` in ``[start, bound]``.

    Ranges can be split and the partial reports combined with
    :meth:`RemainderReport.merge`.
    """
    _natural(bound, "bound")
    if bound < 1 or start < 1:
        raise ValueError("bound and start must be >= 1")
    if bound < _accel.MAX_SAFE_SQUARE_ROOT:
        cex = _accel.odd_square_counterexample(start, bound, backend) or None
    else:
        cex = next(
            (q for q in range(start | 1, bound + 1, 2) if q * q % 8 != 1), None
        )
    return RemainderReport(start, bound, cex is None, cex)


@dataclass(frozen=True)
class GnomonDecomposition:
    """An odd square of side ``2k+1`` cut into four ``(k+1) x k`` rectangles and a unit."""

    k: int
    square_side: int
    rectangle_sides: tuple[int, int]
    even_side: int
    rectangle_count: int = 4
    unit_count: int = 1

    @property
    def rectangles_area(self) -> int:
        return self.rectangle_count * self.rectangle_sides[0] * self.rectangle_sides[1]

    @property
    def eights(self) -> int:
        """Number of 8-wide columns the four rectangles rearrange into."""
        return self.rectangles_area // 8

    def area_identity_holds(self) -> bool:
        return self.rectangles_area + self.unit_count == self.square_side**2

    def multiple_of_eight(self) -> bool:
        return self.rectangles_area % 8 == 0


def gnomon_decompose(k: int) -> GnomonDecomposition:
    _natural(k, "k")
    return GnomonDecomposition(
        k=k,
        square_side=2 * k + 1,
        rectangle_sides=(k + 1, k),
        even_side=k if k % 2 == 0 else k + 1,
    )


@dataclass(frozen=True)
class MultipleDecomposition:
    m: int
    q: int
    eights: int
    units: int

    @property
    def area(self) -> int:
        return 8 * self.eights + self.units


def multiple_decompose(m: int, q: int) -> MultipleDecomposition:
    """``m`` copies of a ``q x q`` square as an 8-wide rectangle plus unit squares.

    Follows the gnomon picture: each ``q*q = 8*T + 1`` contributes ``T``
    columns of eight and one unit; the ``m`` leftover units then regroup into
    ``m // 8`` further columns and ``m % 8`` units.
    """
    _natural(m, "m")
    _natural(q, "q")
    if m % 2 == 0 or q % 2 == 0:
        raise ValueError(f"multiple_decompose needs odd m and q, got m={m}, q={q}")
    g = gnomon_decompose(q // 2)
    return MultipleDecomposition(m, q, m * g.eights + m // 8, m % 8)


# --- verdicts ----------------------------------------------------------------


def theodorus_verdict(n: int, mode: Mode = Mode.LESSON_FAITHFUL) -> Verdict:
    """Decide sqrt(n) for odd n >= 3 from its remainder on division by 8.

    Residue 1 with a non-square ``n`` stays :attr:`Outcome.INCONCLUSIVE_BY_CRITERION`;
    resolving it is :func:`decide_sqrt`'s job.
    """
    _natural(n)
    if n % 2 == 0:
        raise ValueError(f"theodorus_verdict handles odd n only, got {n}")
    if n < 3:
        raise ValueError("theodorus_verdict starts at 3; the unit is not part of the sequence")
    _, residue = divmod(n, 8)
    if residue != 1:
        return Verdict(n, Outcome.IRRATIONAL_BY_RESIDUE, residue=residue, mode=mode)
    root, exact = isqrt(n)
    if exact:
        return Verdict(n, Outcome.RATIONAL_PERFECT_SQUARE, root=root, mode=mode)
    return Verdict(n, Outcome.INCONCLUSIVE_BY_CRITERION, mode=mode)


def even_reduce(n: int) -> Verdict:
    """Write ``n = 2**u * v`` with v odd; odd u settles irrationality."""
    _natural(n)
    if n < 2 or n % 2:
        raise ValueError(f"even_reduce needs an even n >= 2, got {n}")
    u, v = 0, n
    while v % 2 == 0:
        v //= 2
        u += 1
    if u % 2:
        return Verdict(n, Outcome.IRRATIONAL_BY_EVEN_REDUCTION)
    return Verdict(n, Outcome.REDUCED_TO_ODD, core=v, multiplier=2 ** (u // 2))


def decide_sqrt(n: int, mode: Mode | str = Mode.LESSON_FAITHFUL) -> Verdict:
    """Full pipeline: even reduction, then the residue criterion on the odd core.

    In FullOracle mode a residue-1 non-square is resolved with the integer
    square root; in LessonFaithful mode it is reported as inconclusive.
    """
    mode = Mode(mode)
    _natural(n)
    if n < 1:
        raise ValueError("decide_sqrt needs n >= 1")
    if n == 1:
        return Verdict(1, Outcome.RATIONAL_PERFECT_SQUARE, root=1, mode=mode)
    if n % 2 == 0:
        reduced = even_reduce(n)
        if reduced.outcome is Outcome.IRRATIONAL_BY_EVEN_REDUCTION:
            return replace(reduced, mode=mode)
        inner = decide_sqrt(reduced.core, mode)
        return replace(
            inner,
            n=n,
            root=None if inner.root is None else inner.root * reduced.multiplier,
            core=reduced.core,
            multiplier=reduced.multiplier,
        )
    verdict = theodorus_verdict(n, mode)
    if verdict.outcome is Outcome.INCONCLUSIVE_BY_CRITERION and mode is Mode.FULL_ORACLE:
        return replace(verdict, outcome=Outcome.IRRATIONAL_NONSQUARE_RESIDUE_ONE)
    return verdict


def lesson_table() -> list[Verdict]:
    return [theodorus_verdict(n, Mode.LESSON_FAITHFUL) for n in LESSON_SEQUENCE]


@dataclass(frozen=True)
class TheonRow:
    index: int
    odd_pair_sum: int
    square: int


def theon_sequence(count: int) -> list[TheonRow]:
    """Odd squares as running sums of successive odd integers.

    Row 1 is the lone ``1``; every later row adds the next two odd numbers,
    whose sum is always a multiple of 8.
    """
    _natural(count, "count")
    if count < 1:
        raise ValueError("count must be >= 1")
    rows = [TheonRow(1, 1, 1)]
    next_odd = 3
    total = 1
    for i in range(2, count + 1):
        pair = next_odd + (next_odd + 2)
        next_odd += 4
        total += pair
        if total % 8 != 1:  # pragma: no cover - would falsify the remainder result
            raise ArithmeticError(f"odd square {total} is not 1 mod 8")
        rows.append(TheonRow(i, pair, total))
    return rows


# --- verification sweeps -----------------------------------------------------


@dataclass
class OracleSweepReport:
    """Disagreements between ``decide_sqrt`` and the perfect-square oracle over [lo, hi]."""

    lo: int
    hi: int
    mode: Mode
    checked: int = 0
    disagreements: list[int] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def merge(self, other: "OracleSweepReport") -> "OracleSweepReport":
        if self.mode != other.mode:
            raise ValueError("cannot merge sweeps run in different modes")
        first, second = sorted((self, other), key=lambda r: r.lo)
        if second.lo != first.hi + 1:
            raise ValueError("reports must cover adjacent ranges")
        counts = dict(first.counts)
        for key, value in second.counts.items():
            counts[key] = counts.get(key, 0) + value
        return OracleSweepReport(
            first.lo,
            second.hi,
            self.mode,
            first.checked + second.checked,
            first.disagreements + second.disagreements,
            counts,
        )


def _agrees(verdict: Verdict, square: bool) -> bool:
    rational = verdict.is_rational
    if rational is None:
        # the lesson may stay silent, but only on non-squares
        return not square
    return rational == square


def oracle_sweep(lo: int, hi: int, mode: Mode | str = Mode.FULL_ORACLE) -> OracleSweepReport:
    """Run the scalar pipeline on every n in [lo, hi] against ``math.isqrt``."""
    mode = Mode(mode)
    if lo < 1 or hi < lo:
        raise ValueError("need 1 <= lo <= hi")
    report = OracleSweepReport(lo, hi, mode)
    counts: dict[str, int] = {}
    for n in range(lo, hi + 1):
        verdict = decide_sqrt(n, mode)
        r = math.isqrt(n)
        if not _agrees(verdict, r * r == n):
            report.disagreements.append(n)
        name = verdict.outcome.title
        counts[name] = counts.get(name, 0) + 1
    report.checked = hi - lo + 1
    report.counts = counts
    return report


def oracle_sweep_batch(
    lo: int,
    hi: int,
    mode: Mode | str = Mode.FULL_ORACLE,
    backend: str | None = None,
) -> OracleSweepReport:
    """Kernel-backed counterpart of :func:`oracle_sweep` for large ranges."""
    mode = Mode(mode)
    if lo < 1 or hi < lo:
        raise ValueError("need 1 <= lo <= hi")
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    codes, values = _accel.classify_array(ns, mode is Mode.FULL_ORACLE, backend)
    roots = _accel.isqrt_array(ns, backend)
    square = roots * roots == ns
    rational = codes == Outcome.RATIONAL_PERFECT_SQUARE
    silent = codes == Outcome.INCONCLUSIVE_BY_CRITERION
    bad = np.where(silent, square, rational != square)
    bad |= rational & (values * values != ns)
    counts = {
        Outcome(int(c)).title: int(k) for c, k in zip(*np.unique(codes, return_counts=True))
    }
    return OracleSweepReport(
        lo, hi, mode, int(ns.size), [int(n) for n in ns[bad]], counts
    )


def verdicts(ns: Iterable[int], mode: Mode | str = Mode.LESSON_FAITHFUL) -> list[Verdict]:
    return [decide_sqrt(n, mode) for n in ns]

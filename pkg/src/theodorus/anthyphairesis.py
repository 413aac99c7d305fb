"""Alternate subtraction on integers and on square roots.

For integers the process is Euclid's algorithm and always stops at the
greatest common measure.  For ``sqrt(n)`` it is the continued fraction
expansion, run on exact integer states ``(m, d)`` representing
``(sqrt(n) + m) / d``; a repeated state proves the process never stops.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .criterion import Mode, decide_sqrt, theodorus_verdict
from .numeris import _natural, isqrt

__all__ = [
    "DEFAULT_STEP_BUDGET",
    "BudgetExhausted",
    "Step",
    "AnthyphairesisTrace",
    "ExpansionStatus",
    "ContinuedFractionExpansion",
    "Commensurability",
    "ConditionFlag",
    "ComparisonRow",
    "MethodComparisonReport",
    "integer_anthyphairesis",
    "surd_anthyphairesis",
    "commensurability_by_anthyphairesis",
    "method_comparison",
]

DEFAULT_STEP_BUDGET = 10_000


class BudgetExhausted(RuntimeError):
    """The expansion ran out of steps before terminating or repeating."""


@dataclass(frozen=True)
class Step:
    larger: int
    smaller: int
    quotient: int
    remainder: int


@dataclass(frozen=True)
class AnthyphairesisTrace:
    initial: tuple[int, int]
    steps: tuple[Step, ...]
    terminated: bool
    common_measure: int | None


def integer_anthyphairesis(m: int, n: int) -> AnthyphairesisTrace:
    """Subtract the lesser from the greater, as often as possible, until nothing remains.

    >>> integer_anthyphairesis(13, 3).steps[0]
    Step(larger=13, smaller=3, quotient=4, remainder=1)
    """
    _natural(m, "m")
    _natural(n, "n")
    if m == 0 or n == 0:
        raise ValueError("alternate subtraction needs two positive integers")
    a, b = max(m, n), min(m, n)
    steps = []
    while True:
        q, r = divmod(a, b)
        steps.append(Step(a, b, q, r))
        if r == 0:
            break
        a, b = b, r
    return AnthyphairesisTrace((m, n), tuple(steps), True, b)


class ExpansionStatus(str, Enum):
    TERMINATED = "terminated"
    PERIODIC = "periodic"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class ContinuedFractionExpansion:
    """Continued fraction of ``sqrt(n)``.

    ``partial_quotients[0]`` is the integer part.  ``states[k]`` is the pair
    ``(m, d)`` that produced ``partial_quotients[k]``.  For a periodic
    expansion ``period = (start, length)`` indexes into ``partial_quotients``
    and the state after the last recorded quotient equals ``states[start]``.
    """

    n: int
    integer_part: int
    partial_quotients: tuple[int, ...]
    states: tuple[tuple[int, int], ...]
    status: ExpansionStatus
    period: tuple[int, int] | None
    steps: int

    @property
    def terminated(self) -> bool:
        return self.status is ExpansionStatus.TERMINATED

    @property
    def value(self) -> int | None:
        return self.integer_part if self.terminated else None

    @property
    def period_quotients(self) -> tuple[int, ...]:
        if self.period is None:
            return ()
        start, length = self.period
        return self.partial_quotients[start : start + length]


def _next_state(n: int, a0: int, m: int, d: int, a: int) -> tuple[int, int, int]:
    m = d * a - m
    d = (n - m * m) // d
    return m, d, (a0 + m) // d


def surd_anthyphairesis(n: int, step_budget: int = DEFAULT_STEP_BUDGET) -> ContinuedFractionExpansion:
    """Expand ``sqrt(n)`` until it terminates, repeats a state, or runs out of budget."""
    _natural(n)
    if n < 2:
        raise ValueError("surd_anthyphairesis needs n >= 2")
    if step_budget < 1:
        raise ValueError("step_budget must be >= 1")
    a0, exact = isqrt(n)
    if exact:
        return ContinuedFractionExpansion(
            n, a0, (a0,), ((0, 1),), ExpansionStatus.TERMINATED, None, 1
        )
    quotients = [a0]
    states = [(0, 1)]
    seen = {(0, 1): 0}
    m, d, a = 0, 1, a0
    steps = 0
    while steps < step_budget:
        m, d, a = _next_state(n, a0, m, d, a)
        steps += 1
        if (m, d) in seen:
            start = seen[(m, d)]
            return ContinuedFractionExpansion(
                n, a0, tuple(quotients), tuple(states),
                ExpansionStatus.PERIODIC, (start, len(quotients) - start), steps,
            )
        seen[(m, d)] = len(quotients)
        quotients.append(a)
        states.append((m, d))
    return ContinuedFractionExpansion(
        n, a0, tuple(quotients), tuple(states), ExpansionStatus.BUDGET_EXHAUSTED, None, steps
    )


class Commensurability(str, Enum):
    COMMENSURABLE = "Commensurable"
    INCOMMENSURABLE_BY_PERIOD = "IncommensurableByPeriod"


def commensurability_by_anthyphairesis(
    n: int, step_budget: int = DEFAULT_STEP_BUDGET
) -> tuple[Commensurability, int]:
    """Is the side of an ``n``-foot square commensurable with the unit foot?

    Raises :class:`BudgetExhausted` rather than guessing when no period
    shows up within ``step_budget``.
    """
    _natural(n)
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return Commensurability.COMMENSURABLE, 1
    cf = surd_anthyphairesis(n, step_budget)
    if cf.status is ExpansionStatus.TERMINATED:
        return Commensurability.COMMENSURABLE, cf.steps
    if cf.status is ExpansionStatus.PERIODIC:
        return Commensurability.INCOMMENSURABLE_BY_PERIOD, cf.steps
    raise BudgetExhausted(f"no period for sqrt({n}) within {step_budget} steps")


# --- method comparison -------------------------------------------------------

RESIDUE = "residue"
ANTHYPHAIRESIS = "anthyphairesis"

STEP_METRIC_NOTE = (
    "Step metric: one modular reduction or square-root test per unit for the residue "
    "method; one division round per unit for anthyphairesis. This is a uniform proxy "
    "for lesson length, not a measured duration."
)

INFORMATIONAL_CONDITIONS = {
    "iv": "Consistent with mathematics known in Theaetetus' time (historical; not computed).",
    "vi": "Gives rise to an erroneous generalization to all integers (concerns the sequel; not computed).",
    "vii": "Generalizes to cube roots (concerns the sequel; not computed).",
    "viii": "Shows that the number of 'powers' is unlimited (concerns the sequel; not computed).",
}


@dataclass(frozen=True)
class ConditionFlag:
    satisfied: bool
    detail: str


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    residue_steps: int
    anthy_steps: int
    residue_outcome: str
    anthy_outcome: str


@dataclass
class MethodComparisonReport:
    rows: list[ComparisonRow]
    condition_flags: dict[str, dict[str, ConditionFlag]]
    informational_flags: dict[str, str] = field(default_factory=lambda: dict(INFORMATIONAL_CONDITIONS))
    note: str = STEP_METRIC_NOTE

    def totals(self) -> dict[str, int]:
        return {
            RESIDUE: sum(r.residue_steps for r in self.rows),
            ANTHYPHAIRESIS: sum(r.anthy_steps for r in self.rows),
        }

    def to_dict(self) -> dict:
        return {
            "note": self.note,
            "rows": [
                {
                    "n": r.n,
                    "residue_steps": r.residue_steps,
                    "anthy_steps": r.anthy_steps,
                    "residue_outcome": r.residue_outcome,
                    "anthy_outcome": r.anthy_outcome,
                }
                for r in self.rows
            ],
            "totals": self.totals(),
            "flags": {
                method: {
                    cond: {"satisfied": flag.satisfied, "detail": flag.detail}
                    for cond, flag in flags.items()
                }
                for method, flags in self.condition_flags.items()
            },
            "informational_flags": dict(self.informational_flags),
        }


def _residue_steps(n: int) -> int:
    # one division by 8, plus an integer square root when the residue is 1
    return 1 if n % 8 != 1 else 2


def _kind(label: str) -> str:
    return label.split("(", 1)[0]


def _first_irrational_case(method: str, upto: int) -> int | None:
    for n in range(2, upto + 1):
        if method == RESIDUE:
            if n % 2 == 0:
                continue  # the residue criterion only speaks about odd n
            if theodorus_verdict(n).is_rational is False:
                return n
        else:
            verdict, _ = commensurability_by_anthyphairesis(n)
            if verdict is Commensurability.INCOMMENSURABLE_BY_PERIOD:
                return n
    return None


def method_comparison(sequence: Sequence[int]) -> MethodComparisonReport:
    """Run both methods over ``sequence`` and score the mechanizable conditions."""
    seq = list(sequence)
    if not seq:
        raise ValueError("sequence must be nonempty")
    for n in seq:
        if n < 3 or n % 2 == 0:
            raise ValueError(f"sequence must hold odd integers >= 3, got {n}")

    rows = []
    for n in seq:
        verdict = decide_sqrt(n, Mode.LESSON_FAITHFUL)
        anthy, anthy_steps = commensurability_by_anthyphairesis(n)
        rows.append(ComparisonRow(n, _residue_steps(n), anthy_steps, verdict.label, anthy.value))

    # (i) the method's first irrational case is where the lesson begins
    upto = max(max(seq), 3)
    first = {m: _first_irrational_case(m, upto) for m in (RESIDUE, ANTHYPHAIRESIS)}
    cond_i = {
        m: ConditionFlag(
            seq[0] == 3 and first[m] == 3,
            f"first case the method proves irrational: {first[m]}; lesson starts at {seq[0]}",
        )
        for m in first
    }

    # (ii) each verdict recomputed in isolation and in reverse order must match
    alone_res = [decide_sqrt(n, Mode.LESSON_FAITHFUL).label for n in seq]
    rev_res = [decide_sqrt(n, Mode.LESSON_FAITHFUL).label for n in reversed(seq)][::-1]
    alone_anthy = [commensurability_by_anthyphairesis(n)[0].value for n in seq]
    rev_anthy = [commensurability_by_anthyphairesis(n)[0].value for n in reversed(seq)][::-1]
    cond_ii = {
        RESIDUE: ConditionFlag(
            alone_res == rev_res == [r.residue_outcome for r in rows],
            "each case decided from n alone by one division by 8",
        ),
        ANTHYPHAIRESIS: ConditionFlag(
            alone_anthy == rev_anthy == [r.anthy_outcome for r in rows],
            "each case needs its own expansion; no result carries over",
        ),
    }

    # (iii) the last case must differ in kind from every earlier one
    last = rows[-1]
    res_kind = [_kind(r.residue_outcome) for r in rows]
    anthy_kind = [r.anthy_outcome for r in rows]
    res_stop = len(rows) > 1 and res_kind[-1] not in res_kind[:-1]
    anthy_stop = len(rows) > 1 and anthy_kind[-1] not in anthy_kind[:-1]
    cond_iii = {
        RESIDUE: ConditionFlag(
            res_stop,
            f"outcome at {last.n}: {last.residue_outcome}",
        ),
        ANTHYPHAIRESIS: ConditionFlag(
            anthy_stop,
            f"outcome at {last.n}: {last.anthy_outcome} after {last.anthy_steps} steps",
        ),
    }

    # (v) the cheaper method under the uniform step metric
    totals = {
        RESIDUE: sum(r.residue_steps for r in rows),
        ANTHYPHAIRESIS: sum(r.anthy_steps for r in rows),
    }
    cond_v = {
        m: ConditionFlag(
            totals[m] <= min(totals.values()),
            f"total steps {totals[m]} (residue {totals[RESIDUE]}, "
            f"anthyphairesis {totals[ANTHYPHAIRESIS]})",
        )
        for m in totals
    }

    flags = {
        m: {"i": cond_i[m], "ii": cond_ii[m], "iii": cond_iii[m], "v": cond_v[m]}
        for m in (RESIDUE, ANTHYPHAIRESIS)
    }
    return MethodComparisonReport(rows, flags)

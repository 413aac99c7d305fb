"""Exact integers, rationals and single-radicand quadratic surds.

Integers are plain Python ``int`` and rationals are :class:`fractions.Fraction`;
both are arbitrary precision and normalize eagerly.  :class:`QuadraticSurd`
holds ``rat + coef*sqrt(radicand)`` in a canonical form so that structural
equality is numeric equality.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import NamedTuple, Union

__all__ = [
    "IntegerRoot",
    "QuadraticSurd",
    "CommensurableRatio",
    "Incommensurable",
    "INCOMMENSURABLE",
    "isqrt",
    "squarefree_decompose",
    "surd_normalize",
    "surd_sqrt",
    "surd_ratio",
    "surd_compare",
    "parse_surd",
]

RationalLike = Union[int, Fraction]

# 50 significant digits is ~166 bits, comfortably above the 60-bit floor.
DECIMAL_DIGITS = 50


def _natural(n: int, name: str = "n") -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"{name} must be non-negative, got {n}")
    return n


class IntegerRoot(NamedTuple):
    root: int
    exact: bool


def isqrt(n: int) -> IntegerRoot:
    """Floor square root of ``n`` and whether it is exact.

    >>> isqrt(17)
    IntegerRoot(root=4, exact=False)
    """
    _natural(n)
    r = math.isqrt(n)
    return IntegerRoot(r, r * r == n)


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Split ``n`` as ``s**2 * v`` with ``v`` squarefree.

    Trial division runs only up to the cube root of the unfactored cofactor;
    what is left then has at most two prime factors, so it contributes a
    square exactly when it is itself a perfect square.
    """
    _natural(n)
    if n == 0:
        raise ValueError("squarefree_decompose is undefined for 0")
    s, v = 1, 1
    rest = n
    p = 2
    while p * p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                v *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(rest)
    if r * r == rest:
        s *= r
    else:
        v *= rest
    return s, v


def _sign(x: RationalLike) -> int:
    return (x > 0) - (x < 0)


def _sign_single(p: Fraction, q: Fraction, e: int) -> int:
    """Sign of ``p + q*sqrt(e)`` for rational p, q and integer e >= 0."""
    sp, sq = _sign(p), _sign(q)
    if sq == 0 or e == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    diff = p * p - q * q * e
    if diff > 0:
        return sp
    if diff < 0:
        return sq
    return 0


def _sign_double(x: Fraction, y: Fraction, d1: int, z: Fraction, d2: int) -> int:
    """Sign of ``x + y*sqrt(d1) + z*sqrt(d2)`` by repeated squaring."""
    if d1 == d2:
        return _sign_single(x, y + z, d1)
    sy, sz = _sign(y), _sign(z)
    if sy == 0:
        return _sign_single(x, z, d2)
    if sz == 0:
        return _sign_single(x, y, d1)
    # sign of the irrational part u = y*sqrt(d1) + z*sqrt(d2)
    if sy == sz:
        su = sy
    else:
        c = y * y * d1 - z * z * d2
        su = sy if c > 0 else sz if c < 0 else 0
    sx = _sign(x)
    if su == 0 or sx == 0:
        return su or sx
    if su == sx:
        return su
    # opposite signs: compare u**2 against x**2
    s, w = squarefree_decompose(d1 * d2)
    cmp = _sign_single(y * y * d1 + z * z * d2 - x * x, 2 * y * z * s, w)
    if cmp > 0:
        return su
    if cmp < 0:
        return sx
    return 0


@dataclass(frozen=True)
class QuadraticSurd:
    """The exact value ``rat + coef*sqrt(radicand)``.

    Instances are always canonical: ``radicand`` is squarefree, and
    ``radicand == 1`` exactly when ``coef == 0``.  Build them with
    :func:`surd_normalize`, :func:`surd_sqrt` or :meth:`rational`.
    """

    rat: Fraction
    coef: Fraction
    radicand: int

    def __post_init__(self) -> None:
        if not isinstance(self.rat, Fraction) or not isinstance(self.coef, Fraction):
            raise TypeError("rat and coef must be Fractions; use surd_normalize")
        if self.radicand < 1:
            raise ValueError("radicand must be >= 1")
        if (self.coef == 0) != (self.radicand == 1):
            raise ValueError("non-canonical surd: coef == 0 iff radicand == 1")
        if self.radicand > 1 and squarefree_decompose(self.radicand)[0] != 1:
            raise ValueError(f"radicand {self.radicand} is not squarefree")

    @classmethod
    def rational(cls, value: RationalLike) -> "QuadraticSurd":
        return cls(Fraction(value), Fraction(0), 1)

    @property
    def is_rational(self) -> bool:
        return self.coef == 0

    @property
    def is_pure(self) -> bool:
        """True for values of the form ``coef*sqrt(radicand)`` (rationals included)."""
        return self.rat == 0 or self.coef == 0

    def sign(self) -> int:
        return _sign_single(self.rat, self.coef, self.radicand)

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.rat, -self.coef, self.radicand)

    def norm(self) -> Fraction:
        return self.rat * self.rat - self.coef * self.coef * self.radicand

    def square(self) -> "QuadraticSurd":
        return self * self

    # arithmetic -------------------------------------------------------

    def _field_with(self, other: "QuadraticSurd") -> int:
        if self.radicand == other.radicand or other.radicand == 1:
            return self.radicand
        if self.radicand == 1:
            return other.radicand
        raise ValueError(
            f"values lie in different quadratic fields "
            f"(sqrt {self.radicand} vs sqrt {other.radicand})"
        )

    def __add__(self, other: object) -> "QuadraticSurd":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._field_with(other)
        return surd_normalize(self.coef + other.coef, d, self.rat + other.rat)

    __radd__ = __add__

    def __neg__(self) -> "QuadraticSurd":
        return QuadraticSurd(-self.rat, -self.coef, self.radicand)

    def __sub__(self, other: object) -> "QuadraticSurd":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "QuadraticSurd":
        return (-self) + other

    def __mul__(self, other: object) -> "QuadraticSurd":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if (
            self.radicand != other.radicand
            and self.radicand > 1
            and other.radicand > 1
        ):
            if self.rat or other.rat:
                raise ValueError("product of mixed surds with distinct radicands")
            return surd_normalize(self.coef * other.coef, self.radicand * other.radicand)
        d = self._field_with(other)
        a, b = self.rat, self.coef
        c, e = other.rat, other.coef
        return surd_normalize(a * e + b * c, d, a * c + b * e * d)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "QuadraticSurd":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.sign() == 0:
            raise ZeroDivisionError("division by zero surd")
        if other.is_rational:
            return surd_normalize(self.coef / other.rat, self.radicand, self.rat / other.rat)
        inv = other.conjugate() * QuadraticSurd.rational(1 / other.norm())
        return self * inv

    def __rtruediv__(self, other: object) -> "QuadraticSurd":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    # ordering ---------------------------------------------------------

    def __lt__(self, other: object) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return surd_compare(self, other) < 0

    def __le__(self, other: object) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return surd_compare(self, other) <= 0

    def __gt__(self, other: object) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return surd_compare(self, other) > 0

    def __ge__(self, other: object) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return surd_compare(self, other) >= 0

    # approximation (rendering only) -----------------------------------

    def to_decimal(self, digits: int = DECIMAL_DIGITS) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 10
            rat = Decimal(self.rat.numerator) / Decimal(self.rat.denominator)
            if self.coef == 0:
                value = rat
            else:
                coef = Decimal(self.coef.numerator) / Decimal(self.coef.denominator)
                value = rat + coef * Decimal(self.radicand).sqrt()
            ctx.prec = digits
            return +value

    def __float__(self) -> float:
        return float(self.to_decimal(30))

    def __str__(self) -> str:
        if self.coef == 0:
            return _fmt_fraction(self.rat)
        if self.coef == 1:
            irr = f"√{self.radicand}"
        elif self.coef == -1:
            irr = f"-√{self.radicand}"
        else:
            irr = f"{_fmt_fraction(self.coef)}√{self.radicand}"
        if self.rat == 0:
            return irr
        sep = "" if irr.startswith("-") else "+"
        return f"{_fmt_fraction(self.rat)}{sep}{irr}"


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _coerce(value: object) -> QuadraticSurd:
    if isinstance(value, QuadraticSurd):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return QuadraticSurd.rational(value)
    return NotImplemented  # type: ignore[return-value]


def surd_normalize(
    coef: RationalLike, radicand: int, rat: RationalLike = 0
) -> QuadraticSurd:
    """Canonical ``rat + coef*sqrt(radicand)`` with the square part folded out.

    >>> str(surd_normalize(1, 12))
    '2√3'
    """
    _natural(radicand, "radicand")
    if radicand == 0:
        return QuadraticSurd.rational(rat)
    coef, rat = Fraction(coef), Fraction(rat)
    s, v = squarefree_decompose(radicand)
    coef *= s
    if v == 1 or coef == 0:
        return QuadraticSurd(rat + (coef if v == 1 else 0), Fraction(0), 1)
    return QuadraticSurd(rat, coef, v)


def surd_sqrt(value: RationalLike) -> QuadraticSurd:
    """Exact non-negative square root of a non-negative rational."""
    value = Fraction(value)
    if value < 0:
        raise ValueError("square root of a negative rational")
    # sqrt(p/q) = sqrt(p*q)/q
    return surd_normalize(Fraction(1, value.denominator), value.numerator * value.denominator)


def surd_compare(a: QuadraticSurd, b: QuadraticSurd) -> int:
    """Exact three-way comparison: -1, 0 or 1 as ``a`` <, ==, > ``b``."""
    a, b = _coerce(a), _coerce(b)
    return _sign_double(a.rat - b.rat, a.coef, a.radicand, -b.coef, b.radicand)


@dataclass(frozen=True)
class CommensurableRatio:
    ratio: Fraction


@dataclass(frozen=True)
class Incommensurable:
    pass


INCOMMENSURABLE = Incommensurable()


def surd_ratio(
    a: QuadraticSurd, b: QuadraticSurd
) -> CommensurableRatio | Incommensurable:
    """Ratio of two pure surds, rational exactly when their radicands agree."""
    a, b = _coerce(a), _coerce(b)
    if b.sign() == 0:
        raise ZeroDivisionError("ratio by a zero magnitude")
    if not (a.is_pure and b.is_pure):
        raise ValueError("surd_ratio supports only pure c*sqrt(d) or rational operands")
    if a.sign() == 0:
        return CommensurableRatio(Fraction(0))
    if a.radicand != b.radicand:
        return INCOMMENSURABLE
    if a.is_rational:
        return CommensurableRatio(a.rat / b.rat)
    return CommensurableRatio(a.coef / b.coef)


_SURD_RE = re.compile(
    r"""^\s*
    (?:(?P<rat>[+-]?\d+(?:/\d+)?)(?![\d/]*√))?    # rational part
    (?:(?P<coef>[+-]?(?:\d+(?:/\d+)?)?)√(?P<rad>\d+))?
    \s*$""",
    re.VERBOSE,
)


def parse_surd(text: str) -> QuadraticSurd:
    """Inverse of ``str(QuadraticSurd)``."""
    m = _SURD_RE.match(text)
    if not m or (m.group("rat") is None and m.group("rad") is None):
        raise ValueError(f"cannot parse surd {text!r}")
    rat = Fraction(m.group("rat")) if m.group("rat") else Fraction(0)
    if m.group("rad") is None:
        return QuadraticSurd.rational(rat)
    c = m.group("coef")
    coef = Fraction(c + "1") if c in ("", "+", "-") else Fraction(c)
    return surd_normalize(coef, int(m.group("rad")), rat)

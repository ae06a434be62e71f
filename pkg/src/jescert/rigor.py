"""Outward-rounded interval arithmetic on top of MPFR.

Every real quantity handled by the package lives in an :class:`Interval`
whose endpoints are binary floating-point numbers of a chosen mantissa
width.  The lower endpoint is always computed with round-toward-minus-infinity
and the upper with round-toward-plus-infinity, so the exact value of the
expression that produced an interval is guaranteed to lie inside it.

Decimal constants are converted through :class:`fractions.Fraction`, never
through ``float``.
"""

from __future__ import annotations

import enum
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import gmpy2
from gmpy2 import mpfr, mpq

DEFAULT_BITS = 192
DEFAULT_MAX_BITS = 1024
MIN_BITS = 64

Exact = Union[int, Fraction]
Operand = Union["Interval", int, Fraction]


class DomainError(ValueError):
    """Argument outside the domain of an interval operation."""


@dataclass(frozen=True)
class Precision:
    bits: int = DEFAULT_BITS
    max_bits: int = DEFAULT_MAX_BITS

    def __post_init__(self):
        if self.bits < MIN_BITS:
            raise ValueError(f"precision must be at least {MIN_BITS} bits, got {self.bits}")
        if self.bits > self.max_bits:
            raise ValueError(f"bits={self.bits} exceeds max_bits={self.max_bits}")


DEFAULT_PRECISION = Precision()


def exact(value) -> Fraction:
    """Parse ``value`` as an exact rational.

    Strings are read as decimal (or ``p/q``) literals, so ``exact("1.575")``
    is exactly 63/40.  Floats are rejected to keep binary rounding out.
    """
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a decimal string or Fraction")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return Fraction(str(value).strip())


_contexts: dict[tuple[int, int], gmpy2.context] = {}


def _ctx(bits: int, rnd) -> gmpy2.context:
    key = (bits, rnd)
    ctx = _contexts.get(key)
    if ctx is None:
        ctx = gmpy2.context(precision=bits, round=rnd)
        _contexts[key] = ctx
    return ctx


def _down(bits):
    return _ctx(bits, gmpy2.RoundDown)


def _up(bits):
    return _ctx(bits, gmpy2.RoundUp)


def _check_finite(x):
    if not gmpy2.is_finite(x):
        raise OverflowError(f"non-finite interval endpoint {x}")
    return x


def _to_fraction(x) -> Fraction:
    num, den = x.as_integer_ratio()
    return Fraction(int(num), int(den))


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` with MPFR endpoints.

    Arithmetic operators accept ints and Fractions on either side; exact
    operands are enclosed at the interval's own precision first.
    """

    lo: mpfr
    hi: mpfr
    prec: int = DEFAULT_BITS

    def __post_init__(self):
        _check_finite(self.lo)
        _check_finite(self.hi)
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    # -- construction -----------------------------------------------------

    @classmethod
    def exact(cls, value, prec: int = DEFAULT_BITS) -> Interval:
        q = mpq(exact(value))
        return cls(_round(q, prec, down=True), _round(q, prec, down=False), prec)

    @classmethod
    def hull(cls, lo, hi, prec: int = DEFAULT_BITS) -> Interval:
        """Smallest representable interval containing the rationals lo..hi."""
        return cls(_round(mpq(exact(lo)), prec, True), _round(mpq(exact(hi)), prec, False), prec)

    # -- inspection -------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return _to_fraction(self.hi) - _to_fraction(self.lo)

    @property
    def mid(self) -> Fraction:
        return (_to_fraction(self.lo) + _to_fraction(self.hi)) / 2

    def lo_fraction(self) -> Fraction:
        return _to_fraction(self.lo)

    def hi_fraction(self) -> Fraction:
        return _to_fraction(self.hi)

    def contains(self, value) -> bool:
        if isinstance(value, Interval):
            return self.lo <= value.lo and value.hi <= self.hi
        q = exact(value)
        return self.lo_fraction() <= q <= self.hi_fraction()

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __repr__(self):
        digits = max(20, int(self.prec * 0.30103) + 2)
        return f"Interval[{self.lo:.{digits}g}, {self.hi:.{digits}g}]"

    def format(self, digits: int = 25) -> tuple[str, str]:
        """Decimal strings for the endpoints, rounded outward."""
        return _fmt(self.lo, digits, down=True), _fmt(self.hi, digits, down=False)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other: Operand) -> Interval:
        if isinstance(other, Interval):
            return other
        return Interval.exact(other, self.prec)

    def __add__(self, other: Operand) -> Interval:
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return Interval(_down(p).add(self.lo, o.lo), _up(p).add(self.hi, o.hi), p)

    __radd__ = __add__

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo, self.prec)

    def __sub__(self, other: Operand) -> Interval:
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return Interval(_down(p).sub(self.lo, o.hi), _up(p).sub(self.hi, o.lo), p)

    def __rsub__(self, other: Operand) -> Interval:
        return self._coerce(other) - self

    def __mul__(self, other: Operand) -> Interval:
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        d, u = _down(p), _up(p)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        return Interval(min(d.mul(x, y) for x, y in pairs), max(u.mul(x, y) for x, y in pairs), p)

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> Interval:
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError(f"divisor {o!r} contains zero")
        p = max(self.prec, o.prec)
        d, u = _down(p), _up(p)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        return Interval(min(d.div(x, y) for x, y in pairs), max(u.div(x, y) for x, y in pairs), p)

    def __rtruediv__(self, other: Operand) -> Interval:
        return self._coerce(other) / self

    def __pow__(self, k: int) -> Interval:
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported; use sqrt/exp/log")
        return pow_int(self, k)

    def sqrt(self) -> Interval:
        return sqrt(self)

    def log(self) -> Interval:
        return log(self)

    def exp(self) -> Interval:
        return exp(self)


def _round(q: mpq, prec: int, down: bool) -> mpfr:
    # mpfr(mpq) honours the active context's rounding mode
    with gmpy2.context(precision=prec, round=gmpy2.RoundDown if down else gmpy2.RoundUp):
        return mpfr(q)


def _fmt(x: mpfr, digits: int, down: bool) -> str:
    # decimal rendering rounded away from the interior of the interval
    q = _to_fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_FLOOR if down else ROUND_CEILING
        d = Decimal(q.numerator) / Decimal(q.denominator)
    return str(d)


def as_interval(x: Operand, prec: int = DEFAULT_BITS) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.exact(x, prec)


def pow_int(x: Interval, k: int) -> Interval:
    """``x**k`` for a machine integer ``k``; negative ``k`` needs 0 outside x."""
    if k < 0:
        return 1 / pow_int(x, -k)
    if k == 0:
        return Interval.exact(1, x.prec)
    p = x.prec
    d, u = _down(p), _up(p)
    if k % 2 == 1 or x.lo >= 0:
        return Interval(d.pow(x.lo, k), u.pow(x.hi, k), p)
    if x.hi <= 0:
        return Interval(d.pow(x.hi, k), u.pow(x.lo, k), p)
    return Interval(mpfr(0), max(u.pow(x.lo, k), u.pow(x.hi, k)), p)


def sqrt(x: Operand, prec: int = DEFAULT_BITS) -> Interval:
    x = as_interval(x, prec)
    if x.hi < 0:
        raise DomainError(f"sqrt of negative interval {x!r}")
    lo = x.lo if x.lo > 0 else mpfr(0)
    return Interval(_down(x.prec).sqrt(lo), _up(x.prec).sqrt(x.hi), x.prec)


def log(x: Operand, prec: int = DEFAULT_BITS) -> Interval:
    x = as_interval(x, prec)
    if x.lo <= 0:
        raise DomainError(f"log requires a strictly positive interval, got {x!r}")
    return Interval(_down(x.prec).log(x.lo), _up(x.prec).log(x.hi), x.prec)


def exp(x: Operand, prec: int = DEFAULT_BITS) -> Interval:
    x = as_interval(x, prec)
    return Interval(_down(x.prec).exp(x.lo), _up(x.prec).exp(x.hi), x.prec)


def imax(*xs: Interval) -> Interval:
    """Pointwise maximum: encloses max(x1, x2, ...) for every choice of points."""
    return Interval(max(x.lo for x in xs), max(x.hi for x in xs), max(x.prec for x in xs))


def imin(*xs: Interval) -> Interval:
    return Interval(min(x.lo for x in xs), min(x.hi for x in xs), max(x.prec for x in xs))


def enclose_log(x, p: Precision = DEFAULT_PRECISION) -> Interval:
    return log(x, p.bits)


def enclose_exp(x, p: Precision = DEFAULT_PRECISION) -> Interval:
    return exp(exact(x) if not isinstance(x, Interval) else x, p.bits)


_OPS: dict[str, Callable] = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
    "pow_int": lambda a, k: pow_int(a, k),
    "sqrt": lambda a: sqrt(a),
}


def ival_arith(op: str, *operands, p: Precision = DEFAULT_PRECISION) -> Interval:
    """Dispatch one of add/sub/mul/div/pow_int/sqrt by name."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown interval operation {op!r}") from None
    args = [as_interval(a, p.bits) if not (op == "pow_int" and i == 1) else a for i, a in enumerate(operands)]
    return fn(*args)


# -- certified comparison -------------------------------------------------


class Certainty(enum.Enum):
    TRUE = "CertifiedTrue"
    FALSE = "CertifiedFalse"
    INDETERMINATE = "Indeterminate"

    def __bool__(self):
        return self is Certainty.TRUE


def certify_less(a: Operand, b: Operand) -> Certainty:
    """Decide ``a < b`` from endpoints alone."""
    if not isinstance(a, Interval) and not isinstance(b, Interval):
        return Certainty.TRUE if exact(a) < exact(b) else Certainty.FALSE
    prec = a.prec if isinstance(a, Interval) else b.prec
    a, b = as_interval(a, prec), as_interval(b, prec)
    if a.hi < b.lo:
        return Certainty.TRUE
    if a.lo > b.hi:
        return Certainty.FALSE
    return Certainty.INDETERMINATE


@dataclass(frozen=True)
class Decision:
    verdict: Certainty
    lhs: Interval
    rhs: Interval
    bits: int


def decide_less(claim: Callable[[int], tuple[Operand, Operand]],
                precision: Precision = DEFAULT_PRECISION) -> Decision:
    """Certify ``lhs < rhs`` where ``claim(bits)`` evaluates both sides.

    Precision doubles from ``precision.bits`` until the comparison is decided
    or ``precision.max_bits`` is reached; an undecided result at the cap is
    returned as INDETERMINATE, never guessed.
    """
    bits = precision.bits
    while True:
        lhs, rhs = claim(bits)
        lhs, rhs = as_interval(lhs, bits), as_interval(rhs, bits)
        verdict = certify_less(lhs, rhs)
        if verdict is not Certainty.INDETERMINATE or bits >= precision.max_bits:
            return Decision(verdict, lhs, rhs, bits)
        bits = min(2 * bits, precision.max_bits)

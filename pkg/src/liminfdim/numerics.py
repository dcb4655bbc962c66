"""Certified dyadic arithmetic with directed rounding.

Building blocks:

* ``DirectedReal``: an arbitrary-precision dyadic number ``mantissa * 2**exponent``
  tagged with a rounding direction, so every value is either exact or a
  certified one-sided bound of the real quantity it stands for.
* ``Enclosure``: a pair of directed values bracketing a real number.
* ``dir_pow`` / ``log2_int`` / ``log_ratio``: enclosure-producing kernels for
  integer powers with rational exponents and base-2 logarithms.  These cover
  every irrational quantity the rest of the library needs.

All certified paths run on exact integer arithmetic.  Floats appear only to
pick working scales (never to decide a bound), so a bad float estimate can
cost a retry but not soundness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

DEFAULT_PRECISION = 128
MIN_PRECISION = 8


class Direction(Enum):
    DOWN = "down"
    UP = "up"
    EXACT = "exact"


DOWN = Direction.DOWN
UP = Direction.UP
EXACT = Direction.EXACT


def _resolve_prec(prec: Optional[int]) -> int:
    if prec is None:
        return DEFAULT_PRECISION
    if prec < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} bits, got {prec}")
    return prec


def _iroot(x: int, b: int) -> int:
    """Floor of the b-th root of a nonnegative integer."""
    if x < 0:
        raise ValueError("negative radicand")
    if x < 2 or b == 1:
        return x
    if b == 2:
        return math.isqrt(x)
    # Newton iteration from an over-estimate; monotone decreasing.
    g = 1 << -(-x.bit_length() // b)
    while True:
        t = g ** (b - 1)
        nxt = ((b - 1) * g + x // t) // b
        if nxt >= g:
            break
        g = nxt
    while g ** b > x:
        g -= 1
    while (g + 1) ** b <= x:
        g += 1
    return g


def _split_pow2(n: int) -> tuple[int, int]:
    """Write n = odd * 2**k for n >= 1."""
    k = (n & -n).bit_length() - 1
    return n >> k, k


def _shift_floor(m: int, k: int) -> int:
    """floor(m * 2**k) for integer m and possibly negative k."""
    return m << k if k >= 0 else m >> -k


def _shift_ceil(m: int, k: int) -> int:
    return m << k if k >= 0 else -((-m) >> -k)


@dataclass(frozen=True)
class DirectedReal:
    """Dyadic number ``mantissa * 2**exponent`` with a rounding direction.

    Canonical form keeps the mantissa odd (or zero with exponent zero), so
    numeric equality of canonical forms is plain field equality.  Comparisons
    and hashing ignore the direction tag: it records how the value relates to
    the real quantity it approximates, not what the value is.
    """

    mantissa: int
    exponent: int
    direction: Direction = EXACT

    def __post_init__(self) -> None:
        m, e = self.mantissa, self.exponent
        if m == 0:
            e = 0
        else:
            odd, k = _split_pow2(abs(m))
            e += k
            m = odd if m > 0 else -odd
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", e)

    @staticmethod
    def from_int(n: int, direction: Direction = EXACT) -> "DirectedReal":
        return DirectedReal(n, 0, direction)

    @staticmethod
    def from_fraction(x: Fraction, prec: Optional[int], direction: Direction) -> "DirectedReal":
        """Round an exact rational to a dyadic with `prec` significant bits.

        Exact (regardless of prec) when the denominator is a power of two.
        """
        num, den = x.numerator, x.denominator
        odd, k = _split_pow2(den)
        if odd == 1:
            return DirectedReal(num, -k, direction)
        p = _resolve_prec(prec)
        if num == 0:
            return DirectedReal(0, 0, direction)
        t = p + 2 - (abs(num).bit_length() - den.bit_length())
        t = max(t, 1)
        scaled = num << t
        if direction is DOWN:
            q = scaled // den
        elif direction is UP:
            q = -((-scaled) // den)
        else:
            raise ValueError("non-dyadic rational needs an explicit rounding direction")
        return DirectedReal(q, -t, direction)

    def as_fraction(self) -> Fraction:
        e = self.exponent
        if e >= 0:
            return Fraction(self.mantissa << e, 1)
        return Fraction(self.mantissa, 1 << -e)

    def __float__(self) -> float:
        try:
            return math.ldexp(self.mantissa, self.exponent)
        except OverflowError:
            return float(self.as_fraction())

    def _cmp(self, other: "DirectedReal") -> int:
        a, b = self, other
        if a.mantissa == b.mantissa and a.exponent == b.exponent:
            return 0
        e = min(a.exponent, b.exponent)
        x = a.mantissa << (a.exponent - e)
        y = b.mantissa << (b.exponent - e)
        return -1 if x < y else (1 if x > y else 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedReal):
            return NotImplemented
        return self.mantissa == other.mantissa and self.exponent == other.exponent

    def __hash__(self) -> int:
        return hash((self.mantissa, self.exponent))

    def __lt__(self, other: "DirectedReal") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "DirectedReal") -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: "DirectedReal") -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: "DirectedReal") -> bool:
        return self._cmp(other) >= 0

    @staticmethod
    def _join(d1: Direction, d2: Direction) -> Direction:
        if d1 is EXACT:
            return d2
        if d2 is EXACT or d1 is d2:
            return d1
        raise ValueError("cannot combine down- and up-rounded values exactly")

    def __neg__(self) -> "DirectedReal":
        flip = {DOWN: UP, UP: DOWN, EXACT: EXACT}[self.direction]
        return DirectedReal(-self.mantissa, self.exponent, flip)

    def __add__(self, other: "DirectedReal") -> "DirectedReal":
        d = self._join(self.direction, other.direction)
        e = min(self.exponent, other.exponent)
        m = (self.mantissa << (self.exponent - e)) + (other.mantissa << (other.exponent - e))
        return DirectedReal(m, e, d)

    def __sub__(self, other: "DirectedReal") -> "DirectedReal":
        return self + (-other)

    def __mul__(self, other: "DirectedReal") -> "DirectedReal":
        # Direction algebra is only sound for sign-definite factors.
        if self.direction is not EXACT and other.direction is not EXACT:
            if self.mantissa < 0 or other.mantissa < 0:
                raise ValueError("directed product of negative values is ambiguous")
        d = self._join(self.direction, other.direction)
        return DirectedReal(self.mantissa * other.mantissa, self.exponent + other.exponent, d)

    def floor(self) -> int:
        return _shift_floor(self.mantissa, self.exponent)

    def ceil(self) -> int:
        return _shift_ceil(self.mantissa, self.exponent)

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def retag(self, direction: Direction) -> "DirectedReal":
        return DirectedReal(self.mantissa, self.exponent, direction)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"DirectedReal({self.mantissa}*2^{self.exponent}, {self.direction.value})"


def _div_directed(num: DirectedReal, den: DirectedReal, prec: int, direction: Direction) -> DirectedReal:
    """num / den rounded in `direction`, den > 0, ~prec significant bits."""
    if den.mantissa <= 0:
        raise ZeroDivisionError("directed division requires a positive denominator")
    t = prec + 4 - (abs(num.mantissa).bit_length() - den.mantissa.bit_length())
    t = max(t, 0)
    scaled = num.mantissa << t
    q, r = divmod(scaled, den.mantissa)  # Python floor division: rounds toward -inf
    if r == 0:
        return DirectedReal(q, num.exponent - den.exponent - t, EXACT)
    if direction is UP:
        q += 1
    elif direction is not DOWN:
        raise ValueError("inexact division needs a rounding direction")
    return DirectedReal(q, num.exponent - den.exponent - t, direction)


@dataclass(frozen=True)
class Enclosure:
    """Certified bracket ``lo <= true value <= hi`` of a real number.

    Addition, subtraction and multiplication of dyadics are exact, so those
    operations never widen beyond the interval arithmetic itself; division
    and the power/log kernels round outward at a requested precision.
    """

    lo: DirectedReal
    hi: DirectedReal

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"inverted enclosure [{self.lo!r}, {self.hi!r}]")
        if self.lo.direction is UP or self.hi.direction is DOWN:
            raise ValueError("enclosure endpoints carry the wrong rounding directions")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def exact_int(n: int) -> "Enclosure":
        d = DirectedReal.from_int(n)
        return Enclosure(d, d)

    @staticmethod
    def exact_dyadic(mantissa: int, exponent: int) -> "Enclosure":
        d = DirectedReal(mantissa, exponent, EXACT)
        return Enclosure(d, d)

    @staticmethod
    def from_fraction(x: Fraction, prec: Optional[int] = None) -> "Enclosure":
        x = Fraction(x)
        odd, k = _split_pow2(x.denominator)
        if odd == 1:
            d = DirectedReal(x.numerator, -k, EXACT)
            return Enclosure(d, d)
        return Enclosure(
            DirectedReal.from_fraction(x, prec, DOWN),
            DirectedReal.from_fraction(x, prec, UP),
        )

    @staticmethod
    def from_endpoints(lo: Fraction, hi: Fraction, prec: Optional[int] = None) -> "Enclosure":
        return Enclosure(
            DirectedReal.from_fraction(Fraction(lo), prec, DOWN).retag(DOWN),
            DirectedReal.from_fraction(Fraction(hi), prec, UP).retag(UP),
        )

    # -- queries -----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def width(self) -> Fraction:
        return self.hi.as_fraction() - self.lo.as_fraction()

    def midpoint(self) -> Fraction:
        return (self.lo.as_fraction() + self.hi.as_fraction()) / 2

    def float_bounds(self) -> tuple[float, float]:
        return float(self.lo), float(self.hi)

    def contains(self, x: Union[Fraction, int]) -> bool:
        x = Fraction(x)
        return self.lo.as_fraction() <= x <= self.hi.as_fraction()

    def certainly_gt(self, x: Union[Fraction, int]) -> Optional[bool]:
        """True value > x?  True/False when certified, None when straddling."""
        x = Fraction(x)
        if self.lo.as_fraction() > x:
            return True
        if self.hi.as_fraction() <= x:
            return False
        return None

    def certainly_lt(self, x: Union[Fraction, int]) -> Optional[bool]:
        x = Fraction(x)
        if self.hi.as_fraction() < x:
            return True
        if self.lo.as_fraction() >= x:
            return False
        return None

    def floor_range(self) -> tuple[int, int]:
        return self.lo.floor(), self.hi.floor()

    def ceil_range(self) -> tuple[int, int]:
        return self.lo.ceil(), self.hi.ceil()

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __add__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Enclosure") -> "Enclosure":
        return self + (-other)

    def __mul__(self, other: "Enclosure") -> "Enclosure":
        cands = []
        for a in (self.lo, self.hi):
            for b in (other.lo, other.hi):
                cands.append(DirectedReal(a.mantissa * b.mantissa, a.exponent + b.exponent, EXACT))
        lo = min(cands)
        hi = max(cands)
        return Enclosure(lo.retag(DOWN if lo != hi else EXACT),
                         hi.retag(UP if lo != hi else EXACT))

    def scale_int(self, k: int) -> "Enclosure":
        if k >= 0:
            lo = DirectedReal(self.lo.mantissa * k, self.lo.exponent, self.lo.direction)
            hi = DirectedReal(self.hi.mantissa * k, self.hi.exponent, self.hi.direction)
            return Enclosure(lo, hi)
        return (-self).scale_int(-k)

    def add_int(self, k: int) -> "Enclosure":
        d = DirectedReal.from_int(k)
        return Enclosure(self.lo + d, self.hi + d)

    def mul_frac(self, q: Fraction, prec: Optional[int] = None) -> "Enclosure":
        """Multiply by an exact rational; exact when q is dyadic."""
        q = Fraction(q)
        if q < 0:
            return (-self).mul_frac(-q, prec)
        odd, k = _split_pow2(q.denominator)
        if odd == 1:
            lo = DirectedReal(self.lo.mantissa * q.numerator, self.lo.exponent - k, self.lo.direction)
            hi = DirectedReal(self.hi.mantissa * q.numerator, self.hi.exponent - k, self.hi.direction)
            return Enclosure(lo, hi)
        p = _resolve_prec(prec)
        lo = _div_directed(
            DirectedReal(self.lo.mantissa * q.numerator, self.lo.exponent),
            DirectedReal.from_int(q.denominator), p, DOWN)
        hi = _div_directed(
            DirectedReal(self.hi.mantissa * q.numerator, self.hi.exponent),
            DirectedReal.from_int(q.denominator), p, UP)
        return Enclosure(lo, hi)

    def div(self, other: "Enclosure", prec: Optional[int] = None) -> "Enclosure":
        """Interval division; the denominator must be certainly positive."""
        p = _resolve_prec(prec)
        if other.lo.mantissa <= 0:
            raise ZeroDivisionError("enclosure division requires a positive denominator")
        lo_den = other.hi if self.lo.mantissa >= 0 else other.lo
        hi_den = other.lo if self.hi.mantissa >= 0 else other.hi
        lo = _div_directed(self.lo, lo_den, p, DOWN)
        hi = _div_directed(self.hi, hi_den, p, UP)
        return Enclosure(lo, hi)

    def pow_frac(self, s: Fraction, prec: Optional[int] = None) -> "Enclosure":
        """self ** s for a certainly-positive enclosure and rational s."""
        s = Fraction(s)
        if s == 0:
            return Enclosure.exact_int(1)
        if self.lo.mantissa <= 0:
            raise ValueError("pow_frac requires a certainly positive base")
        p = _resolve_prec(prec)
        lo_b, hi_b = (self.lo, self.hi) if s > 0 else (self.hi, self.lo)
        lo = _dyadic_pow(lo_b, s, p).lo
        hi = _dyadic_pow(hi_b, s, p).hi
        return Enclosure(lo, hi)

    def log2(self, prec: Optional[int] = None) -> "Enclosure":
        """Enclosure of log2(value) for a certainly-positive enclosure."""
        p = _resolve_prec(prec)
        if self.lo.mantissa <= 0:
            raise ValueError("log2 requires a certainly positive enclosure")
        return Enclosure(_log2_dyadic(self.lo, p).lo, _log2_dyadic(self.hi, p).hi)

    def min_with(self, other: "Enclosure") -> "Enclosure":
        """Enclosure of min(x, y) given enclosures of x and y."""
        return Enclosure(min(self.lo, other.lo), min(self.hi, other.hi))

    def hull(self, other: "Enclosure") -> "Enclosure":
        lo = self.lo if self.lo <= other.lo else other.lo
        hi = self.hi if self.hi >= other.hi else other.hi
        return Enclosure(lo, hi)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        lo, hi = self.float_bounds()
        tag = "=" if self.is_exact else "~"
        return f"Enclosure[{lo!r}, {hi!r}]{tag}"


ZERO = Enclosure.exact_int(0)
ONE = Enclosure.exact_int(1)


# ---------------------------------------------------------------------------
# Power kernel
# ---------------------------------------------------------------------------

def _pow_bracket(p_int: int, shift: int, sign: int, b: int, prec: int) -> Enclosure:
    """Enclosure of (p_int * 2**shift) ** (sign / b), p_int >= 1, b >= 1.

    Exactness is detected completely: the value is dyadic iff the odd part of
    p_int is a perfect b-th power whose root divides out (and, for negative
    sign, the root is 1).
    """
    odd, k = _split_pow2(p_int)
    total_shift = k + shift
    root = _iroot(odd, b)
    if root ** b == odd and total_shift % b == 0:
        e = total_shift // b
        if sign > 0:
            return Enclosure.exact_dyadic(root, e)
        if root == 1:
            return Enclosure.exact_dyadic(1, -e)
        return Enclosure.from_fraction(Fraction(1, root << e) if e >= 0
                                       else Fraction(1 << -e, root), prec)

    est = (math.log2(p_int) + shift) * sign / b
    s = prec + 2 - math.floor(est)
    for _ in range(4):
        if sign > 0:
            # n = floor(2**s * (p * 2**shift)**(1/b)):  n**b <= p * 2**(s*b + shift)
            d = s * b + shift
            if d >= 0:
                n = _iroot(p_int << d, b)
            else:
                n = _iroot(p_int >> -d, b)
                while (n + 1) ** b * (1 << -d) <= p_int:
                    n += 1
        else:
            # n = floor(2**s / (p * 2**shift)**(1/b)):  n**b * p <= 2**(s*b - shift)
            d = s * b - shift
            if d < 0:
                n = 0
            else:
                n = _iroot((1 << d) // p_int, b)
                while (n + 1) ** b * p_int <= (1 << d):
                    n += 1
        if n.bit_length() >= prec + 2:
            break
        s += prec + 2 - n.bit_length() + 1
    lo = DirectedReal(n, -s, DOWN)
    hi = DirectedReal(n + 1, -s, UP)
    return Enclosure(lo, hi)


def dir_pow(q: int, e: Union[Fraction, int], prec: Optional[int] = None) -> Enclosure:
    """Enclosure of q**e for an integer q >= 1 and rational exponent e.

    Relative width is at most 2**(1-prec); both bounds coincide exactly when
    q**e is a dyadic rational.
    """
    p = _resolve_prec(prec)
    if q < 1:
        raise ValueError(f"base must be a positive integer, got {q}")
    e = Fraction(e)
    if q == 1 or e == 0:
        return ONE
    a, b = e.numerator, e.denominator
    return _pow_bracket(q ** abs(a), 0, 1 if a > 0 else -1, b, p)


def _dyadic_pow(x: DirectedReal, s: Fraction, prec: int) -> Enclosure:
    """Enclosure of x**s for a positive dyadic x and rational s."""
    if x.mantissa <= 0:
        raise ValueError("power of a nonpositive dyadic")
    a, b = s.numerator, s.denominator
    return _pow_bracket(x.mantissa ** abs(a), x.exponent * abs(a), 1 if a > 0 else -1, b, prec)


# ---------------------------------------------------------------------------
# Logarithm kernel
# ---------------------------------------------------------------------------

def _log2_bracket(n: int, prec: int) -> Enclosure:
    """Enclosure of log2(n) for an integer n >= 1; exact for powers of two.

    Uses the classical square-and-renormalize scheme: track m**(2**t) / 2**E
    as a certified fixed-point interval, emit one exponent bit per squaring.
    """
    if n < 1:
        raise ValueError("log2 of a nonpositive integer")
    if n & (n - 1) == 0:
        return Enclosure.exact_int(n.bit_length() - 1)
    steps = prec + 3
    g = steps + 10
    e0 = n.bit_length() - 1
    lo, rem = divmod(n << g, 1 << e0)
    hi = lo + (1 if rem else 0)
    acc = 0
    unit2 = 2 << g
    half = 1 << (g - 1)
    for _ in range(steps):
        lo = (lo * lo) >> g
        hi = ((hi * hi) + (1 << g) - 1) >> g
        acc <<= 1
        while hi > unit2:
            lo >>= 1
            hi = (hi + 1) >> 1
            acc += 1
    if not (half <= lo and hi <= (4 << g)):  # pragma: no cover - guard margin
        raise ArithmeticError("log2 working interval escaped its window")
    # log2(n) = e0 + (acc + log2 v)/2**steps with v in [1/2, 2] certified.
    lo_dr = DirectedReal((e0 << steps) + acc - 1, -steps, DOWN)
    hi_dr = DirectedReal((e0 << steps) + acc + 1, -steps, UP)
    return Enclosure(lo_dr, hi_dr)


def log2_int(n: int, prec: Optional[int] = None) -> Enclosure:
    """Enclosure of log2(n) for an integer n >= 1."""
    return _log2_bracket(n, _resolve_prec(prec))


def _log2_dyadic(x: DirectedReal, prec: int) -> Enclosure:
    """Enclosure of log2 of a positive dyadic value."""
    if x.mantissa <= 0:
        raise ValueError("log2 of a nonpositive dyadic")
    inner = _log2_bracket(x.mantissa, prec)
    return inner.add_int(x.exponent)


def _power_exponent_of(a: int, b: int) -> Optional[int]:
    """k >= 1 with b**k == a, if one exists."""
    if a == b:
        return 1
    if a < b:
        return None
    k = round(math.log2(a) / math.log2(b))
    for cand in (k - 1, k, k + 1):
        if cand >= 1 and b ** cand == a:
            return cand
    return None


def log_ratio(a: int, b: int, prec: Optional[int] = None) -> Enclosure:
    """Enclosure of log(a)/log(b) for integers a, b >= 2.

    Exact when a is an integer power of b; also exact when b is a power of a
    and the resulting reciprocal is dyadic.
    """
    p = _resolve_prec(prec)
    if a < 2 or b < 2:
        raise ValueError("log_ratio requires both arguments >= 2")
    k = _power_exponent_of(a, b)
    if k is not None:
        return Enclosure.exact_int(k)
    k = _power_exponent_of(b, a)
    if k is not None:
        return Enclosure.from_fraction(Fraction(1, k), p)
    la = _log2_bracket(a, p + 8)
    lb = _log2_bracket(b, p + 8)
    return la.div(lb, p)

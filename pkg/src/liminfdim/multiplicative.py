"""Bounds and covers for the multiplicative variant.

The multiplicative set replaces the per-coordinate distance condition with a
condition on the product of distances.  Its dimension is bracketed by the
closed forms

    d - 1 + (1 - tau*alpha)/(tau + 1)  <=  dim  <=  d - 1 + 1/(tau + 1),

and the cover side of the story reduces to covering the hyperbolic region
{x in [0,1]^2 : x1*x2 <= gamma} by dyadic squares.  The cover here stacks,
for each dyadic column [2^-k-1, 2^-k], a row of squares whose side equals
the region's height bound in that column, stops where squares would outgrow
their column, and closes the remainder with one corner square; its s-cost
scales like gamma^(s-1) for s in (1, 2], the exponent the cover-cost
argument needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .numerics import Enclosure, _resolve_prec, _split_pow2, dir_pow


def mult_bounds(
    tau: Fraction,
    alpha: Union[Fraction, Enclosure],
    d: int,
    prec: Optional[int] = None,
) -> tuple[Union[Fraction, Enclosure], Fraction]:
    """(lower, upper) dimension bounds for the multiplicative set.

    lower = d - 1 + (1 - tau*alpha)/(tau+1), clamped at d - 1;
    upper = d - 1 + 1/(tau+1).  Exact rationals when alpha is a Fraction.
    """
    tau = Fraction(tau)
    if tau <= 0:
        raise ValueError("tau must be positive")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    upper = d - 1 + Fraction(1, tau + 1)
    if isinstance(alpha, Enclosure):
        p = _resolve_prec(prec)
        inner = (-alpha.mul_frac(tau, p)).add_int(1)
        lower = inner.mul_frac(Fraction(1, tau + 1), p).add_int(d - 1)
        floor_val = Fraction(d - 1)
        lo_f = max(lower.lo.as_fraction(), floor_val)
        hi_f = max(lower.hi.as_fraction(), floor_val)
        return Enclosure.from_endpoints(lo_f, hi_f, p), upper
    alpha = Fraction(alpha)
    lower_f = d - 1 + (1 - tau * alpha) / (tau + 1)
    return max(lower_f, Fraction(d - 1)), upper


def mult_cost_exponent(d: int, tau: Fraction, s: Fraction) -> Fraction:
    """Exponent of q in the s-cost of the lattice of shifted covers.

    d - s - tau*(s - d + 1): zero exactly at s = d - 1 + 1/(tau+1) and
    negative above it, which is what drives the upper bound.
    """
    tau, s = Fraction(tau), Fraction(s)
    return d - s - tau * (s - d + 1)


@dataclass(frozen=True)
class Square:
    """Axis-aligned closed square [x, x+side] x [y, y+side], dyadic corners."""

    x: Fraction
    y: Fraction
    side: Fraction

    def covers(self, px: Fraction, py: Fraction) -> bool:
        return self.x <= px <= self.x + self.side and self.y <= py <= self.y + self.side


@dataclass(frozen=True)
class SquareCover:
    """Dyadic squares covering {x in [0,1]^2 : x1*x2 <= gamma}."""

    gamma: Fraction
    squares: tuple[Square, ...]

    def covers(self, px: Fraction, py: Fraction) -> bool:
        return any(sq.covers(px, py) for sq in self.squares)

    def total_squares(self) -> int:
        return len(self.squares)


def hyperbolic_cover(
    gamma: Fraction,
    s: Fraction,
    prec: Optional[int] = None,
) -> tuple[SquareCover, Enclosure]:
    """Column-by-column square cover of the hyperbolic region, with s-cost.

    gamma must be a dyadic power 2**-K.  Columns k = 0..ceil(K/2)-1 get
    max(1, 2**(K-2k-2)) squares of side 2**(k+1-K) (the height bound
    gamma * 2**(k+1)); the transposed copies cover the other axis and a
    single corner square of side 2**-ceil(K/2) holds the rest.  The s-cost
    stays within a constant multiple of gamma**(s-1) for s in (1, 2].
    """
    gamma = Fraction(gamma)
    s = Fraction(s)
    p = _resolve_prec(prec)
    if not Fraction(1) >= gamma > 0:
        raise ValueError("gamma must lie in (0, 1]")
    odd_num, _ = _split_pow2(gamma.numerator)
    odd_den, k_den = _split_pow2(gamma.denominator)
    if odd_num != 1 or odd_den != 1:
        raise ValueError("gamma must be a dyadic power 2**-K")
    big_k = k_den - (gamma.numerator.bit_length() - 1)
    if not (1 < s <= 2):
        raise ValueError("the cost exponent is meaningful for s in (1, 2] only")

    if big_k == 0:
        sq = Square(Fraction(0), Fraction(0), Fraction(1))
        return SquareCover(gamma, (sq,)), Enclosure.exact_int(1)

    squares: list[Square] = []
    cost = Enclosure.exact_int(0)
    half_cols = -(-big_k // 2)  # ceil(K/2)
    for k in range(half_cols):
        side = Fraction(1, 1 << (big_k - k - 1))
        count = max(1, 1 << max(0, big_k - 2 * k - 2))
        x0 = Fraction(1, 1 << (k + 1))
        x0 = min(x0, 1 - side)  # keep the lone wide square inside the unit box
        for j in range(count):
            x = x0 + j * side
            squares.append(Square(x, Fraction(0), side))
            squares.append(Square(Fraction(0), x, side))
        term = dir_pow(2, -s * (big_k - k - 1), p).scale_int(2 * count)
        cost = cost + term
    corner_side = Fraction(1, 1 << half_cols)
    squares.append(Square(Fraction(0), Fraction(0), corner_side))
    cost = cost + dir_pow(2, -s * half_cols, p)
    return SquareCover(gamma, tuple(squares)), cost

"""Exact one-dimensional level sets on the torus and their intersections.

A level set for modulus q is the union of q open arcs centred at the shifted
rationals (p + theta)/q.  Irrational radii are handled by a sandwich: every
set is stored as an inner and an outer union of arcs with endpoints on a
common dyadic grid, and the true set always lies between them.  All endpoint
arithmetic is exact integer arithmetic on that grid, so intersections,
component counts, lengths and gaps are certified, never approximated.

Higher-dimensional boxes are coordinate products of these 1-d sets and are
never materialised; see ``prefix_intersection``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .numerics import Enclosure, _resolve_prec, dir_pow
from .sequences import QSequence


class BudgetExceededError(RuntimeError):
    """Component budget would be exceeded; carries the partial result."""

    def __init__(self, level: int, partial: Optional["PrefixResult"] = None):
        super().__init__(f"component budget exceeded while building level {level}")
        self.level = level
        self.partial = partial


class IndeterminateRadiusError(ArithmeticError):
    """A radius enclosure straddles an ordering threshold; retry with more bits."""


DEFAULT_COMPONENT_BUDGET = 10 ** 7


@dataclass(frozen=True)
class CertifiedCount:
    """Integer range certified to contain the true count."""

    min: int
    max: int

    def __post_init__(self) -> None:
        if self.min > self.max:
            raise ValueError(f"inverted count range [{self.min}, {self.max}]")

    def __mul__(self, other: "CertifiedCount") -> "CertifiedCount":
        return CertifiedCount(self.min * other.min, self.max * other.max)

    def __pow__(self, d: int) -> "CertifiedCount":
        return CertifiedCount(self.min ** d, self.max ** d)

    def is_exact(self) -> bool:
        return self.min == self.max


RadiusFn = Callable[[int, int], Enclosure]


@dataclass(frozen=True)
class LevelParams:
    """Shift vector, shrinking exponent and dimension for a family of levels.

    The interval radius in x-space defaults to q**-(1+tau); a custom radius
    function (q, prec) -> Enclosure can replace it, e.g. for constant radii.
    """

    theta: tuple[Fraction, ...]
    tau: Fraction
    d: int = 1
    radius: Optional[RadiusFn] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", tuple(Fraction(t) for t in self.theta))
        object.__setattr__(self, "tau", Fraction(self.tau))
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if len(self.theta) != self.d:
            raise ValueError(f"need {self.d} shift components, got {len(self.theta)}")
        for t in self.theta:
            if not 0 <= t < 1:
                raise ValueError(f"shift components must lie in [0,1), got {t}")
        if self.tau <= 0:
            raise ValueError("tau must be positive")

    def radius_enclosure(self, q: int, prec: Optional[int] = None) -> Enclosure:
        if self.radius is not None:
            enc = self.radius(q, prec)
        else:
            enc = dir_pow(q, -(1 + self.tau), prec)
        if enc.lo.mantissa <= 0:
            raise ValueError(f"radius for q={q} must be certainly positive")
        return enc


def constant_radius(value: Fraction) -> RadiusFn:
    """Radius function ignoring q; value must be dyadic to stay exact."""
    value = Fraction(value)

    def fn(q: int, prec: Optional[int]) -> Enclosure:
        return Enclosure.from_fraction(value, prec)

    return fn


# ---------------------------------------------------------------------------
# Arc lists: unions of disjoint open arcs with endpoints on a dyadic grid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArcList:
    """Sorted disjoint open arcs on the torus, endpoints integers / 2**scale.

    An arc (lo, hi) means the open set {x mod 1 : lo < x * 2**scale < hi};
    hi may exceed 2**scale for at most the last arc (wrap across 0).
    Touching arcs stay separate: their shared endpoint belongs to neither,
    which preserves exact component counts.
    """

    scale: int
    arcs: tuple[tuple[int, int], ...]
    full: bool = False

    @property
    def size(self) -> int:
        return 1 << self.scale

    @property
    def count(self) -> int:
        return 1 if self.full else len(self.arcs)

    def wraps(self) -> bool:
        return bool(self.arcs) and self.arcs[-1][1] > self.size

    def is_empty(self) -> bool:
        return not self.full and not self.arcs

    @staticmethod
    def full_circle(scale: int) -> "ArcList":
        return ArcList(scale, (), full=True)

    def validate(self) -> None:
        """Invariant check used by the tests."""
        if self.full:
            assert not self.arcs
            return
        size = self.size
        prev_hi = None
        for i, (lo, hi) in enumerate(self.arcs):
            assert 0 <= lo < size, (lo, size)
            assert lo < hi <= lo + size
            assert hi <= size or i == len(self.arcs) - 1, "only the last arc may wrap"
            if prev_hi is not None:
                assert lo >= prev_hi, "arcs must be sorted and disjoint"
            prev_hi = hi
        if self.wraps():
            tail = self.arcs[-1][1] - size
            assert tail <= self.arcs[0][0], "wrapped arc overlaps the first arc"

    def rescale(self, scale: int) -> "ArcList":
        if scale == self.scale:
            return self
        if scale < self.scale:
            raise ValueError("can only rescale to a finer grid")
        k = scale - self.scale
        return ArcList(scale, tuple((lo << k, hi << k) for lo, hi in self.arcs), self.full)

    def total_length(self) -> Fraction:
        if self.full:
            return Fraction(1)
        return Fraction(sum(hi - lo for lo, hi in self.arcs), self.size)

    def max_length(self) -> Fraction:
        if self.full:
            return Fraction(1)
        if not self.arcs:
            return Fraction(0)
        return Fraction(max(hi - lo for lo, hi in self.arcs), self.size)

    def min_gap(self) -> Optional[Fraction]:
        """Smallest gap between consecutive arcs around the circle."""
        if self.full or not self.arcs:
            return None
        if len(self.arcs) == 1:
            lo, hi = self.arcs[0]
            return Fraction(lo + self.size - hi, self.size)
        gaps = [self.arcs[i + 1][0] - self.arcs[i][1] for i in range(len(self.arcs) - 1)]
        gaps.append(self.arcs[0][0] + self.size - self.arcs[-1][1])
        return Fraction(min(gaps), self.size)

    def contains(self, x: Fraction) -> bool:
        """Exact membership of a rational point (taken mod 1)."""
        if self.full:
            return True
        x = Fraction(x) % 1
        num, den = x.numerator, x.denominator
        scaled = num << self.scale  # compare against endpoint * den
        for lo, hi in self.arcs:
            if lo * den < scaled < hi * den:
                return True
            if hi > self.size and lo * den < scaled + (den << self.scale) < hi * den:
                return True
        return False

    def _segments(self) -> list[tuple[int, int]]:
        segs: list[tuple[int, int]] = []
        size = self.size
        for lo, hi in self.arcs:
            if hi <= size:
                segs.append((lo, hi))
            else:
                segs.append((lo, size))
                segs.append((0, hi - size))
        segs.sort()
        return segs

    def intersect(self, other: "ArcList") -> "ArcList":
        scale = max(self.scale, other.scale)
        a, b = self.rescale(scale), other.rescale(scale)
        if a.full:
            return b
        if b.full:
            return a
        sa, sb = a._segments(), b._segments()
        out: list[tuple[int, int]] = []
        i = j = 0
        while i < len(sa) and j < len(sb):
            lo = max(sa[i][0], sb[j][0])
            hi = min(sa[i][1], sb[j][1])
            if lo < hi:
                out.append((lo, hi))
            if sa[i][1] <= sb[j][1]:
                i += 1
            else:
                j += 1
        size = 1 << scale
        # Re-glue the piece that crosses 0 when both operands run through it.
        if a.wraps() and b.wraps() and len(out) >= 2:
            if out[0][0] == 0 and out[-1][1] == size:
                head = out.pop(0)
                last = out.pop()
                out.append((last[0], size + head[1]))
        return ArcList(scale, tuple(out))


# ---------------------------------------------------------------------------
# Certified level sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorusIntervalSet:
    """Sandwich inner ⊆ E ⊆ outer of a torus set by two arc unions."""

    inner: ArcList
    outer: ArcList

    @property
    def count(self) -> CertifiedCount:
        if self.inner.full:
            return CertifiedCount(1, 1)
        return CertifiedCount(self.inner.count, self.outer.count)

    @property
    def is_full(self) -> bool:
        return self.inner.full

    def intersect(self, other: "TorusIntervalSet") -> "TorusIntervalSet":
        return TorusIntervalSet(
            inner=self.inner.intersect(other.inner),
            outer=self.outer.intersect(other.outer),
        )

    def length_bounds(self) -> tuple[Fraction, Fraction]:
        return self.inner.total_length(), self.outer.total_length()

    def validate(self) -> None:
        self.inner.validate()
        self.outer.validate()


def _scale_for(radii: Sequence[Enclosure], prec: int) -> int:
    """Common grid scale fine enough to hold every radius endpoint exactly."""
    s = prec + 8
    for enc in radii:
        for dr in (enc.lo, enc.hi):
            s = max(s, -dr.exponent + 2)
    return s


def _radius_grid(enc: Enclosure, scale: int) -> tuple[int, int]:
    """Radius endpoints as grid integers, rounded inward/outward as needed."""
    lo, hi = enc.lo, enc.hi
    r_lo = (lo.mantissa << (lo.exponent + scale)) if lo.exponent + scale >= 0 \
        else (lo.mantissa >> -(lo.exponent + scale))
    k = hi.exponent + scale
    r_hi = (hi.mantissa << k) if k >= 0 else -((-hi.mantissa) >> -k)
    return r_lo, r_hi


def _enumerate_arcs(
    q: int,
    theta: Fraction,
    r_lo: int,
    r_hi: int,
    scale: int,
    windows: Optional[ArcList] = None,
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Inner and outer arcs for the residues whose arcs can meet `windows`.

    With windows=None all q residues are produced.  Returned arcs are
    normalised mod 1 (lo in [0, size)) and sorted.
    """
    size = 1 << scale
    tn, td = theta.numerator, theta.denominator
    den = q * td

    if windows is None or windows.full:
        residues = range(q)
    else:
        seen = set()
        residues = []
        for wlo, whi in windows.arcs:
            # centres with (m + theta)/q * size in [wlo - r_hi, whi + r_hi], plus slack
            lo_num = (wlo - r_hi) * den - (tn << scale)
            hi_num = (whi + r_hi) * den - (tn << scale)
            m_min = -(-lo_num // (td << scale)) - 1
            m_max = hi_num // (td << scale) + 1
            for m in range(m_min, m_max + 1):
                r = m % q
                if r not in seen:
                    seen.add(r)
                    residues.append(r)

    inner: list[tuple[int, int]] = []
    outer: list[tuple[int, int]] = []
    for m in residues:
        num = (m * td + tn) << scale
        cf, rem = divmod(num, den)
        cl = cf + (1 if rem else 0)
        a, b = cl - r_lo, cf + r_lo
        if a < b:
            lo = a % size
            inner.append((lo, lo + (b - a)))
        a, b = cf - r_hi, cl + r_hi
        lo = a % size
        outer.append((lo, lo + (b - a)))
    inner.sort()
    outer.sort()
    return inner, outer


def build_level(
    q: int,
    params: LevelParams,
    prec: Optional[int] = None,
    coord: int = 0,
    scale: Optional[int] = None,
    windows: Optional[ArcList] = None,
) -> TorusIntervalSet:
    """Certified sandwich of one coordinate's level set for modulus q.

    The set is the union over p = 0..q-1 of open arcs of the level radius
    centred at (p + theta)/q.  A radius certainly above 1/(2q) covers the
    torus; a radius enclosure straddling 1/(2q) raises
    ``IndeterminateRadiusError`` (retry with higher precision).
    """
    if q < 1:
        raise ValueError("modulus must be a positive integer")
    renc = params.radius_enclosure(q, prec)
    p = _resolve_prec(prec)
    if scale is None:
        scale = _scale_for([renc], p)
    r_lo_f = renc.lo.as_fraction()
    r_hi_f = renc.hi.as_fraction()
    half_spacing = Fraction(1, 2 * q)
    if r_lo_f > half_spacing:
        return TorusIntervalSet(ArcList.full_circle(scale), ArcList.full_circle(scale))
    if r_hi_f > half_spacing:
        raise IndeterminateRadiusError(
            f"radius enclosure for q={q} straddles 1/(2q); increase the precision")
    r_lo, r_hi = _radius_grid(renc, scale)
    theta = params.theta[coord]
    inner, outer = _enumerate_arcs(q, theta, r_lo, r_hi, scale, windows)
    return TorusIntervalSet(ArcList(scale, tuple(inner)), ArcList(scale, tuple(outer)))


def intersect(a: TorusIntervalSet, b: TorusIntervalSet) -> TorusIntervalSet:
    """Intersection of two certified sets (inner with inner, outer with outer)."""
    return a.intersect(b)


# ---------------------------------------------------------------------------
# Finite-depth enumeration of nested intersections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LevelStats:
    """Per-level summary of the running intersection (d-dimensional counts)."""

    level: int
    q: int
    count: CertifiedCount
    per_coord: tuple[CertifiedCount, ...]
    max_len: Fraction          # largest outer component length, any coordinate
    min_gap: Optional[Fraction]  # smallest outer gap, any coordinate
    total_len: Fraction        # largest per-coordinate outer total length


@dataclass(frozen=True)
class PrefixResult:
    sets: tuple[TorusIntervalSet, ...]   # one per coordinate
    levels: tuple[LevelStats, ...]

    @property
    def final_count(self) -> CertifiedCount:
        return self.levels[-1].count


def _combined_stats(level: int, q: int, sets: Sequence[TorusIntervalSet]) -> LevelStats:
    per_coord = tuple(s.count for s in sets)
    combined = per_coord[0]
    for c in per_coord[1:]:
        combined = combined * c
    max_len = max(s.outer.max_length() for s in sets)
    gaps = [g for s in sets if (g := s.outer.min_gap()) is not None]
    total = max(s.outer.total_length() for s in sets)
    return LevelStats(level, q, combined, per_coord, max_len, min(gaps) if gaps else None, total)


def _candidate_estimate(windows: ArcList, q: int, r_hi: int) -> int:
    """Upper bound on the number of residues the next level will enumerate."""
    if windows.full:
        return q
    total = 0
    size = windows.size
    for wlo, whi in windows.arcs:
        total += ((whi - wlo + 2 * r_hi) * q) // size + 3
    return total


def prefix_intersection(
    qs: QSequence,
    params: LevelParams,
    depth: Optional[int] = None,
    prec: Optional[int] = None,
    component_budget: int = DEFAULT_COMPONENT_BUDGET,
) -> PrefixResult:
    """Intersect the first `depth` level sets coordinate by coordinate.

    d-dimensional quantities are derived from the 1-d factors (the sets are
    exact coordinate products), so nothing d-dimensional is materialised.
    Raises ``BudgetExceededError`` carrying the partial result when the next
    level would exceed the component budget.
    """
    p = _resolve_prec(prec)
    depth = len(qs) if depth is None else depth
    if not 1 <= depth <= len(qs):
        raise ValueError(f"depth must be in 1..{len(qs)}")

    radii = [params.radius_enclosure(q, p) for q in qs.terms[:depth]]
    scale = _scale_for(radii, p)

    if qs.terms[0] > component_budget:
        raise BudgetExceededError(1, None)
    sets = [build_level(qs.terms[0], params, p, coord=i, scale=scale)
            for i in range(params.d)]
    levels = [_combined_stats(1, qs.terms[0], sets)]

    for j in range(2, depth + 1):
        q = qs.terms[j - 1]
        r_lo, r_hi = _radius_grid(radii[j - 1], scale)
        for i in range(params.d):
            est = _candidate_estimate(sets[i].outer, q, r_hi)
            if est > component_budget:
                raise BudgetExceededError(j, PrefixResult(tuple(sets), tuple(levels)))
        new_sets = []
        for i in range(params.d):
            lvl = build_level(q, params, p, coord=i, scale=scale,
                              windows=sets[i].outer)
            new_sets.append(sets[i].intersect(lvl))
        sets = new_sets
        levels.append(_combined_stats(j, q, sets))
    return PrefixResult(tuple(sets), tuple(levels))


# ---------------------------------------------------------------------------
# The shifted-rational counting fact
# ---------------------------------------------------------------------------

def count_shifted_rationals(a: Fraction, b: Fraction, theta: Fraction, q: int) -> int:
    """Exact number of p in {0,...,q-1} with (p + theta)/q in the open (a, b).

    Always within [(b-a)q - 2, (b-a)q + 2] of the interval's scaled length.
    """
    a, b, theta = Fraction(a), Fraction(b), Fraction(theta)
    if not 0 <= a < b <= 1:
        raise ValueError("need 0 <= a < b <= 1")
    if q < 1:
        raise ValueError("q must be a positive integer")
    # p > a*q - theta  and  p < b*q - theta, strictly
    lo = a * q - theta
    hi = b * q - theta
    p_min = lo.numerator // lo.denominator + 1          # smallest integer > lo
    p_max = -((-hi.numerator) // hi.denominator) - 1    # largest integer < hi
    p_min = max(p_min, 0)
    p_max = min(p_max, q - 1)
    return max(0, p_max - p_min + 1)

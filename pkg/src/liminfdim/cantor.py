"""Nested subdivision trees carrying a uniform unit-mass measure.

The tree refines the level sets: level 1 keeps every arc of the first level;
below that, each box keeps a fixed number of children per level (the
pessimistic branching count floor(q_k / q_{k-1}**(1+tau)) per coordinate),
always the admissible children with the smallest residues, so construction
is deterministic.  Mass is distributed uniformly: all boxes of one level
carry equal measure, and children split their parent's measure exactly.

Trees are lazy.  Within the node budget whole levels can be enumerated;
beyond it only the paths demanded by queries are materialised, which keeps
ball-measure queries cheap even when a level has 2**64 boxes.

Ball queries return certified enclosures: box/ball intersection tests use
outer arcs and the upper ball radius, containment tests use the lower ball
radius, so the reported range always brackets the true measure.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .dimension import RegimeViolationError, branching_factors
from .level_sets import BudgetExceededError, LevelParams
from .numerics import Enclosure, _resolve_prec
from .sequences import QSequence

DEFAULT_NODE_BUDGET = 10 ** 6
_QUERY_FANOUT_CAP = 1 << 14


@dataclass(frozen=True)
class Ball:
    """Closed sup-norm ball with a certified radius."""

    center: tuple[Fraction, ...]
    radius: Enclosure

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", tuple(Fraction(c) for c in self.center))
        if self.radius.lo.mantissa <= 0:
            raise ValueError("ball radius must be certainly positive")


@dataclass(frozen=True)
class HolderCertificate:
    """Worst observed mass-to-radius ratio over a sampled family of balls."""

    s: Fraction
    samples: int
    seed: int
    max_ratio: Fraction        # upper bound of the worst certified ratio
    worst_ball: Ball

    def max_ratio_float(self) -> float:
        return float(self.max_ratio)


class CantorTree:
    """Finite-depth nested subdivision of the level-set intersection."""

    def __init__(
        self,
        qs: QSequence,
        params: LevelParams,
        depth: Optional[int] = None,
        prec: Optional[int] = None,
        node_budget: int = DEFAULT_NODE_BUDGET,
    ):
        self.prec = _resolve_prec(prec)
        self.depth = len(qs) if depth is None else depth
        if not 1 <= self.depth <= len(qs):
            raise ValueError(f"depth must be in 1..{len(qs)}")
        self.qs = qs
        self.params = params
        self.node_budget = node_budget
        self.branching_1d = branching_factors(qs, params.tau, self.depth, self.prec)

        self._radii = [params.radius_enclosure(q, self.prec) for q in qs.terms[: self.depth]]
        self._r_lo = [r.lo.as_fraction() for r in self._radii]
        self._r_hi = [r.hi.as_fraction() for r in self._radii]

        # box separation >= 1/(2 q_k) per level, certified via the upper radius
        self._sep_lo: list[Fraction] = []
        for k in range(self.depth):
            q = qs.terms[k]
            sep = Fraction(1, q) - 2 * self._r_hi[k]
            if sep < Fraction(1, 2 * q):
                raise RegimeViolationError(
                    k + 1, f"level radius too large for the 1/(2 q) separation at q={q}")
            self._sep_lo.append(sep)

        # cumulative 1-d node counts and uniform per-level measures
        self._count_1d = []
        total = 1
        for b in self.branching_1d:
            total *= b
            self._count_1d.append(total)
        self._measures = [Fraction(1, c ** params.d) for c in self._count_1d]

        # nesting sanity on the leftmost path of each coordinate
        for i in range(params.d):
            m = 0
            for k in range(1, self.depth):
                start, avail = self.child_range_1d(i, k, m)
                if avail < self.branching_1d[k]:
                    raise RegimeViolationError(
                        k + 1, f"only {avail} admissible children, need {self.branching_1d[k]}")
                m = start

    # -- structure ---------------------------------------------------------

    def level_count_1d(self, level: int) -> int:
        """Number of level-k nodes of one coordinate factor."""
        return self._count_1d[level - 1]

    def level_count(self, level: int) -> int:
        return self._count_1d[level - 1] ** self.params.d

    def node_measure(self, level: int) -> Fraction:
        """Measure of any level-k node; the measure is uniform per level.

        Children of a node sum exactly to the node's measure:
        branching ** d * measure(k+1) == measure(k) as exact rationals.
        """
        if level == 0:
            return Fraction(1)
        return self._measures[level - 1]

    def center_1d(self, coord: int, level: int, m: int) -> Fraction:
        return (m + self.params.theta[coord]) / self.qs.terms[level - 1]

    def arc_1d(self, coord: int, level: int, m: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """(inner_lo, inner_hi, outer_lo, outer_hi) of a node's 1-d arc, unrolled."""
        c = self.center_1d(coord, level, m)
        k = level - 1
        return (c - self._r_lo[k], c + self._r_lo[k], c - self._r_hi[k], c + self._r_hi[k])

    def child_range_1d(self, coord: int, level: int, m: int) -> tuple[int, int]:
        """Start and size of the admissible child residue range under node m.

        Admissibility is certified containment: the child's outer arc must
        lie inside the parent's inner arc.
        """
        if not 1 <= level < self.depth:
            raise ValueError("children exist for levels 1..depth-1")
        a, b, _, _ = self.arc_1d(coord, level, m)
        q_next = self.qs.terms[level]
        r_next = self._r_hi[level]
        theta = self.params.theta[coord]
        lo = (a + r_next) * q_next - theta
        hi = (b - r_next) * q_next - theta
        m_min = -((-lo.numerator) // lo.denominator)     # ceil
        m_max = hi.numerator // hi.denominator           # floor
        return m_min, max(0, m_max - m_min + 1)

    def children_1d(self, coord: int, level: int, m: int) -> range:
        """The selected children: the `branching` smallest admissible residues."""
        start, avail = self.child_range_1d(coord, level, m)
        b = self.branching_1d[level]
        if avail < b:
            raise RegimeViolationError(
                level + 1, f"only {avail} admissible children under residue {m}, need {b}")
        return range(start, start + b)

    def nodes_1d(self, coord: int, level: int) -> list[int]:
        """All level-k residues of one coordinate factor, within the budget."""
        if self.level_count_1d(level) > self.node_budget:
            raise BudgetExceededError(level)
        nodes = list(range(self.qs.terms[0]))
        for k in range(1, level):
            nxt: list[int] = []
            for m in nodes:
                nxt.extend(self.children_1d(coord, k, m))
            nodes = nxt
        return nodes

    def min_separation(self, level: int) -> Fraction:
        """Certified lower bound on the gap between distinct level-k boxes."""
        return self._sep_lo[level - 1]

    # -- point and leaf sampling -------------------------------------------

    def sample_leaf_path(self, coord: int, rng: random.Random) -> list[int]:
        m = rng.randrange(self.qs.terms[0])
        path = [m]
        for k in range(1, self.depth):
            start, _ = self.child_range_1d(coord, k, path[-1])
            path.append(start + rng.randrange(self.branching_1d[k]))
        return path

    def sample_point(self, rng: random.Random, perturb: bool = True) -> tuple[Fraction, ...]:
        """A leaf centre, optionally perturbed but kept inside the leaf."""
        point = []
        for i in range(self.params.d):
            path = self.sample_leaf_path(i, rng)
            c = self.center_1d(i, self.depth, path[-1])
            if perturb:
                # dyadic offset within half the certified leaf radius
                t = Fraction(rng.getrandbits(24) - (1 << 23), 1 << 24)
                c = c + t * self._r_lo[self.depth - 1]
            point.append(c % 1)
        return tuple(point)

    # -- measure queries ----------------------------------------------------

    def _window_counts(self, coord: int, level_limit: int, center: Fraction,
                       rad_hi: Fraction, rad_lo: Fraction) -> list[tuple[int, int]]:
        """Per level: (number of tree arcs meeting the closed window
        [center - rad_hi, center + rad_hi], number certainly inside the open
        ball of radius >= rad_lo), walking only candidate subtrees."""
        theta = self.params.theta[coord]
        counts: list[tuple[int, int]] = []
        candidates: Optional[list[int]] = None
        for k in range(level_limit):
            q = self.qs.terms[k]
            r_hi = self._r_hi[k]
            r_lo_lvl = self._r_lo[k]

            def ranges_for(lo_f: Fraction, hi_f: Fraction) -> list[tuple[int, int]]:
                out = []
                for shift in (-1, 0, 1):
                    lo = (lo_f + shift) * q - theta
                    hi = (hi_f + shift) * q - theta
                    m_lo = -((-lo.numerator) // lo.denominator)
                    m_hi = hi.numerator // hi.denominator
                    if m_lo <= m_hi:
                        out.append((m_lo, m_hi))
                return out

            # arcs meeting the window: centre within rad_hi + r_hi (closed);
            # arcs with outer arc inside the closed ball: centre within
            # rad_lo - r_hi (an inverted window yields no ranges)
            meet = ranges_for(center - rad_hi - r_hi, center + rad_hi + r_hi)
            inside = ranges_for(center - rad_lo + r_hi, center + rad_lo - r_hi)

            if candidates is None:
                child_ranges = [(0, q - 1)]
            else:
                child_ranges = []
                for m in candidates:
                    start, _ = self.child_range_1d(coord, k, m)
                    child_ranges.append((start, start + self.branching_1d[k] - 1))

            def overlap_count(a: list[tuple[int, int]], b: list[tuple[int, int]]) -> int:
                total = 0
                for (a0, a1) in a:
                    for (b0, b1) in b:
                        total += max(0, min(a1, b1) - max(a0, b0) + 1)
                return total

            n_meet = overlap_count(child_ranges, meet)
            n_inside = overlap_count(child_ranges, inside)
            counts.append((n_meet, n_inside))

            new_candidates: list[int] = []
            overflow = False
            for (c0, c1) in child_ranges:
                for (w0, w1) in meet:
                    lo_m, hi_m = max(c0, w0), min(c1, w1)
                    if lo_m <= hi_m:
                        if len(new_candidates) + hi_m - lo_m + 1 > _QUERY_FANOUT_CAP:
                            overflow = True
                            break
                        new_candidates.extend(range(lo_m, hi_m + 1))
                if overflow:
                    break
            if overflow:
                break
            candidates = new_candidates
            if not candidates:
                counts.extend([(0, 0)] * (level_limit - k - 1))
                break
        return counts

    def ball_measure(self, ball: Ball) -> Enclosure:
        """Certified enclosure of the tree measure of a closed ball.

        Per level, the mass inside the ball is at most (boxes meeting the
        ball) * level measure and at least (boxes inside the ball) * level
        measure; the final answer intersects the bounds across levels.
        """
        if len(ball.center) != self.params.d:
            raise ValueError("ball dimension mismatch")
        rad_lo = ball.radius.lo.as_fraction()
        rad_hi = ball.radius.hi.as_fraction()
        if rad_lo >= Fraction(1, 2):
            return Enclosure.exact_int(1)

        per_coord = [self._window_counts(i, self.depth, ball.center[i], rad_hi, rad_lo)
                     for i in range(self.params.d)]
        best_hi = Fraction(1)
        best_lo = Fraction(0)
        levels = min(len(c) for c in per_coord)
        for k in range(levels):
            meet = 1
            inside = 1
            for i in range(self.params.d):
                meet *= per_coord[i][k][0]
                inside *= per_coord[i][k][1]
            mu = self.node_measure(k + 1)
            best_hi = min(best_hi, meet * mu)
            best_lo = max(best_lo, inside * mu)
        best_lo = min(best_lo, best_hi)
        return Enclosure.from_endpoints(best_lo, best_hi, self.prec)

    # -- certificates --------------------------------------------------------

    def holder_certificate(self, s: Fraction, samples: int, seed: int) -> HolderCertificate:
        """Sample balls at tree points, log-uniform radii, and report the
        largest certified value of measure / radius**s.

        Evidence, not proof: the principle quantifies over all balls, and
        the analytic lower bound lives in the dimension module.
        """
        s = Fraction(s)
        if not 0 < s < self.params.d + 1:
            raise ValueError("Holder exponent out of range")
        if samples < 1:
            raise ValueError("need at least one sample")
        rng = random.Random(seed)
        r_min = self.min_separation(self.depth) / 4
        # bit lengths stand in for log2(r_min); exact dyadic radii, no floats
        log_lo = r_min.numerator.bit_length() - r_min.denominator.bit_length() - 1
        best: Optional[Fraction] = None
        worst: Optional[Ball] = None
        for _ in range(samples):
            point = self.sample_point(rng, perturb=rng.random() < 0.5)
            u = rng.uniform(log_lo, 0.0)
            e = math.floor(u)
            mantissa = (1 << 30) + rng.getrandbits(30)
            r = Fraction(mantissa, 1 << 31) * Fraction(2) ** (e + 1)
            r = max(r_min, min(Fraction(1), r))
            ball = Ball(point, Enclosure.from_fraction(r))
            mu = self.ball_measure(ball)
            denom = Enclosure.from_fraction(r).pow_frac(s, self.prec)
            ratio = mu.hi.as_fraction() / denom.lo.as_fraction()
            if best is None or ratio > best:
                best = ratio
                worst = ball
        assert best is not None and worst is not None
        return HolderCertificate(s=s, samples=samples, seed=seed,
                                 max_ratio=best, worst_ball=worst)


def build_tree(
    qs: QSequence,
    params: LevelParams,
    depth: Optional[int] = None,
    prec: Optional[int] = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> CantorTree:
    """Construct the subdivision tree (see ``CantorTree``)."""
    return CantorTree(qs, params, depth, prec, node_budget)

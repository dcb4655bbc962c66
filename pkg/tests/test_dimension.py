import math
from fractions import Fraction as F

import pytest

from liminfdim.dimension import (
    RegimeViolationError,
    lower_cantor_count,
    theoretical_dimension,
    upper_cover_count,
    upper_dim_estimate,
)
from liminfdim.numerics import Enclosure
from liminfdim.sequences import PowerSpec, QSequence, RegimeStatus, exponent_stats, generate


class TestTheoreticalDimension:
    def test_rational_path_exact(self):
        assert theoretical_dimension(F(1), F(1, 3), 1).value == F(1, 3)
        assert theoretical_dimension(F(1), F(1, 2), 2).value == F(1, 2)

    def test_alpha_zero(self):
        for tau, d in [(F(1), 1), (F(5, 2), 3), (F(1, 3), 2)]:
            assert theoretical_dimension(tau, F(0), d).value == F(d) / (tau + 1)

    def test_clamp_with_flag(self):
        res = theoretical_dimension(F(2), F(3, 4), 1)
        assert res.value == 0 and res.clamped

    def test_enclosure_path(self):
        alpha = Enclosure.from_fraction(F(1, 3), 128)
        res = theoretical_dimension(F(1), alpha, 1)
        assert not res.clamped
        assert res.value.contains(F(1, 3))
        assert res.value.width() <= F(1, 2 ** 100)


class TestUpperCover:
    def test_two_level_count(self):
        report = upper_cover_count(QSequence((4, 256)), F(1), d=1)
        # 4 * (4 * (1/16) * 256 + 2) = 264, exact since tau = 1
        assert report.count.min == report.count.max == 264

    def test_first_level(self):
        report = upper_cover_count(QSequence((4, 256)), F(1), d=1, depth=1)
        assert report.count.min == report.count.max == 4

    def test_dimension_two_squares(self):
        report = upper_cover_count(QSequence((4, 256)), F(1), d=2)
        assert report.count.min == report.count.max == 264 ** 2

    def test_dim_estimate_value(self):
        est = upper_dim_estimate(QSequence((4, 256)), F(1), d=1)
        # oracle: ln 264 / (2 ln 256)
        oracle = math.log(264) / (2 * math.log(256))
        lo, hi = est.float_bounds()
        assert lo <= oracle <= hi
        assert abs(est.midpoint() - F(oracle)) < F(1, 10 ** 6)
        assert round(float(est.midpoint()), 4) == 0.5028

    def test_doubles_with_dimension(self):
        e1 = upper_dim_estimate(QSequence((4, 256)), F(1), d=1)
        e2 = upper_dim_estimate(QSequence((4, 256)), F(1), d=2)
        assert e2.contains(e1.midpoint() * 2)

    def test_regime_flag_attached(self):
        good = upper_cover_count(generate(PowerSpec(4, F(4)), 3), F(1))
        assert good.regime.status is RegimeStatus.PASS
        bad = upper_cover_count(QSequence((4, 8)), F(1))
        assert bad.regime.status is RegimeStatus.FAIL

    def test_s_cost_decreasing_in_s(self):
        report = upper_cover_count(generate(PowerSpec(4, F(4)), 4), F(1))
        costs = [report.s_cost(F(s, 10)) for s in (2, 3, 4, 5)]
        for c1, c2 in zip(costs, costs[1:]):
            assert c2.hi.as_fraction() < c1.lo.as_fraction()


class TestLowerCantor:
    def test_two_level_count(self):
        sub = lower_cantor_count(QSequence((4, 256)), F(1), d=1)
        assert sub.count == 64 and sub.branching_1d == (4, 16)
        assert sub.s_hat.is_exact and sub.s_hat.lo.as_fraction() == F(3, 8)

    def test_depth_six_closed_form(self):
        qs = generate(PowerSpec(4, F(4)), 6)
        sub = lower_cantor_count(qs, F(1), d=1)
        # closed form for this family: s_hat_J = (2 + sum 4^k) / (2 * 2048)
        assert sub.s_hat.is_exact
        assert sub.s_hat.lo.as_fraction() == F(683, 2048)

    def test_regime_violation(self):
        with pytest.raises(RegimeViolationError) as exc:
            lower_cantor_count(QSequence((4, 8)), F(1))
        assert exc.value.level == 2

    def test_dimension_power(self):
        sub = lower_cantor_count(QSequence((4, 256)), F(1), d=2)
        assert sub.count == 64 ** 2


class TestBracket:
    def test_estimators_tighten_and_order(self):
        # upper estimate stays above the limit and above the subdivision
        # exponent; both approach 1/3 as the depth grows
        qs = generate(PowerSpec(4, F(4)), 6)
        limit = F(1, 3)
        prev_gap = None
        for depth in range(2, 7):
            up = upper_dim_estimate(qs, F(1), depth=depth)
            low = lower_cantor_count(qs, F(1), depth=depth).s_hat
            assert low.hi.as_fraction() <= up.lo.as_fraction()
            assert up.lo.as_fraction() > limit
            gap = up.hi.as_fraction() - low.lo.as_fraction()
            if prev_gap is not None:
                assert gap < prev_gap
            prev_gap = gap
        assert abs(low.midpoint() - limit) < F(2, 10 ** 4)
        assert up.hi.as_fraction() - limit < F(1, 100)

    def test_oracle_consistency_tiny_instance(self):
        # enumerated component count sits between the subdivision count and
        # the cover count for the tiny instance
        from liminfdim.level_sets import LevelParams, prefix_intersection

        qs = QSequence((3, 81))
        enum = prefix_intersection(qs, LevelParams(theta=(F(0),), tau=F(1)))
        count = enum.final_count
        sub = lower_cantor_count(qs, F(1))
        cover = upper_cover_count(qs, F(1))
        assert sub.count <= count.min <= count.max <= cover.count.max
        assert 48 <= count.min and count.max <= 66

    def test_theoretical_matches_stats_alpha(self):
        qs = generate(PowerSpec(4, F(4)), 6)
        stats = exponent_stats(qs)
        dv = theoretical_dimension(F(1), stats.alpha_last, 1)
        # alpha_last sits just below 1/3, the dimension just above it
        assert dv.value.certainly_gt(F(1, 3)) is True
        assert dv.value.certainly_lt(F(1, 3) + F(1, 1000)) is True

import math

import numpy as np
import pytest

from app.core.exceptions import DomainError, GraphInputError
from app.models.schemas import DensityRule, ThresholdKind
from app.service.analytic_service import (
    CFS_CONJECTURED_CONSTANT, AnalyticService, chernoff_bound, density, expected_induced_squares,
    expected_nonadjacent_pairs, threshold, wilson_interval,
)


class TestThreshold:
    def test_as_at_1000(self):
        value = threshold(ThresholdKind.AS, 1000)
        assert value == pytest.approx((math.log(1000) / 1000) ** (1 / 3))
        assert value == pytest.approx(0.190449, abs=2e-6)

    def test_values_at_1000(self):
        assert threshold(ThresholdKind.CONNECTIVITY, 1000) == pytest.approx(0.00690776, rel=1e-4)
        assert threshold(ThresholdKind.CFS_UPPER, 1000) == pytest.approx(0.415565, rel=1e-4)
        assert threshold(ThresholdKind.CFS_LOWER, 1000) == pytest.approx(0.0045779, rel=1e-4)

    def test_conjectured_constant(self):
        assert round(CFS_CONJECTURED_CONSTANT, 4) == 0.7494
        assert CFS_CONJECTURED_CONSTANT ** 2 == pytest.approx((math.sqrt(17) - 3) / 2)
        value = threshold(ThresholdKind.CFS_CONJECTURED, 1000)
        assert value == pytest.approx(CFS_CONJECTURED_CONSTANT / math.sqrt(1000))
        assert value == pytest.approx(0.0236971, abs=2e-6)

    def test_clamped_to_one(self):
        assert threshold(ThresholdKind.CFS_UPPER, 10) == 1.0

    @pytest.mark.parametrize("kind", list(ThresholdKind))
    def test_in_unit_interval(self, kind):
        for n in (2, 3, 10, 100, 10 ** 6):
            assert 0 < threshold(kind, n) <= 1

    @pytest.mark.parametrize("n", [0, 1])
    def test_domain(self, n):
        with pytest.raises(DomainError):
            threshold(ThresholdKind.AS, n)

    def test_ordering_over_desk_range(self):
        for n in np.unique(np.geomspace(100, 10 ** 6, 400).astype(int)):
            n = int(n)
            lower = threshold(ThresholdKind.CFS_LOWER, n)
            conjectured = threshold(ThresholdKind.CFS_CONJECTURED, n)
            upper = threshold(ThresholdKind.CFS_UPPER, n)
            assert lower < conjectured < upper, n
            assert conjectured < threshold(ThresholdKind.AS, n), n

    def test_cfs_upper_crosses_as_only_at_large_n(self):
        # 5·sqrt(log n / n) 在 n 约 2·10^5 之前一直高于 (log n / n)^(1/3)
        assert threshold(ThresholdKind.CFS_UPPER, 1000) > threshold(ThresholdKind.AS, 1000)
        assert threshold(ThresholdKind.CFS_UPPER, 10 ** 5) > threshold(ThresholdKind.AS, 10 ** 5)
        assert threshold(ThresholdKind.CFS_UPPER, 10 ** 6) < threshold(ThresholdKind.AS, 10 ** 6)

    def test_table(self):
        table = AnalyticService().threshold_table(1000)
        assert [row["kind"] for row in table] == [kind.value for kind in ThresholdKind]
        values = {row["kind"]: row["value"] for row in table}
        assert values["AS"] == threshold(ThresholdKind.AS, 1000)


class TestDensity:
    def test_rules(self):
        assert density(DensityRule.ALPHA_CUBE_ROOT_LOG_OVER_N, 1000, 0.8) == pytest.approx(
            0.8 * threshold(ThresholdKind.AS, 1000))
        assert density(DensityRule.ALPHA_INV_SQRT, 1600, 0.9) == pytest.approx(0.9 / 40)
        assert density(DensityRule.ALPHA_LOG_OVER_N, 1000, 1.4) == pytest.approx(
            1.4 * math.log(1000) / 1000)
        assert density(DensityRule.ALPHA_INV_SQRT_LOG, 400, 1.0) == pytest.approx(
            threshold(ThresholdKind.CFS_LOWER, 400))

    def test_clamped(self):
        assert density(DensityRule.ABSOLUTE, 5, 1.5) == 1.0
        assert density(DensityRule.ALPHA_INV_SQRT, 4, 3.0) == 1.0

    def test_rule_by_value(self):
        assert density("inv-sqrt", 100, 0.5) == pytest.approx(0.05)

    def test_domain(self):
        with pytest.raises(DomainError):
            density(DensityRule.ALPHA_LOG_OVER_N, 1, 1.0)
        assert density(DensityRule.ABSOLUTE, 1, 0.3) == 0.3


class TestExpectations:
    def test_nonadjacent_pairs_near_as_threshold(self):
        p = density(DensityRule.ALPHA_CUBE_ROOT_LOG_OVER_N, 1000, 0.8)
        assert expected_nonadjacent_pairs(1000, p) == pytest.approx(423397, abs=1)

    def test_nonadjacent_pairs_edges(self):
        assert expected_nonadjacent_pairs(10, 0.0) == 45
        assert expected_nonadjacent_pairs(10, 1.0) == 0

    def test_induced_squares(self):
        assert expected_induced_squares(4, 0.5) == pytest.approx(3 / 64)
        assert expected_induced_squares(3, 0.5) == 0
        assert expected_induced_squares(100, 1.0) == 0


class TestChernoff:
    def test_value(self):
        assert chernoff_bound(100, 0.5) == pytest.approx(2 * math.exp(-25 / 3))

    def test_example_value(self):
        assert chernoff_bound(100, 0.3) == pytest.approx(2 * math.exp(-3))
        assert chernoff_bound(100, 0.3) == pytest.approx(0.09957, abs=1e-5)

    def test_decreases_in_mu(self):
        values = [chernoff_bound(mu, 0.3) for mu in (50, 100, 200, 400, 800)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_capped_at_one(self):
        assert chernoff_bound(0.1, 0.1) == 1.0

    @pytest.mark.parametrize("delta", [0.0, 2 / 3, 0.7, -0.1])
    def test_delta_domain(self, delta):
        with pytest.raises(DomainError):
            chernoff_bound(10, delta)

    def test_mu_domain(self):
        with pytest.raises(DomainError):
            chernoff_bound(0, 0.5)


class TestWilson:
    def test_half(self):
        lo, hi = wilson_interval(50, 100)
        assert lo == pytest.approx(0.403832, abs=1e-4)
        assert hi == pytest.approx(0.596168, abs=1e-4)

    def test_extremes(self):
        lo, hi = wilson_interval(0, 10)
        assert lo == 0.0 and 0 < hi < 1
        lo, hi = wilson_interval(10, 10)
        assert hi == 1.0 and 0 < lo < 1

    def test_contains_estimate(self):
        for successes in range(0, 401, 37):
            lo, hi = wilson_interval(successes, 400)
            assert 0 <= lo <= successes / 400 <= hi <= 1

    def test_400_trials_width(self):
        lo, hi = wilson_interval(200, 400)
        assert hi - lo <= 0.1

    @pytest.mark.parametrize("ratio", [0.0, 0.25, 0.5, 1.0])
    def test_width_shrinks_with_trials(self, ratio):
        widths = []
        for trials in (8, 16, 40, 100, 400, 2000):
            lo, hi = wilson_interval(int(ratio * trials), trials)
            widths.append(hi - lo)
        assert all(a > b for a, b in zip(widths, widths[1:]))

    @pytest.mark.parametrize("successes, trials", [(5, 4), (-1, 4), (0, 0)])
    def test_invalid(self, successes, trials):
        with pytest.raises(GraphInputError):
            wilson_interval(successes, trials)

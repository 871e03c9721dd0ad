import warnings

import numpy as np
import pytest

from collinlab import (
    Dataset,
    fit_ols,
    predict_augmented,
    replicate_sample,
    required_replication,
    verify_identities,
)
from collinlab.augmentation import IDENTITY_FIELDS, replication_bound
from collinlab.errors import DegenerateT
from collinlab.tdist import student_t_quantile

from conftest import random_dataset


class TestReplicateSample:
    def test_h1_identity(self, rng):
        data = random_dataset(rng)
        copy = replicate_sample(data, 1)
        np.testing.assert_array_equal(copy.X, data.X)
        np.testing.assert_array_equal(copy.y, data.y)
        assert copy.names == data.names

    @pytest.mark.parametrize("n, h, rows", [(17, 8, 136), (14, 21, 294)])
    def test_row_counts(self, rng, n, h, rows):
        assert replicate_sample(random_dataset(rng, n=n, k=3), h).n == rows

    def test_blocks_stacked(self, rng):
        data = random_dataset(rng, n=9, k=3)
        big = replicate_sample(data, 3)
        for b in range(3):
            np.testing.assert_array_equal(big.X[9 * b : 9 * (b + 1)], data.X)

    def test_invalid_h(self, rng):
        with pytest.raises(ValueError):
            replicate_sample(random_dataset(rng), 0)


class TestPredictAugmented:
    def test_h1_reproduces_fit(self, rng):
        fit = fit_ols(random_dataset(rng))
        pred = predict_augmented(fit, 1)
        for name in IDENTITY_FIELDS:
            np.testing.assert_array_equal(getattr(pred, name), getattr(fit, name))

    def test_scaling_laws(self, rng):
        fit = fit_ols(random_dataset(rng, n=20, k=3))
        n, k, h = 20, 3, 5
        pred = predict_augmented(fit, h)
        assert pred.sigma2_hat == pytest.approx(h * (n - k) / (n * h - k) * fit.sigma2_hat)
        np.testing.assert_allclose(pred.t_stats, np.sqrt((n * h - k) / (n - k)) * fit.t_stats)
        assert pred.f_stat == pytest.approx((n * h - k) / (n - k) * fit.f_stat)
        assert pred.r2 == fit.r2
        np.testing.assert_array_equal(pred.beta, fit.beta)

    def test_monotone_in_h(self, rng):
        fit = fit_ols(random_dataset(rng))
        preds = [predict_augmented(fit, h) for h in range(1, 12)]
        for a, b in zip(preds, preds[1:]):
            assert np.all(b.se < a.se)
            assert np.all(b.t_stats > a.t_stats)

    def test_table_1_model_2_arithmetic(self):
        # Wissell model 1 reports sigma2 = 0.8228, F = 82.77 and se(intercept) = 6.4764 with n=17, k=3
        n, k, h = 17, 3, 8
        assert h * (n - k) / (n * h - k) * 0.8228 == pytest.approx(0.6928898, rel=1e-3)
        assert (n * h - k) / (n - k) * 82.77 == pytest.approx(786.3, rel=1e-3)
        assert 6.4764 * np.sqrt((n - k) / (n * h - k)) == pytest.approx(2.1012, rel=1e-3)

    def test_table_2_model_2_arithmetic(self):
        n, k, h = 14, 4, 21
        assert h * (n - k) / (n * h - k) * 36.7236 == pytest.approx(26.59465, rel=1e-3)
        assert (n * h - k) / (n - k) * 37.68 == pytest.approx(1093, rel=1e-3)


class TestVerifyIdentities:
    @pytest.mark.parametrize("seed", range(10))
    def test_random_h3(self, seed):
        check = verify_identities(random_dataset(np.random.default_rng(seed)), 3)
        assert set(check.deviations) == set(IDENTITY_FIELDS)
        assert check.ok(1e-8), check.deviations

    def test_minimal_dataset(self, rng):
        k = 3
        data = random_dataset(rng, n=k + 1, k=k)
        assert verify_identities(data, 2).ok(1e-8)

    def test_refit_rows(self, rng):
        check = verify_identities(random_dataset(rng, n=10, k=3), 4)
        assert check.refit.n == 40


class TestRequiredReplication:
    def test_bound_formula(self):
        # n=14, k=4, t=0.3808: ((1.96/0.3808)^2 * 10 + 4) / 14
        assert replication_bound([0.3808], 14, 4, 1.96)[0] == pytest.approx((1.96 / 0.3808) ** 2 * 10 / 14 + 4 / 14)

    def test_already_significant(self):
        x = np.arange(30.0)
        y = 1 + 2 * x + np.sin(x)
        plan = required_replication(fit_ols(Dataset.from_arrays(y, x)))
        assert plan.h_required == 1

    def test_degenerate_t(self):
        x = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
        fit = fit_ols(Dataset.from_arrays([1.0, -1.0, 0.0, -1.0, 1.0], x, names=["x"]))
        if fit.t_stats[1] != 0.0:
            pytest.skip("roundoff left a non-zero t")
        with pytest.raises(DegenerateT) as err:
            required_replication(fit)
        assert err.value.name == "x"

    def test_tiny_t_is_excluded_with_warning(self, rng):
        n = 12
        x1 = rng.normal(size=n)
        x2 = rng.normal(size=n)
        x2 -= x2.mean()
        x2 -= (x2 @ x1) / (x1 @ (x1 - x1.mean())) * (x1 - x1.mean())
        y = 2 + 3 * x1 + rng.normal(size=n) * 0.1
        y -= (y @ x2) / (x2 @ x2) * x2 * (1 - 1e-12)
        fit = fit_ols(Dataset.from_arrays(y, np.column_stack([x1, x2])))
        if not 0 < fit.t_stats[2] < 1e-8:
            pytest.skip("construction did not produce a tiny t")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            plan = required_replication(fit)
        assert plan.excluded == (2,)
        assert caught

    def test_intercept_flag(self, rng):
        fit = fit_ols(random_dataset(rng, noise=50.0))
        assert 0 not in required_replication(fit).selected
        assert 0 in required_replication(fit, include_intercept=True).selected

    def test_other_alpha_uses_normal_quantile(self, rng):
        plan = required_replication(fit_ols(random_dataset(rng)), alpha=0.10)
        assert plan.t_critical_approx == pytest.approx(1.644854, abs=1e-6)

    @pytest.mark.parametrize("seed", range(30))
    def test_minimality_with_approximation(self, seed):
        fit = fit_ols(random_dataset(np.random.default_rng(seed), noise=40.0))
        plan = required_replication(fit)
        sel = list(plan.selected)
        t = lambda h: predict_augmented(fit, h).t_stats[sel]
        assert np.all(t(plan.h_required) > 1.96)
        if plan.h_required > 1:
            assert np.any(t(plan.h_required - 1) <= 1.96)

    @pytest.mark.parametrize("seed", range(30))
    def test_exact_variant(self, seed):
        fit = fit_ols(random_dataset(np.random.default_rng(seed), noise=40.0))
        plan = required_replication(fit, exact=True)
        sel = list(plan.selected)
        h = plan.h_required
        q = lambda h: student_t_quantile(0.975, fit.n * h - fit.k)
        assert np.all(predict_augmented(fit, h).t_stats[sel] > q(h))
        if h > 1:
            assert np.any(predict_augmented(fit, h - 1).t_stats[sel] <= q(h - 1))


class TestKleinGoldberger:
    def test_table_2_model_2(self, kg_data):
        check = verify_identities(kg_data, 21)
        assert check.ok(1e-8)
        p = check.predicted
        np.testing.assert_allclose(p.beta, [18.7021, 0.3803, 1.4186, 0.5331], rtol=1e-3)
        np.testing.assert_allclose(p.se, [1.27115, 0.05796, 0.13377, 0.25994], rtol=1e-3)
        assert p.r2 == pytest.approx(0.9187, rel=1e-3)
        assert p.sigma2_hat == pytest.approx(26.59465, rel=1e-3)
        assert p.f_stat == pytest.approx(1093, rel=1e-3)

    def test_bound_gives_twenty_copies(self, kg_data):
        plan = required_replication(fit_ols(kg_data))
        assert plan.h_required == 20
        assert np.nanargmax(plan.bounds) == 3

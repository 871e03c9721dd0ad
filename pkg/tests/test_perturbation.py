import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from collinlab import (
    Dataset,
    PerturbationConfig,
    coefficient_shift,
    monte_carlo_stability,
    perturb_design,
    perturb_vector,
    replicate_sample,
)
from collinlab.errors import AllTrialsFailed, ZeroNorm

from conftest import random_dataset

finite = st.floats(-1e6, 1e6, allow_nan=False)


class TestPerturbVector:
    def test_hand_example(self):
        np.testing.assert_allclose(perturb_vector([3.0, 4.0], 0.01, [1.0, 0.0]), [3.05, 4.0])

    def test_zero_pct(self, rng):
        x = rng.normal(size=7)
        np.testing.assert_array_equal(perturb_vector(x, 0.0, rng.normal(size=7)), x)

    @settings(max_examples=200)
    @given(arrays(float, 12, elements=finite), arrays(float, 12, elements=finite), st.floats(1e-4, 0.5))
    def test_relative_size_exact(self, x, p, pct):
        if np.linalg.norm(x) < 1e-3 or np.linalg.norm(p) < 1e-3:
            return
        xp = perturb_vector(x, pct, p)
        assert np.linalg.norm(xp - x) / np.linalg.norm(x) == pytest.approx(pct, abs=1e-12)

    def test_zero_norms(self):
        with pytest.raises(ZeroNorm):
            perturb_vector([0.0, 0.0], 0.01, [1.0, 1.0])
        with pytest.raises(ZeroNorm):
            perturb_vector([1.0, 0.0], 0.01, [0.0, 0.0])


class TestPerturbDesign:
    @pytest.mark.parametrize("noise", ["uniform", "normal"])
    def test_columns(self, rng, noise):
        data = random_dataset(rng, k=4)
        cfg = PerturbationConfig(pct=0.03, seed=5, noise=noise)
        out = perturb_design(data, cfg, trial=2)
        np.testing.assert_array_equal(out.X[:, 0], data.X[:, 0])
        np.testing.assert_array_equal(out.y, data.y)
        for j in range(1, 4):
            rel = np.linalg.norm(out.X[:, j] - data.X[:, j]) / np.linalg.norm(data.X[:, j])
            assert rel == pytest.approx(0.03, abs=1e-12)

    def test_deterministic(self, rng):
        data = random_dataset(rng)
        cfg = PerturbationConfig(seed=11)
        np.testing.assert_array_equal(perturb_design(data, cfg, 3).X, perturb_design(data, cfg, 3).X)

    def test_trials_differ(self, rng):
        data = random_dataset(rng)
        cfg = PerturbationConfig(seed=11)
        assert not np.array_equal(perturb_design(data, cfg, 0).X, perturb_design(data, cfg, 1).X)

    def test_intercept_flag(self, rng):
        data = random_dataset(rng)
        out = perturb_design(data, PerturbationConfig(perturb_intercept=True), 0)
        assert not np.all(out.X[:, 0] == 1.0)
        assert not out.has_intercept

    def test_noise_follows_column_name(self, rng):
        Z = rng.normal(size=(15, 3))
        a = Dataset.from_arrays(rng.normal(size=15), Z, names=["a", "b", "c"])
        b = Dataset.from_arrays(a.y, Z[:, [2, 0, 1]], names=["c", "a", "b"])
        cfg = PerturbationConfig(seed=3)
        np.testing.assert_array_equal(perturb_design(a, cfg, 0).X[:, 1:], perturb_design(b, cfg, 0).X[:, [2, 3, 1]])


class TestCoefficientShift:
    def test_values(self):
        assert coefficient_shift([1.0, 2.0], [1.0, 2.0]) == 0.0
        assert coefficient_shift([3.0, 4.0], [6.0, 8.0]) == pytest.approx(100.0)
        assert coefficient_shift([1.0, 0.0], [0.0, 1.0]) == pytest.approx(100 * np.sqrt(2))

    def test_zero_reference(self):
        with pytest.raises(ZeroNorm):
            coefficient_shift([0.0, 0.0], [1.0, 1.0])


class TestMonteCarlo:
    def test_summary_consistency(self, rng):
        s = monte_carlo_stability(random_dataset(rng), PerturbationConfig(trials=200, seed=1))
        assert s.shifts.size == 200 and s.failed == 0
        assert s.min <= s.mean <= s.max
        assert np.all(s.shifts >= 0) and s.sd >= 0
        assert s.mean == pytest.approx(s.shifts.mean())

    def test_zero_pct(self, rng):
        s = monte_carlo_stability(random_dataset(rng), PerturbationConfig(pct=0.0, trials=1))
        assert s.mean == 0.0 and s.sd == 0.0

    def test_bit_identical_reruns(self, rng):
        data = random_dataset(rng)
        cfg = PerturbationConfig(trials=100, seed=9)
        a = monte_carlo_stability(data, cfg)
        b = monte_carlo_stability(data, cfg)
        c = monte_carlo_stability(data, cfg, workers=4)
        np.testing.assert_array_equal(a.shifts, b.shifts)
        np.testing.assert_array_equal(a.shifts, c.shifts)
        assert (a.mean, a.sd) == (c.mean, c.sd)

    def test_permutation_invariance(self, rng):
        Z = rng.normal(size=(25, 3))
        y = rng.normal(size=25)
        a = Dataset.from_arrays(y, Z, names=["a", "b", "c"])
        b = Dataset.from_arrays(y, Z[:, [1, 2, 0]], names=["b", "c", "a"])
        cfg = PerturbationConfig(trials=50, seed=4)
        np.testing.assert_allclose(monte_carlo_stability(a, cfg).shifts, monte_carlo_stability(b, cfg).shifts, rtol=1e-9)

    def _fail_some(self, monkeypatch, should_fail):
        from collinlab import perturbation
        from collinlab.errors import RankDeficient

        real = perturbation.fit_ols
        calls = {"n": 0}

        def patched(d):
            calls["n"] += 1
            if calls["n"] > 1 and should_fail(calls["n"] - 2):
                raise RankDeficient("forced")
            return real(d)

        monkeypatch.setattr(perturbation, "fit_ols", patched)

    def test_failed_trials_are_counted(self, monkeypatch, rng):
        self._fail_some(monkeypatch, lambda trial: trial % 3 == 0)
        s = monte_carlo_stability(random_dataset(rng), PerturbationConfig(trials=9))
        assert s.failed == 3 and s.shifts.size == 6 and s.trials == 9

    def test_all_failed(self, monkeypatch, rng):
        self._fail_some(monkeypatch, lambda trial: True)
        with pytest.raises(AllTrialsFailed):
            monte_carlo_stability(random_dataset(rng), PerturbationConfig(trials=5))

    def test_orthogonal_control_is_stable(self):
        Z = np.random.default_rng(2).normal(size=(60, 3))
        Z -= Z.mean(axis=0)
        Q, _ = np.linalg.qr(Z)
        Z = Q * 10 + 5
        y = 1 + Z @ [1.0, -1.0, 0.5] + np.random.default_rng(3).normal(size=60)
        s = monte_carlo_stability(Dataset.from_arrays(y, Z), PerturbationConfig(trials=300, seed=1))
        assert s.mean < 3.0

    def test_replication_keeps_order_of_magnitude(self, rng):
        data = random_dataset(rng, n=20, k=3)
        for seed in (1, 2, 3):
            cfg = PerturbationConfig(trials=300, seed=seed)
            base = monte_carlo_stability(data, cfg).mean
            big = monte_carlo_stability(replicate_sample(data, 8), cfg).mean
            assert 0.5 < big / base < 2.0


def test_config_validation():
    with pytest.raises(ValueError):
        PerturbationConfig(trials=0)
    with pytest.raises(ValueError):
        PerturbationConfig(pct=-0.1)
    with pytest.raises(ValueError):
        PerturbationConfig(noise="cauchy")

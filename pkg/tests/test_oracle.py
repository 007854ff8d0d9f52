import math

import numpy as np
import pytest

import bktele as bk
from bktele.errors import NonPositiveOutputCovariance, UnphysicalInput

from conftest import EXP_M2, random_states


class TestMonteCarlo:
    def test_deterministic_for_fixed_seed(self, tmss, ch_id):
        a = bk.mc_fidelity(tmss, ch_id, 1.0, alpha=2 + 1j, n=50_000, seed=9)
        b = bk.mc_fidelity(tmss, ch_id, 1.0, alpha=2 + 1j, n=50_000, seed=9)
        assert a.fidelity_hat == b.fidelity_hat
        assert a.std_error == b.std_error

    def test_thread_count_does_not_change_result(self, tmss, ch_id):
        a = bk.mc_fidelity(tmss, ch_id, 1.0, alpha=1.0, n=60_000, seed=3)
        b = bk.mc_fidelity(tmss, ch_id, 1.0, alpha=1.0, n=60_000, seed=3,
                           threads=4)
        assert a.fidelity_hat == b.fidelity_hat
        assert a.std_error == b.std_error

    def test_different_seeds_differ(self, tmss, ch_id):
        a = bk.mc_fidelity(tmss, ch_id, 1.0, alpha=0.0, n=20_000, seed=1)
        b = bk.mc_fidelity(tmss, ch_id, 1.0, alpha=0.0, n=20_000, seed=2)
        assert a.fidelity_hat != b.fidelity_hat

    def test_two_vacua(self, ch_id):
        est = bk.mc_fidelity(bk.vacuum(), ch_id, 1.0, alpha=0.0,
                             n=300_000, seed=42)
        assert est.std_error > 0.0
        assert abs(est.fidelity_hat - 0.5) <= 4.0 * est.std_error

    def test_tmss_with_displacement(self, tmss, ch_id):
        est = bk.mc_fidelity(tmss, ch_id, 1.0, alpha=2 + 1j, n=300_000, seed=7)
        analytic = 1.0 / (1.0 + EXP_M2)
        assert abs(est.fidelity_hat - analytic) <= 4.0 * est.std_error

    def test_attenuated_tmss(self, tmss):
        ch = bk.ChannelParams(0.5, 1.0)
        est = bk.mc_fidelity(tmss, ch, 1.0, alpha=0.0, n=300_000, seed=11)
        analytic = bk.mean_fidelity(tmss, ch, 1.0)
        assert analytic == pytest.approx(0.5227549743558728, rel=1e-12)
        assert abs(est.fidelity_hat - analytic) <= 4.0 * est.std_error

    def test_non_unity_gain(self, tmss):
        ch = bk.ChannelParams(0.8, 0.9)
        est = bk.mc_fidelity(tmss, ch, 2.5, alpha=1 - 1j, n=300_000, seed=13)
        analytic = bk.mean_fidelity(tmss, ch, 2.5)
        assert abs(est.fidelity_hat - analytic) <= 4.0 * est.std_error

    def test_consistency_over_random_configurations(self):
        rng = np.random.default_rng(83)
        hits = 0
        total = 12
        for i, state in enumerate(random_states(84, total)):
            ch = bk.ChannelParams(*rng.uniform(0.3, 1, 2))
            g = rng.uniform(0.3, 2.0)
            alpha = complex(*rng.uniform(-2, 2, 2))
            est = bk.mc_fidelity(state, ch, g, alpha=alpha, n=100_000, seed=i)
            if abs(est.fidelity_hat - bk.mean_fidelity(state, ch, g)) \
                    <= 4.0 * est.std_error:
                hits += 1
        assert hits >= total - 1

    def test_output_moments_match_noise_matrix(self, tmss):
        ch = bk.ChannelParams(0.7, 0.9)
        g = 1.3
        n = 400_000
        seed = 21
        root = bk.oracle._symmetric_sqrt(bk.apply_attenuation(tmss, ch).cov)
        gen_cov = np.zeros((2, 2))
        gen_mean = np.zeros(2)
        count = 0
        for index, size in enumerate(bk.oracle._block_sizes(n)):
            gen = np.random.Generator(np.random.Philox(
                key=np.array([seed, index], dtype=np.uint64)))
            z = gen.standard_normal((size, 6))
            shared = z[:, :4] @ root
            q_out = shared[:, 2] - g * (shared[:, 0] - z[:, 4])
            p_out = shared[:, 3] + g * (shared[:, 1] + z[:, 5])
            out = np.stack([q_out, p_out], axis=1)
            gen_mean += out.sum(axis=0)
            gen_cov += out.T @ out
            count += size
        mean = gen_mean / count
        cov = (gen_cov - count * np.outer(mean, mean)) / (count - 1)
        e = bk.output_noise_matrix(bk.apply_attenuation(tmss, ch), g)
        for i in range(2):
            for j in range(2):
                se = math.sqrt((e[i, i] * e[j, j] + e[i, j] ** 2) / (count - 1))
                assert abs(cov[i, j] + (i == j) - e[i, j]) <= 5.0 * se

    def test_amplitude_prior_sampling_mode(self, tmss, ch_id):
        analytic = bk.mean_fidelity(tmss, ch_id, 1.0)
        for lam in (0.2, 2.0):
            est = bk.mc_fidelity(tmss, ch_id, 1.0, alpha=0.0, n=200_000,
                                 seed=31, alpha_lambda=lam)
            assert abs(est.fidelity_hat - analytic) <= 4.0 * est.std_error
        with pytest.raises(ValueError):
            bk.mc_fidelity(tmss, ch_id, 1.0, alpha=0.0, n=1000, seed=0,
                           alpha_lambda=-1.0)

    def test_rejects_unphysical_state(self, asym, ch_id):
        with pytest.raises(UnphysicalInput):
            bk.mc_fidelity(asym, ch_id, 1.0, alpha=0.0, n=10_000, seed=0)

    def test_small_sample_guard(self, tmss, ch_id):
        with pytest.raises(ValueError):
            bk.mc_fidelity(tmss, ch_id, 1.0, alpha=0.0, n=1, seed=0)


class TestGridOverlap:
    def test_two_vacua(self, ch_id):
        val = bk.grid_overlap_fidelity(bk.vacuum(), ch_id, 1.0, alpha=0.0)
        assert val == pytest.approx(0.5, abs=1e-6)

    def test_tmss(self, tmss, ch_id):
        val = bk.grid_overlap_fidelity(tmss, ch_id, 1.0, alpha=1.0)
        assert val == pytest.approx(1.0 / (1.0 + EXP_M2), abs=1e-5)

    def test_formula_level_on_unphysical_fixture(self, asym, ch_id):
        val = bk.grid_overlap_fidelity(asym, ch_id, 1.0, alpha=0.0)
        assert val == pytest.approx(2.0 / math.sqrt(14.0), abs=1e-5)

    def test_displaced_non_unity_gain(self, tmss):
        ch = bk.ChannelParams(0.6, 0.8)
        val = bk.grid_overlap_fidelity(tmss, ch, 1.7, alpha=2 - 1j)
        assert val == pytest.approx(bk.mean_fidelity(tmss, ch, 1.7), abs=1e-5)

    def test_grid_convergence(self, tmss, ch_id):
        coarse = bk.grid_overlap_fidelity(tmss, ch_id, 1.0, alpha=1.0,
                                          grid=bk.GridSpec(points_per_axis=801))
        fine = bk.grid_overlap_fidelity(tmss, ch_id, 1.0, alpha=1.0,
                                        grid=bk.GridSpec(points_per_axis=1601))
        assert abs(fine - coarse) < 1e-6

    def test_output_covariance_guard(self, ch_id):
        bad = bk.make_state(np.eye(2), [[0.1, 0.0], [0.0, 3.0]],
                            [[1.4, 0.0], [0.0, 0.0]])
        with pytest.raises(NonPositiveOutputCovariance):
            bk.grid_overlap_fidelity(bad, ch_id, 1.0, alpha=0.0)

    def test_grid_spec_validation(self):
        with pytest.raises(ValueError):
            bk.GridSpec(points_per_axis=800)
        with pytest.raises(ValueError):
            bk.GridSpec(half_width_sigmas=0.0)

import math

import numpy as np
import pytest

import bktele as bk
from bktele import bulk
from bktele.errors import DegenerateAlice, InvalidEta
from bktele.witness import Region

from conftest import EXP_M2, random_states

COTH1 = 1.0 / math.tanh(1.0)


def family_state(q, p, kq, kp):
    return bk.make_state([[q, 0], [0, p]], [[q, 0], [0, p]],
                         [[kq, 0], [0, kp]])


class TestEprVariances:
    def test_two_vacua(self):
        rng = np.random.default_rng(40)
        for _ in range(10):
            g = rng.uniform(0, 3)
            ch = bk.ChannelParams(*rng.uniform(0, 1, 2))
            var_u, var_v = bk.epr_variances(bk.vacuum(), ch, g)
            expected = (g * ch.t_a) ** 2 + ch.t_b ** 2
            assert var_u == pytest.approx(expected, rel=1e-14)
            assert var_v == pytest.approx(expected, rel=1e-14)

    def test_tmss(self, tmss, ch_id):
        var_u, var_v = bk.epr_variances(tmss, ch_id, 1.0)
        assert var_u == pytest.approx(2.0 * EXP_M2, rel=1e-12)
        assert var_v == pytest.approx(2.0 * EXP_M2, rel=1e-12)
        assert 2.0 * EXP_M2 == pytest.approx(0.2706706, abs=1e-7)

    def test_asymmetric_fixture(self, asym, ch_id):
        var_u, var_v = bk.epr_variances(asym, ch_id, 1.0)
        assert var_u == pytest.approx(0.5, rel=1e-12)
        assert var_v == pytest.approx(3.6, rel=1e-12)

    def test_nonnegative_on_physical_states(self):
        rng = np.random.default_rng(41)
        for state in random_states(42, 100):
            ch = bk.ChannelParams(*rng.uniform(0, 1, 2))
            var_u, var_v = bk.epr_variances(state, ch, rng.uniform(0, 3))
            assert var_u >= 0.0 and var_v >= 0.0


class TestWitnessValues:
    def test_two_vacua_all_zero(self, ch_id):
        vac = bk.vacuum()
        assert bk.w_sum(vac, ch_id, 1.0) == 0.0
        assert bk.w_prod(vac, ch_id, 1.0) == 0.0
        assert bk.w_all(vac, ch_id, 1.0) == 0.0
        assert bk.w_rob(vac) == 0.0
        assert bk.w_full(vac) == 0.0

    def test_tmss(self, tmss, ch_id):
        assert bk.w_sum(tmss, ch_id, 1.0) == pytest.approx(
            4.0 * (EXP_M2 - 1.0), rel=1e-12)
        assert bk.w_prod(tmss, ch_id, 1.0) == pytest.approx(
            4.0 * math.exp(-4.0) - 4.0, rel=1e-12)
        # w_all reduces to det E - 4 (1 + g^2)^2 because the cross bracket
        # vanishes for this state
        assert bk.w_all(tmss, ch_id, 1.0) == pytest.approx(
            (2.0 + 2.0 * EXP_M2) ** 2 - 16.0, rel=1e-12)
        assert bk.w_rob(tmss) == pytest.approx(8.0 - 8.0 * math.cosh(2.0),
                                               rel=1e-12)
        assert bk.w_rob(tmss) == pytest.approx(-22.0975655, abs=1e-6)

    def test_asymmetric_fixture(self, asym, ch_id):
        assert bk.w_sum(asym, ch_id, 1.0) == pytest.approx(0.1, abs=1e-12)
        assert bk.w_prod(asym, ch_id, 1.0) == pytest.approx(-2.2, abs=1e-12)
        assert bk.w_rob(asym) == pytest.approx(0.26, abs=1e-12)
        assert bk.w_full(asym) == pytest.approx(0.26, abs=1e-12)

    def test_w_full_equals_w_rob_for_diagonal_corr(self):
        for state in random_states(43, 30):
            e = state.entries
            diag_c = bk.make_state(state.alice, state.bob,
                                   [[e.kq, 0.0], [0.0, e.kp]])
            assert bk.w_full(diag_c) == pytest.approx(bk.w_rob(diag_c),
                                                      rel=1e-12, abs=1e-12)

    def test_w_full_invariant_under_any_local_rotation(self, tmss):
        rng = np.random.default_rng(44)
        states = random_states(45, 30) + [tmss]
        for state in states:
            a, b = rng.uniform(-4, 4, 2)
            rotated = bk.local_rotation(state, a, b)
            assert bk.w_full(rotated) == pytest.approx(bk.w_full(state),
                                                       abs=1e-10)

    def test_w_sum_w_rob_invariant_under_opposite_rotations(self):
        rng = np.random.default_rng(46)
        for state in random_states(47, 30):
            theta = rng.uniform(-4, 4)
            ch = bk.ChannelParams(*rng.uniform(0.1, 1, 2))
            g = rng.uniform(0, 3)
            rotated = bk.local_rotation(state, theta, -theta)
            assert bk.w_sum(rotated, ch, g) == pytest.approx(
                bk.w_sum(state, ch, g), abs=1e-10)
            assert bk.w_rob(rotated) == pytest.approx(bk.w_rob(state), abs=1e-10)

    def test_rotated_tmss_keeps_w_full(self, tmss):
        rotated = bk.local_rotation(tmss, 0.3, -0.3)
        assert bk.w_full(rotated) == pytest.approx(8.0 - 8.0 * math.cosh(2.0),
                                                   rel=1e-12)

    def test_linear_identity(self):
        rng = np.random.default_rng(48)
        for state in random_states(49, 200):
            ch = bk.ChannelParams(*rng.uniform(0, 1, 2))
            g = rng.uniform(0, 3)
            coeff = (2.0 - ch.t_a ** 2) * g * g + (2.0 - ch.t_b ** 2)
            lhs = bk.w_all(state, ch, g)
            rhs = coeff * bk.w_sum(state, ch, g) + bk.w_prod(state, ch, g)
            scale = max(abs(lhs), abs(rhs), 1.0)
            assert abs(lhs - rhs) <= 1e-10 * scale

    def test_w_all_matches_expansion_in_canonical_basis(self):
        rng = np.random.default_rng(50)
        for state in random_states(51, 50):
            ch = bk.ChannelParams(*rng.uniform(0.05, 1, 2))
            g = rng.uniform(0.05, 3)
            canon = bk.canonicalize(state, ch, g).state
            lhs = bk.w_all(canon, ch, g)
            rhs = bk.det_e_expanded(canon, ch, g) - 4.0 * (1.0 + g * g) ** 2
            assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


class TestDuan:
    def test_two_vacua_boundary(self):
        check = bk.duan_check(bk.vacuum(), 1.0)
        assert check.var_sum == 4.0 and check.bound == 4.0
        assert not check.satisfied

    def test_tmss(self, tmss):
        check = bk.duan_check(tmss, 1.0)
        assert check.var_sum == pytest.approx(4.0 * EXP_M2, rel=1e-12)
        assert check.var_sum == pytest.approx(0.541341, abs=1e-6)
        assert check.bound == 4.0
        assert check.satisfied

    def test_invalid_eta(self, tmss):
        with pytest.raises(InvalidEta):
            bk.duan_check(tmss, 0.0)
        with pytest.raises(InvalidEta):
            bk.duan_check(tmss, -1.0)

    def test_rescaled_sum_witness_identity(self):
        # var_sum - bound at eta = sqrt(g ta / tb) equals w_sum / (g ta tb)
        rng = np.random.default_rng(52)
        for state in random_states(53, 60):
            g = rng.uniform(0.1, 3)
            ch = bk.ChannelParams(*rng.uniform(0.1, 1, 2))
            eta = math.sqrt(g * ch.t_a / ch.t_b)
            check = bk.duan_check(state, eta)
            scaled = bk.w_sum(state, ch, g) / (g * ch.t_a * ch.t_b)
            assert check.var_sum - check.bound == pytest.approx(
                scaled, rel=1e-10, abs=1e-10)


class TestOptimalGain:
    def test_tmss_equal_transmissibilities(self, tmss):
        for t in (1.0, 0.7, 0.2):
            opt = bk.optimal_gain(tmss, bk.ChannelParams(t, t))
            assert opt.value == pytest.approx(COTH1, rel=1e-12)
            assert not opt.out_of_domain

    def test_asymmetric_fixture(self, asym, ch_id):
        opt = bk.optimal_gain(asym, ch_id)
        assert opt.value == pytest.approx(2.6 / 2.7, rel=1e-12)

    def test_tmss_half_transmission(self, tmss):
        opt = bk.optimal_gain(tmss, bk.ChannelParams(0.5, 1.0))
        assert opt.value == pytest.approx(2.0 * COTH1, rel=1e-12)
        assert opt.value == pytest.approx(2.6260706, abs=1e-7)

    def test_degenerate_alice(self, ch_id):
        with pytest.raises(DegenerateAlice):
            bk.optimal_gain(bk.vacuum(), ch_id)

    def test_out_of_domain_flag(self, tmss, ch_id):
        e = tmss.entries
        flipped = bk.make_state(tmss.alice, tmss.bob,
                                [[-e.kq, 0.0], [0.0, -e.kp]])
        opt = bk.optimal_gain(flipped, ch_id)
        assert opt.value < 0.0 and opt.out_of_domain

    def test_minimizes_sum_witness(self):
        rng = np.random.default_rng(54)
        confirmed = 0
        for state in random_states(55, 100):
            ch = bk.ChannelParams(*rng.uniform(0.1, 1, 2))
            try:
                opt = bk.optimal_gain(state, ch)
            except DegenerateAlice:
                continue
            if opt.out_of_domain:
                continue
            confirmed += 1
            best = bk.w_sum(state, ch, opt.value)
            for g in np.linspace(0.0, 4.0 * opt.value, 1000):
                assert best <= bk.w_sum(state, ch, g) + 1e-12
        assert confirmed > 20


class TestClassify:
    def test_two_vacua(self, ch_id):
        assert bk.classify(bk.vacuum(), ch_id, 1.0) is Region.SEPARABLE

    def test_robust_quantum_example(self, ch_id):
        state = family_state(2.0, 2.0, 1.5, -1.5)
        assert bk.mean_fidelity(state, ch_id, 1.0) == pytest.approx(2.0 / 3.0,
                                                                    rel=1e-12)
        assert bk.w_rob(state) == pytest.approx(-5.0, abs=1e-12)
        assert bk.classify(state, ch_id, 1.0) is Region.ROBUST_QUANTUM

    def test_gain_rescuable_example(self):
        state = family_state(2.0, 2.0, 1.5, -1.5)
        ch = bk.ChannelParams(0.2, 1.0)
        assert bk.mean_fidelity(state, ch, 1.0) == pytest.approx(
            2.0 / 4.44, rel=1e-10)
        assert bk.classify(state, ch, 1.0) is Region.ENTANGLED_GAIN_RESCUABLE

    def test_unphysical(self, asym, ch_id):
        assert bk.classify(asym, ch_id, 1.0) is Region.UNPHYSICAL

    def test_tmss_robust(self, tmss, ch_id):
        assert bk.classify(tmss, ch_id, 1.0) is Region.ROBUST_QUANTUM


class TestResultChain:
    def test_chain_on_canonical_configurations(self):
        rng = np.random.default_rng(56)
        n = 5000
        entries = bulk.random_entries(rng, n)
        g = rng.uniform(0.0, 3.0, n)
        ta = rng.uniform(0.0, 1.0, n)
        tb = rng.uniform(0.0, 1.0, n)
        theta = bulk.canonical_theta(entries, g, ta, tb)
        canon = bulk.rotate_opposite(entries, theta)
        fid = bulk.mean_fidelity(canon, g, ta, tb)
        cft = 1.0 / (1.0 + g * g)
        quantum = fid > cft + 1e-12
        wall = bulk.w_all(canon, g, ta, tb)
        wsum = bulk.w_sum(canon, g, ta, tb)
        wprod = bulk.w_prod(canon, g, ta, tb)
        assert not np.any((wall < 0) != quantum)
        assert not np.any((wsum < 0) & ~quantum)
        assert not np.any(quantum & (wprod >= 0))

    def test_split_condition_lemma(self):
        rng = np.random.default_rng(57)
        n = 5000
        entries = bulk.random_entries(rng, n)
        g = rng.uniform(0.0, 3.0, n)
        ta = rng.uniform(0.0, 1.0, n)
        tb = rng.uniform(0.0, 1.0, n)
        canon = bulk.rotate_opposite(entries,
                                     bulk.canonical_theta(entries, g, ta, tb))
        wall = bulk.w_all(canon, g, ta, tb)
        wsum = bulk.w_sum(canon, g, ta, tb)
        wprod = bulk.w_prod(canon, g, ta, tb)
        assert not np.any((wall < 0) & (wprod >= 0))
        assert not np.any((wsum >= 0) & (wprod >= 0) & (wall < 0))


class TestRobustnessSemantics:
    @staticmethod
    def _rescuable_states():
        """States with a negative robustness witness and an in-domain gain
        optimum: pre-attenuated, rotated squeezed states (closed under both
        maps) plus whatever the random draw yields."""
        rng = np.random.default_rng(58)
        out = []
        for _ in range(15):
            base = bk.two_mode_squeezed(rng.uniform(0.2, 1.5))
            pre = bk.ChannelParams(*rng.uniform(0.3, 1.0, 2))
            theta = rng.uniform(-2.0, 2.0)
            out.append(bk.local_rotation(
                bk.apply_attenuation(base, pre), theta, -theta))
        for state in random_states(59, 120):
            if bk.w_rob(state) < 0.0 \
                    and not bk.optimal_gain(state, bk.ChannelParams(1, 1)).out_of_domain:
                out.append(state)
        return out

    def test_rescuable_states_quantum_at_tuned_gain(self):
        grid = np.linspace(0.05, 1.0, 20)
        states = self._rescuable_states()
        assert len(states) >= 15
        for state in states:
            assert bk.w_rob(state) < 0.0
            for ta in grid[::4]:
                for tb in grid[::4]:
                    ch = bk.ChannelParams(ta, tb)
                    g_cell = bk.optimal_gain(state, ch).value
                    assert bk.is_quantum(state, ch, g_cell)

    def test_fragile_states_have_a_dead_cell(self, asym):
        found = False
        for ta in np.linspace(0.1, 1.0, 10):
            for tb in np.linspace(0.1, 1.0, 10):
                _, ratio = bk.max_quantum_ratio(asym, bk.ChannelParams(ta, tb))
                if ratio <= 1.0 + 1e-12:
                    found = True
                    break
            if found:
                break
        assert found

    def test_search_matches_dense_grid(self, tmss, asym):
        for state, ch in ((tmss, bk.ChannelParams(0.5, 1.0)),
                          (asym, bk.ChannelParams(1.0, 0.3))):
            best_g, best_ratio = bk.max_quantum_ratio(state, ch)
            gs = np.logspace(-6, 6, 2001)
            ratios = [2.0 * (1.0 + g * g)
                      / math.sqrt(bk.det_e_expanded(state, ch, g)) for g in gs]
            assert best_ratio >= max(ratios) - 1e-9


class TestReport:
    def test_fields(self, tmss, ch_id):
        rep = bk.witness_report(tmss, ch_id, 1.0)
        assert rep.fidelity == pytest.approx(1.0 / (1.0 + EXP_M2), rel=1e-12)
        assert rep.cft == 0.5
        assert rep.eta == pytest.approx(1.0)
        d = rep.as_dict()
        assert set(d) == {"w_all", "w_sum", "w_prod", "w_rob", "w_full",
                          "var_u", "var_v", "fidelity", "cft", "eta"}

    def test_eta_undefined_at_total_bob_attenuation(self, tmss):
        rep = bk.witness_report(tmss, bk.ChannelParams(1.0, 0.0), 1.0)
        assert rep.eta is None

    def test_symmetric_family_diagonal_identity(self):
        # with g ta = tb the sum witness factorizes over the family
        rng = np.random.default_rng(60)
        for _ in range(20):
            q, p = rng.uniform(1.0, 4.0, 2)
            kq, kp = rng.uniform(-1.0, 1.0, 2) * (q, p)
            state = family_state(q, p, kq, kp)
            ta, tb = rng.uniform(0.2, 1.0, 2)
            g = tb / ta
            expected = tb * tb * ((q + p - 2.0) * 2.0 - 2.0 * (kq - kp))
            assert bk.w_sum(state, bk.ChannelParams(ta, tb), g) == pytest.approx(
                expected, rel=1e-10)

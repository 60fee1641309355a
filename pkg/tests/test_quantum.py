from fractions import Fraction

import numpy as np
import pytest

import pauligames as pg
from pauligames import pauli, quantum
from pauligames.errors import ConsistencyError, InputError


@pytest.fixture(scope="module")
def ams_strategy(ams):
    return pg.perfect_strategy(ams)


@pytest.fixture(scope="module")
def ms_strategy(ms):
    return pg.perfect_strategy(ms)


class TestState:
    def test_bell_state_normalized(self):
        psi = pg.bell_state()
        assert psi.shape == (16,)
        assert abs(np.vdot(psi, psi) - 1) < 1e-15

    def test_bell_state_structure(self):
        # Two Bell pairs: amplitude 1/2 exactly when Bob's two qubits mirror
        # Alice's, in the (A1, A2, B1, B2) ordering.
        psi = pg.bell_state()
        for i in range(4):
            for j in range(4):
                want = 0.5 if i == j else 0.0
                assert psi[4 * i + j] == want


class TestProjectorFamilies:
    def test_all_families_satisfy_invariants(self, ams_strategy, ms_strategy):
        for sd in (ams_strategy, ms_strategy):
            for fam in sd.alice + sd.bob:
                pg.validate_family(fam)

    def test_answers_satisfy_parity_by_construction(self, ams, ams_strategy):
        for q, fam in enumerate(ams_strategy.alice):
            for a in fam.answers:
                assert pg.answer_parity(a) == ams.equations[q].parity

    def test_computed_parities_match_tables(self, ams, ms):
        for g in (ams, ms):
            for q, eq in enumerate(g.equations):
                ops = [pauli.op_from_label(g.variable_ops[v]) for v in eq.vars]
                parity, _, _, _ = quantum.triple_projectors(ops, conjugated=False)
                assert parity == eq.parity

    def test_rejects_noncommuting_triple(self):
        ops = [pauli.op_from_label(s) for s in ("XX", "XY", "IZ")]
        with pytest.raises(InputError):
            quantum.triple_projectors(ops, conjugated=False)

    def test_validate_family_catches_corruption(self, ams_strategy):
        fam = ams_strategy.alice[0]
        broken = quantum.ProjectorFamily(
            fam.question,
            fam.answers,
            fam.projectors + 0.01,
            fam.observables,
        )
        with pytest.raises(ConsistencyError):
            pg.validate_family(broken)


class TestPerfectStrategy:
    def test_every_pair_won_exactly(self, ams, ams_strategy):
        for j, k in ams.pairs:
            assert pg.conditional_win_probability(ams, ams_strategy, j, k) >= 1 - 1e-12

    def test_ms_pairs_won_exactly(self, ms, ms_strategy):
        for j, k in ms.pairs:
            assert pg.conditional_win_probability(ms, ms_strategy, j, k) >= 1 - 1e-12

    def test_sync_pairs_won_exactly(self):
        g = pg.build_psams_game(Fraction(1, 7))
        sd = pg.perfect_strategy(g)
        for q in range(g.n_questions):
            assert pg.conditional_win_probability(g, sd, q, q) >= 1 - 1e-12

    def test_overall_value_one(self, ams, ms, ams_strategy, ms_strategy):
        assert abs(pg.entangled_win_probability(ams, ams_strategy) - 1) <= 1e-12
        assert abs(pg.entangled_win_probability(ms, ms_strategy) - 1) <= 1e-12

    def test_joint_outcomes_are_distributions_with_uniform_marginals(
        self, ams, ams_strategy
    ):
        for j, k in [(0, 1), (3, 11), (14, 8)]:
            probs = pg.joint_outcome_probabilities(ams_strategy, j, k)
            assert probs.shape == (4, 4)
            assert (probs >= -1e-12).all()
            assert abs(probs.sum() - 1) < 1e-12
            np.testing.assert_allclose(probs.sum(axis=1), 0.25, atol=1e-12)
            np.testing.assert_allclose(probs.sum(axis=0), 0.25, atol=1e-12)

    def test_sync_outcomes_perfectly_correlated(self):
        g = pg.build_psams_game(1)
        sd = pg.perfect_strategy(g)
        for q in (0, 7, 14):
            probs = pg.joint_outcome_probabilities(sd, q, q)
            np.testing.assert_allclose(probs, np.eye(4) / 4, atol=1e-12)

    def test_unconjugated_responder_is_imperfect(self, ams, ams_strategy):
        mirrored = quantum.EntangledStrategyDescriptor(
            ams_strategy.state, ams_strategy.alice, ams_strategy.alice
        )
        value = pg.entangled_win_probability(ams, mirrored)
        assert value < 1 - 1e-3

    def test_zero_weight_pair_rejected(self, ams, ams_strategy):
        with pytest.raises(InputError):
            pg.conditional_win_probability(ams, ams_strategy, 0, 0)


class TestSampling:
    def test_seeded_rounds_reproducible(self, ams, ams_strategy):
        a = [
            pg.sample_entangled_round(ams, ams_strategy, np.random.default_rng(5))
            for _ in range(20)
        ]
        b = [
            pg.sample_entangled_round(ams, ams_strategy, np.random.default_rng(5))
            for _ in range(20)
        ]
        assert a == b

    def test_perfect_strategy_wins_every_sampled_round(self, ams, ams_strategy):
        rng = np.random.default_rng(31)
        for _ in range(300):
            j, k, a, b, win = pg.sample_entangled_round(ams, ams_strategy, rng)
            assert win == 1
            assert (j, k) in ams.pairs
            assert pg.answer_parity(a) == ams.equations[j].parity
            assert pg.answer_parity(b) == ams.equations[k].parity

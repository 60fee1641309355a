from fractions import Fraction

import numpy as np
import pytest

import pauligames as pg
from pauligames import games
from pauligames.errors import InputError


class TestBuilders:
    def test_ms_shape(self, ms):
        assert ms.kind == "ms"
        assert ms.n_questions == 6
        assert ms.n_variables == 9
        assert len(ms.pairs) == 18
        assert sum(ms.weights) == 1
        assert ms.sync_weight == 0
        assert all(w == Fraction(1, 18) for w in ms.weights)
        assert [e.parity for e in ms.equations] == [0, 0, 0, 1, 1, 1]

    def test_ams_shape(self, ams):
        assert ams.kind == "ams"
        assert ams.n_questions == 15
        assert ams.n_variables == 15
        assert len(ams.pairs) == 90
        assert sum(ams.weights) == 1
        assert all(w == Fraction(1, 90) for w in ams.weights)
        assert sum(e.parity for e in ams.equations) == 3

    def test_ams_every_variable_in_three_equations(self, ams):
        counts = [0] * ams.n_variables
        for e in ams.equations:
            for v in e.vars:
                counts[v] += 1
        assert counts == [3] * 15

    def test_psams_shape(self):
        g = pg.build_psams_game(Fraction(1, 7))
        assert g.kind == "psams"
        assert len(g.pairs) == 105
        assert sum(g.weights) == 1
        assert g.pair_weight(0, 0) == Fraction(1, 7) / 15
        assert g.pair_weight(0, 1) == Fraction(6, 7) / 90
        assert g.pair_weight(0, 4) == 0

    def test_psams_p_edge_cases(self):
        assert pg.build_psams_game(0).kind == "ams"
        g1 = pg.build_psams_game(1)
        assert len(g1.pairs) == 15
        assert all(j == k for j, k in g1.pairs)

    def test_psams_rejects_bad_p(self):
        with pytest.raises(InputError):
            pg.build_psams_game(0.5)
        with pytest.raises(InputError):
            pg.build_psams_game(Fraction(8, 7))
        with pytest.raises(InputError):
            pg.build_psams_game(Fraction(-1, 7))
        with pytest.raises(InputError):
            pg.build_psams_game("nonsense")

    def test_build_game_dispatch(self):
        assert pg.build_game("ms").kind == "ms"
        assert pg.build_game("ams").kind == "ams"
        assert pg.build_game("psams", Fraction(1, 2)).sync_weight == Fraction(1, 2)
        with pytest.raises(InputError):
            pg.build_game("psams")
        with pytest.raises(InputError):
            pg.build_game("ms", Fraction(1, 2))
        with pytest.raises(InputError):
            pg.build_game("chsh")

    def test_integer_weights(self, ams):
        ints, den = ams.integer_weights()
        assert den == 90
        assert ints == [1] * 90
        ints, den = pg.build_psams_game(Fraction(1, 14)).integer_weights()
        assert sum(ints) == den


class TestPayoff:
    def test_cross_pair_needs_parity_and_agreement(self, ams):
        j, k = 0, 1
        ej, ek = ams.equations[j], ams.equations[k]
        (shared,) = set(ej.vars) & set(ek.vars)
        a = [0, 0, 0]
        b = [0, 0, 0]
        assert pg.payoff(ams, j, k, a, b) == 1
        b[ek.vars.index(shared)] ^= 1
        b[(ek.vars.index(shared) + 1) % 3] ^= 1
        assert pg.payoff(ams, j, k, a, b) == 0
        assert pg.payoff(ams, j, k, (1, 0, 0), b) == 0

    def test_diagonal_pair_needs_identical_answers(self):
        g = pg.build_psams_game(Fraction(1, 7))
        assert pg.payoff(g, 0, 0, (0, 1, 1), (0, 1, 1)) == 1
        assert pg.payoff(g, 0, 0, (0, 1, 1), (1, 0, 1)) == 0
        assert pg.payoff(g, 12, 12, (1, 0, 0), (1, 0, 0)) == 1
        assert pg.payoff(g, 12, 12, (0, 0, 0), (0, 0, 0)) == 0

    def test_zero_weight_pair_rejected(self, ams, ms):
        with pytest.raises(InputError):
            pg.payoff(ams, 0, 0, (0, 0, 0), (0, 0, 0))
        with pytest.raises(InputError):
            pg.payoff(ms, 0, 1, (0, 0, 0), (0, 0, 0))

    def test_malformed_answers_rejected(self, ams):
        with pytest.raises(InputError):
            pg.payoff(ams, 0, 1, (0, 0), (0, 0, 0))
        with pytest.raises(InputError):
            pg.payoff(ams, 0, 1, (0, 0, 2), (0, 0, 0))


class TestExactDistributions:
    def test_all_four_procedures_identical_uniform(self):
        dists = {p: pg.exact_pair_distribution(p).as_dict() for p in pg.PROCEDURES}
        flat = dists["flat"]
        assert len(flat) == 90
        assert all(w == Fraction(1, 90) for w in flat.values())
        for name, d in dists.items():
            assert d == flat, name

    def test_unknown_procedure_rejected(self):
        with pytest.raises(InputError):
            pg.exact_pair_distribution("nonsense")


class TestSamplers:
    def test_seeded_draws_reproducible(self, ams):
        for proc in pg.PROCEDURES:
            a = [pg.sample_question_pair(ams, proc, np.random.default_rng(3)) for _ in range(50)]
            b = [pg.sample_question_pair(ams, proc, np.random.default_rng(3)) for _ in range(50)]
            assert a == b

    def test_draws_are_supported_pairs(self, ams):
        rng = np.random.default_rng(11)
        pair_set = set(ams.pairs)
        for proc in pg.PROCEDURES:
            for _ in range(200):
                assert pg.sample_question_pair(ams, proc, rng) in pair_set

    def test_nonflat_procedures_need_plain_augmented_game(self, ms):
        rng = np.random.default_rng(0)
        g = pg.build_psams_game(Fraction(1, 7))
        for proc in pg.PROCEDURES[1:]:
            with pytest.raises(InputError):
                pg.sample_question_pair(ms, proc, rng)
            with pytest.raises(InputError):
                pg.sample_question_pair(g, proc, rng)

    def test_flat_draw_million_rounds_within_five_sigma(self, ams):
        # Binomial count per ordered pair: n=1e6, p=1/90.
        n = 1_000_000
        rng = np.random.default_rng(2024)
        ints, den = ams.integer_weights()
        cum = np.cumsum(np.array(ints, dtype=np.int64))
        u = rng.integers(0, den, size=n)
        idx = np.searchsorted(cum, u, side="right")
        counts = np.bincount(idx, minlength=90)
        mean = n / 90
        sigma = (n * (1 / 90) * (89 / 90)) ** 0.5
        assert counts.sum() == n
        assert np.abs(counts - mean).max() <= 5 * sigma

    def test_flat_loop_draw_agrees_with_weights(self, ams):
        # Smaller loop through the public per-call sampler.
        n = 20_000
        rng = np.random.default_rng(7)
        counts = {}
        for _ in range(n):
            jk = pg.sample_question_pair(ams, "flat", rng)
            counts[jk] = counts.get(jk, 0) + 1
        assert set(counts) <= set(ams.pairs)
        sigma = (n * (1 / 90) * (89 / 90)) ** 0.5
        assert max(abs(c - n / 90) for c in counts.values()) <= 5 * sigma

    def test_weighted_index_covers_all_outcomes(self):
        rng = np.random.default_rng(5)
        seen = set()
        for _ in range(500):
            seen.add(games.draw_weighted_index([1, 2, 3], 6, rng))
        assert seen == {0, 1, 2}

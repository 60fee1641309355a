from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import pauligames as pg
from pauligames import _scan
from pauligames.errors import InputError


class TestPacking:
    @given(st.lists(st.integers(0, 3), min_size=1, max_size=15))
    def test_pack_unpack_roundtrip(self, choices):
        packed = _scan.pack_choices(choices)
        assert _scan.unpack_choices(packed, len(choices)) == tuple(choices)

    def test_pack_rejects_out_of_range(self):
        with pytest.raises(InputError):
            _scan.pack_choices([0, 4])
        with pytest.raises(InputError):
            _scan.unpack_choices(1 << 12, 6)
        with pytest.raises(InputError):
            _scan.unpack_choices(-1, 6)

    def test_choices_answers_roundtrip(self, ams):
        choices = tuple(i % 4 for i in range(15))
        answers = _scan.choices_to_answers(ams, choices)
        assert _scan.answers_to_choices(ams, answers) == choices
        for q, a in enumerate(answers):
            assert pg.answer_parity(a) == ams.equations[q].parity

    def test_answers_to_choices_rejects_parity_violation(self, ams):
        # Questions 12-14 demand odd parity, so all-zero answers violate them.
        bad = [(0, 0, 0)] * 15
        with pytest.raises(InputError):
            _scan.answers_to_choices(ams, bad)

    def test_valid_answers_ordering(self):
        assert _scan.valid_answers(0) == ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))
        assert _scan.valid_answers(1) == ((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1))


def _brute_force_scan(g):
    """Pure-Python twin of the kernel's trackers, in kernel score units."""
    ints, den = g.integer_weights()
    nq = g.n_questions
    best = -1
    best_witness = -1
    sym_best = -1
    sym_witness = -1
    agree_max = -1
    agree_witness = -1
    agree_max_nf = -1
    agree_witness_nf = -1
    cross = [(j, k) for j, k in g.pairs if j != k]
    for packed in range(4**nq):
        alice = _scan.choices_to_answers(g, _scan.unpack_choices(packed, nq))
        value, argmax = pg.best_response_value(g, alice)
        total = int(value * den)
        agree = sum(1 for k in range(nq) if alice[k] in argmax[k])
        sym = sum(
            1
            for j, k in cross
            if pg.payoff(g, j, k, alice[j], alice[k]) == 1
        )
        if total > best:
            best = total
            best_witness = packed
            agree_max = agree
            agree_witness = packed
            agree_max_nf = agree if agree < nq else -1
            agree_witness_nf = packed if agree < nq else -1
        elif total == best:
            if agree > agree_max:
                agree_max = agree
                agree_witness = packed
            if agree < nq and agree > agree_max_nf:
                agree_max_nf = agree
                agree_witness_nf = packed
        if sym > sym_best:
            sym_best = sym
            sym_witness = packed
    return (
        best, best_witness, sym_best, sym_witness,
        agree_max, agree_witness, agree_max_nf, agree_witness_nf,
    )


class TestKernelAgainstBruteForce:
    def test_ms_game_all_trackers(self, ms):
        want = _brute_force_scan(ms)
        scan = _scan.run_scan(ms)
        got = (
            scan.best, scan.best_witness, scan.sym_best, scan.sym_witness,
            scan.agree_max, scan.agree_witness,
            scan.agree_max_nonfull, scan.agree_witness_nonfull,
        )
        assert got == want
        assert scan.scanned == 4**6

    def test_diagonal_only_game_trackers(self):
        # p=1 has no cross pairs; every parity-valid identical pair wins all.
        g = pg.build_psams_game(1)
        scan = _scan.run_scan(g)
        assert Fraction(scan.best, scan.tables.denom) == 1
        assert scan.best_witness == 0
        assert scan.agree_max == 15
        assert scan.agree_max_nonfull == -1
        assert scan.agree_witness_nonfull == -1

    def test_mixture_game_small_tables(self):
        g = pg.build_psams_game(Fraction(1, 7))
        t = _scan.build_tables(g)
        assert t.denom == 630
        assert t.cross_weight == 6
        assert t.sync_weight == 6
        assert t.deg.sum() == 90


class TestScanInvariance:
    def test_shard_count_does_not_change_results(self, ms):
        runs = [_scan.run_scan(ms, shard_bits=b) for b in (2, 4, 6)]
        fields = [
            (
                r.best, r.best_witness, r.sym_best, r.sym_witness,
                r.agree_max, r.agree_witness,
                r.agree_max_nonfull, r.agree_witness_nonfull, r.scanned,
            )
            for r in runs
        ]
        assert fields[0] == fields[1] == fields[2]

    def test_thread_count_does_not_change_results(self, ms):
        r1 = _scan.run_scan(ms, threads=1)
        r2 = _scan.run_scan(ms, threads=2)
        assert (r1.best, r1.best_witness, r1.sym_best, r1.sym_witness) == (
            r2.best, r2.best_witness, r2.sym_best, r2.sym_witness,
        )
        assert (r1.agree_max, r1.agree_witness, r1.agree_max_nonfull) == (
            r2.agree_max, r2.agree_witness, r2.agree_max_nonfull,
        )

    def test_scan_memoized_per_configuration(self, ms):
        a = _scan.run_scan(ms, threads=1)
        b = _scan.run_scan(ms, threads=1)
        assert a is b

"""Command-line front end: structure checks, values, verification suite, referee.

Exit codes: 0 success, 1 verification mismatch, 2 input error, 3 internal
consistency error.  Human-readable text goes to stdout; machine-readable
JSON goes to the --out path (or, when --out is omitted, into the directory
named by the PAULIGAMES_OUT environment variable, if set).

p is accepted only as an exact rational string, e.g. "1/7" (floats would
silently break exact comparisons).  --threads defaults to the available
parallelism; any value must produce byte-identical results apart from the
timing fields.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import __version__, games, pauli, quantum, solver
from ._scan import choices_to_answers
from .errors import ConsistencyError, InputError
from .games import GameSpec
from .solver import DeterministicStrategy

OUT_DIR_ENV = "PAULIGAMES_OUT"

# Fixed seeds for the seeded bulk checks; part of the reproducibility contract.
SEED_SYMMETRIC_CHECK = 12345
SEED_ORACLE_CHECK = 67890


def _parse_p(text: str) -> Fraction:
    if not isinstance(text, str) or any(c in text for c in ".eE "):
        raise InputError(f"p must be an exact rational string like 1/7, got {text!r}")
    try:
        p = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"p must be an exact rational string like 1/7, got {text!r}") from exc
    return p


def _configure_threads(requested: int | None) -> int:
    # NUMBA_NUM_THREADS caps set_num_threads and is read once at first numba
    # import, so raise it up front when the user asks for more threads.
    if requested is not None:
        if requested < 1:
            raise InputError(f"--threads must be >= 1, got {requested}")
        if "numba" not in sys.modules:
            env = int(os.environ.get("NUMBA_NUM_THREADS", "0") or 0)
            if requested > env:
                os.environ["NUMBA_NUM_THREADS"] = str(requested)
    import numba

    if requested is None:
        return numba.get_num_threads()
    if requested > numba.config.NUMBA_NUM_THREADS:
        raise InputError(
            f"--threads {requested} exceeds this process's limit"
            f" ({numba.config.NUMBA_NUM_THREADS}); set NUMBA_NUM_THREADS before launch"
        )
    return requested


def _out_path(args, default_name: str):
    if getattr(args, "out", None):
        return args.out
    env_dir = os.environ.get(OUT_DIR_ENV)
    if env_dir:
        return os.path.join(env_dir, default_name)
    return None


def _write_json(doc, path) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _game_from_args(args) -> GameSpec:
    p = _parse_p(args.p) if getattr(args, "p", None) else None
    return games.build_game(args.game, p)


# --- structure ------------------------------------------------------------

def cmd_structure(args) -> int:
    triples = pauli.enumerate_commuting_triples()
    stats = pauli.incidence_stats(triples)
    squares = pauli.enumerate_magic_squares(triples)
    negatives = [t for t in triples if t.product_sign == -1]

    checks = [
        ("commuting triples", len(triples), 15),
        ("triples per element", sorted(set(stats.per_element.values())), [3]),
        ("intersecting partners per triple", sorted(set(stats.per_triple_intersections)), [6]),
        ("ordered intersecting pairs", stats.ordered_intersecting_pairs, 90),
        ("operator magic squares", len(squares), 10),
        ("product sign -1 triples", len(negatives), 3),
    ]
    ok = True
    for name, got, expect in checks:
        mark = "ok" if got == expect else "MISMATCH"
        if got != expect:
            ok = False
        print(f"{name}: {got} (expected {expect}) {mark}")
    path = _out_path(args, "structure.json")
    if path:
        _write_json(
            {
                "triples": pauli.triples_to_json(triples),
                "squares": pauli.squares_to_json(squares),
                "per_element": stats.per_element,
                "per_triple_intersections": stats.per_triple_intersections,
                "ordered_intersecting_pairs": stats.ordered_intersecting_pairs,
                "pass": ok,
            },
            path,
        )
        print(f"wrote {path}")
    return 0 if ok else 1


# --- value ----------------------------------------------------------------

def cmd_value(args) -> int:
    threads = _configure_threads(args.threads)
    g = _game_from_args(args)
    if args.symmetric:
        report = solver.solve_symmetric_value(g, threads=threads)
        mode = "symmetric"
    else:
        report = solver.solve_classical_value(g, threads=threads)
        mode = "full"
    v = report.value
    print(f"game: {g.kind}" + (f" (p = {_frac_str(g.sync_weight)})" if g.kind == "psams" else ""))
    print(f"mode: {mode}")
    print(f"classical value: {_frac_str(v)} = {float(v):.9f}")
    print(f"scanned: {report.strategies_scanned} strategies in {report.wall_time:.2f} s ({threads} threads)")
    if args.witness_out:
        solver.save_strategy(args.witness_out, g, report.witness)
        print(f"witness: {args.witness_out}")
    path = _out_path(args, f"value-{g.kind}-{mode}.json")
    if path:
        doc = report.to_json_dict()
        doc["witness"] = solver.strategy_to_json_dict(g, report.witness)
        doc["mode"] = mode
        _write_json(doc, path)
        print(f"wrote {path}")
    return 0


# --- verify-all -----------------------------------------------------------

@dataclass
class _Claim:
    id: str
    expected: str
    computed: str
    ok: bool
    seconds: float
    note: str | None = None


class _Suite:
    def __init__(self):
        self.claims: list[_Claim] = []

    def add(self, cid: str, expected, computed, ok: bool, t0: float, note: str | None = None):
        self.claims.append(
            _Claim(cid, str(expected), str(computed), bool(ok), time.perf_counter() - t0, note)
        )

    def check(self, cid: str, expected, computed, t0: float, note: str | None = None):
        self.add(cid, expected, computed, computed == expected, t0, note)


def _check_symmetric_formula(n_strategies: int, seed: int) -> tuple[int, int]:
    """Draw parity-valid identical-play strategies; count matches of the value formula.

    Every such strategy must win with probability (15+2q)/45 where q is its
    count of consistent variables.
    """
    g = games.build_ams_game()
    rng = np.random.default_rng(seed)
    matches = 0
    for _ in range(n_strategies):
        choices = rng.integers(0, 4, size=g.n_questions)
        answers = choices_to_answers(g, choices)
        s = DeterministicStrategy(answers, answers)
        profile = solver.consistency_profile(g, answers)
        if solver.evaluate_pair(g, s) == Fraction(15 + 2 * profile.q, 45):
            matches += 1
    return matches, n_strategies


def _check_response_oracles(n_strategies: int, seed: int) -> tuple[int, int, int]:
    """Seeded random first sides on the 6-question game, checked two ways.

    Returns (separability matches, parity-restriction matches, total): the
    per-question optimum must equal the explicit whole-strategy enumeration,
    and allowing all 8 answers must never beat the 4 parity-valid ones.
    """
    g = games.build_ms_game()
    rng = np.random.default_rng(seed)
    sep = 0
    par = 0
    for _ in range(n_strategies):
        alice = tuple(
            tuple(int(b) for b in rng.integers(0, 2, size=3)) for _ in range(g.n_questions)
        )
        fast, _ = solver.best_response_value(g, alice)
        explicit = solver.explicit_best_response_value(g, alice, parity_restricted=True)
        unrestricted = solver.explicit_best_response_value(g, alice, parity_restricted=False)
        if fast == unrestricted:
            sep += 1
        if explicit == unrestricted:
            par += 1
    return sep, par, n_strategies


def run_verification_suite(threads: int | None = None) -> dict:
    """Every quantitative claim, checked end to end; returns the JSON document."""
    threads = _configure_threads(threads)
    suite = _Suite()
    overall_start = time.perf_counter()

    # Group structure.
    t0 = time.perf_counter()
    triples = pauli.enumerate_commuting_triples()
    suite.check("structure.triples", 15, len(triples), t0)
    t0 = time.perf_counter()
    negatives = sorted(",".join(sorted(t.labels)) for t in triples if t.product_sign == -1)
    suite.check(
        "structure.negative_triples",
        "XX,YY,ZZ|XY,YZ,ZX|XZ,YX,ZY",
        "|".join(negatives),
        t0,
    )
    t0 = time.perf_counter()
    stats = pauli.incidence_stats(triples)
    suite.check("structure.triples_per_element", {3}, set(stats.per_element.values()), t0)
    suite.check(
        "structure.partners_per_triple", {6}, set(stats.per_triple_intersections), t0
    )
    suite.check("structure.ordered_pairs", 90, stats.ordered_intersecting_pairs, t0)
    t0 = time.perf_counter()
    squares = pauli.enumerate_magic_squares(triples)
    suite.check("structure.magic_squares", 10, len(squares), t0)
    t0 = time.perf_counter()
    odd = all(
        sum(1 for t in s.lines if t.product_sign == -1) % 2 == 1 for s in squares
    )
    suite.check("structure.squares_odd_negative_lines", True, odd, t0)

    # Game construction cross-checks (raise ConsistencyError on failure).
    t0 = time.perf_counter()
    ams = games.build_ams_game()
    ms = games.build_ms_game()
    suite.check("games.tables_cross_checked", True, True, t0)

    # Sampling procedures.
    t0 = time.perf_counter()
    dists = {p: games.exact_pair_distribution(p) for p in games.PROCEDURES}
    all_equal = all(d == dists["flat"] for d in dists.values())
    suite.check("samplers.identical", True, all_equal, t0)
    t0 = time.perf_counter()
    flat = dists["flat"].as_dict()
    uniform = len(flat) == 90 and all(w == Fraction(1, 90) for w in flat.values())
    suite.check("samplers.uniform_over_90", True, uniform, t0)

    # 6-question game values.
    t0 = time.perf_counter()
    ms_report = solver.solve_classical_value(ms, threads=threads)
    suite.check("ms.classical_value", "8/9", _frac_str(ms_report.value), t0)
    t0 = time.perf_counter()
    double = solver.ms_double_enumeration_value()
    suite.check("ms.double_enumeration", _frac_str(ms_report.value), _frac_str(double), t0)
    t0 = time.perf_counter()
    ms_sym = solver.solve_symmetric_value(ms, threads=threads)
    suite.check("ms.symmetric_value", "8/9", _frac_str(ms_sym.value), t0)

    # 15-question game values (the big scan).
    t0 = time.perf_counter()
    ams_report = solver.solve_classical_value(ams, threads=threads)
    suite.check("ams.classical_value", "8/9", _frac_str(ams_report.value), t0)
    t0 = time.perf_counter()
    w = ams_report.witness
    suite.check("ams.witness_asymmetric", True, w.alice != w.bob, t0)
    t0 = time.perf_counter()
    parity_ok = all(
        games.answer_parity(a) == e.parity
        for e, a in zip(ams.equations, w.alice)
    ) and all(
        games.answer_parity(b) == e.parity
        for e, b in zip(ams.equations, w.bob)
    )
    suite.check("ams.witness_parity_valid", True, parity_ok, t0)
    t0 = time.perf_counter()
    ams_sym = solver.solve_symmetric_value(ams, threads=threads)
    suite.check("ams.symmetric_value", "13/15", _frac_str(ams_sym.value), t0)

    # Satisfiability.
    t0 = time.perf_counter()
    best_ams, _ = solver.max_satisfiable_assignment(ams.equations)
    suite.check("satisfiability.ams_max", 12, best_ams, t0)
    t0 = time.perf_counter()
    best_ms, _ = solver.max_satisfiable_assignment(ms.equations)
    suite.check("satisfiability.ms_max", 5, best_ms, t0)

    # Identical-play value formula on seeded strategies.
    t0 = time.perf_counter()
    matches, total = _check_symmetric_formula(1000, SEED_SYMMETRIC_CHECK)
    suite.check("symmetric.value_formula_matches", f"{total}/{total}", f"{matches}/{total}", t0)

    # Same-answer agreement available at the optimum.
    t0 = time.perf_counter()
    agreement = solver.max_sync_agreement_over_optima(ams, threads=threads)
    attained = agreement.max_agreement
    note = (
        f"attained maximum is {attained}; copying is optimal on at most 13 questions"
        if attained == 13
        else f"attained maximum is {attained}, strictly below 13"
    )
    suite.add(
        "sync_agreement.bound",
        "<= 13",
        str(attained),
        attained <= 13,
        t0,
        note=note,
    )
    suite.add(
        "sync_agreement.asymmetric_optima",
        "<= 13",
        str(agreement.nonfull_max_agreement),
        agreement.nonfull_max_agreement <= 13,
        t0,
        note="maximum over optima where copying is not optimal on every question",
    )

    # Mixture values.
    t0 = time.perf_counter()
    sweep = solver.psams_value_sweep(
        [Fraction(0), Fraction(1, 7), Fraction(1)], threads=threads
    )
    by_p = {e.p: e.value for e in sweep}
    suite.check("psams.value_p0", "8/9", _frac_str(by_p[Fraction(0)]), t0)
    suite.check("psams.value_p1_7", "31/35", _frac_str(by_p[Fraction(1, 7)]), t0)
    suite.check("psams.value_p1", "1/1", _frac_str(by_p[Fraction(1)]), t0)
    t0 = time.perf_counter()
    gap = 1 - by_p[Fraction(1, 7)]
    suite.check("psams.gap_at_p1_7", "4/35", _frac_str(gap), t0)
    suite.check(
        "psams.p1_7_below_plain_value",
        True,
        by_p[Fraction(1, 7)] < by_p[Fraction(0)],
        t0,
    )
    t0 = time.perf_counter()
    sym_17 = solver.solve_symmetric_value(games.build_psams_game(Fraction(1, 7)), threads=threads)
    suite.check("psams.p1_7_symmetric_attains", "31/35", _frac_str(sym_17.value), t0)
    t0 = time.perf_counter()
    try:
        solver.check_sweep_affine(sweep)
        affine_ok = True
    except ConsistencyError:
        affine_ok = False
    suite.check("psams.sweep_affine_consistent", True, affine_ok, t0)

    # Entangled side.
    t0 = time.perf_counter()
    psams_17 = games.build_psams_game(Fraction(1, 7))
    sd_ams = quantum.perfect_strategy(ams)
    sd_ms = quantum.perfect_strategy(ms)
    sd_psams = quantum.perfect_strategy(psams_17)
    fam_ok = True
    try:
        for sd in (sd_ams, sd_ms):
            for fam in sd.alice + sd.bob:
                quantum.validate_family(fam)
    except ConsistencyError:
        fam_ok = False
    suite.check("quantum.projector_invariants", True, fam_ok, t0)
    t0 = time.perf_counter()
    parities_ok = True
    for g in (ams, ms):
        for q, eq in enumerate(g.equations):
            ops = [pauli.op_from_label(g.variable_ops[v]) for v in eq.vars]
            parity, _, _, _ = quantum.triple_projectors(ops, conjugated=False)
            if parity != eq.parity:
                parities_ok = False
    suite.check("quantum.triple_parities_match", True, parities_ok, t0)
    t0 = time.perf_counter()
    worst_async = min(
        quantum.conditional_win_probability(ams, sd_ams, j, k) for (j, k) in ams.pairs
    )
    suite.add(
        "quantum.ams_pairs_perfect",
        ">= 1 - 1e-12",
        f"{worst_async:.15f}",
        worst_async >= 1 - 1e-12,
        t0,
    )
    t0 = time.perf_counter()
    worst_sync = min(
        quantum.conditional_win_probability(psams_17, sd_psams, k, k)
        for k in range(psams_17.n_questions)
    )
    suite.add(
        "quantum.sync_pairs_perfect",
        ">= 1 - 1e-12",
        f"{worst_sync:.15f}",
        worst_sync >= 1 - 1e-12,
        t0,
    )
    t0 = time.perf_counter()
    worst_ms = min(
        quantum.conditional_win_probability(ms, sd_ms, j, k) for (j, k) in ms.pairs
    )
    suite.add(
        "quantum.ms_pairs_perfect",
        ">= 1 - 1e-12",
        f"{worst_ms:.15f}",
        worst_ms >= 1 - 1e-12,
        t0,
    )
    t0 = time.perf_counter()
    values = [
        quantum.entangled_win_probability(ams, sd_ams),
        quantum.entangled_win_probability(psams_17, sd_psams),
        quantum.entangled_win_probability(ms, sd_ms),
    ]
    ent_ok = all(abs(v - 1) <= 1e-12 for v in values)
    suite.add(
        "quantum.entangled_values",
        "all 1 within 1e-12",
        ",".join(f"{v:.15f}" for v in values),
        ent_ok,
        t0,
    )
    t0 = time.perf_counter()
    suite.check(
        "ordering.entangled_ge_classical",
        True,
        all(1 >= v for v in (by_p[Fraction(0)], by_p[Fraction(1, 7)], by_p[Fraction(1)])),
        t0,
    )

    # Responder oracles on the small game.
    t0 = time.perf_counter()
    sep, par, total = _check_response_oracles(1000, SEED_ORACLE_CHECK)
    suite.check("oracles.best_response_separability", f"{total}/{total}", f"{sep}/{total}", t0)
    suite.check("oracles.parity_restriction_wlog", f"{total}/{total}", f"{par}/{total}", t0)

    # No thread count in the document: the contract is byte-identical output
    # across thread counts once the timing fields are stripped.
    all_ok = all(c.ok for c in suite.claims)
    doc = {
        "pass": all_ok,
        "seeds": {
            "symmetric_check": SEED_SYMMETRIC_CHECK,
            "oracle_check": SEED_ORACLE_CHECK,
        },
        "claims": [
            {
                "id": c.id,
                "expected": c.expected,
                "computed": c.computed,
                "pass": c.ok,
                **({"note": c.note} if c.note else {}),
                "seconds": round(c.seconds, 6),
            }
            for c in suite.claims
        ],
        "seconds": round(time.perf_counter() - overall_start, 6),
    }
    return doc


def cmd_verify_all(args) -> int:
    threads = _configure_threads(args.threads)
    print(f"threads: {threads}")
    doc = run_verification_suite(threads)
    width = max(len(c["id"]) for c in doc["claims"])
    for c in doc["claims"]:
        mark = "PASS" if c["pass"] else "FAIL"
        line = f"[{mark}] {c['id']:<{width}}  expected {c['expected']}, computed {c['computed']} ({c['seconds']:.2f} s)"
        print(line)
        if c.get("note"):
            print(f"       note: {c['note']}")
    n_pass = sum(1 for c in doc["claims"] if c["pass"])
    print(f"{n_pass}/{len(doc['claims'])} claims pass in {doc['seconds']:.1f} s")
    path = _out_path(args, "verify-all.json")
    if path:
        _write_json(doc, path)
        print(f"wrote {path}")
    return 0 if doc["pass"] else 1


# --- play -----------------------------------------------------------------

@dataclass
class RoundLog:
    """Replayable record of seeded rounds: same seed and config, same log."""

    seed: int
    game: str
    p: Fraction
    procedure: str
    strategy: str
    js: np.ndarray
    ks: np.ndarray
    alice_answers: list
    bob_answers: list
    wins: np.ndarray

    @property
    def n_rounds(self) -> int:
        return len(self.js)

    @property
    def win_rate(self) -> Fraction:
        return Fraction(int(self.wins.sum()), self.n_rounds)

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "game": self.game,
            "p": {"num": self.p.numerator, "den": self.p.denominator},
            "procedure": self.procedure,
            "strategy": self.strategy,
            "wins": int(self.wins.sum()),
            "rounds": [
                [int(j), int(k), list(a), list(b), int(win)]
                for j, k, a, b, win in zip(
                    self.js, self.ks, self.alice_answers, self.bob_answers, self.wins
                )
            ],
        }


def _draw_pairs(g: GameSpec, procedure: str, rounds: int, rng) -> tuple[np.ndarray, np.ndarray]:
    if procedure == "flat":
        ints, den = g.integer_weights()
        cum = np.cumsum(np.array(ints, dtype=np.int64))
        u = rng.integers(0, den, size=rounds)
        idx = np.searchsorted(cum, u, side="right")
    else:
        idx = np.empty(rounds, dtype=np.int64)
        pair_index = {jk: i for i, jk in enumerate(g.pairs)}
        for r in range(rounds):
            idx[r] = pair_index[games.sample_question_pair(g, procedure, rng)]
    pairs = np.array(g.pairs, dtype=np.int64)
    return pairs[idx, 0], pairs[idx, 1], idx


def play_classical(
    g: GameSpec, s: DeterministicStrategy, procedure: str, rounds: int, seed: int,
    strategy_desc: str = "classical",
) -> RoundLog:
    """Seeded referee for a fixed classical strategy."""
    rng = np.random.default_rng(seed)
    js, ks, _ = _draw_pairs(g, procedure, rounds, rng)
    win_table = {}
    for j, k in g.pairs:
        win_table[(j, k)] = games.payoff(g, j, k, s.alice[j], s.bob[k])
    wins = np.array([win_table[(j, k)] for j, k in zip(js, ks)], dtype=np.int64)
    return RoundLog(
        seed, g.kind, g.sync_weight, procedure, strategy_desc,
        js, ks, [s.alice[j] for j in js], [s.bob[k] for k in ks], wins,
    )


def play_entangled(
    g: GameSpec, sd, procedure: str, rounds: int, seed: int
) -> RoundLog:
    """Seeded referee measuring the shared state each round.

    Per-pair outcome tables are Born distributions computed once; each round
    draws a pair, then one of its 16 outcomes (alice-major order) from a
    single uniform draw.
    """
    rng = np.random.default_rng(seed)
    js, ks, idx = _draw_pairs(g, procedure, rounds, rng)
    pair_list = list(g.pairs)
    born = np.empty((len(pair_list), 16))
    pay = np.empty((len(pair_list), 16), dtype=np.int64)
    for i, (j, k) in enumerate(pair_list):
        probs = quantum.joint_outcome_probabilities(sd, j, k)
        born[i] = probs.reshape(-1)
        for ai in range(4):
            for bi in range(4):
                pay[i, ai * 4 + bi] = games.payoff(
                    g, j, k, sd.alice[j].answers[ai], sd.bob[k].answers[bi]
                )
    cums = np.cumsum(born, axis=1)
    u = rng.random(rounds)
    outcome = np.minimum((cums[idx] <= u[:, None]).sum(axis=1), 15)
    ai, bi = np.divmod(outcome, 4)
    wins = pay[idx, outcome]
    alice_answers = [sd.alice[j].answers[a] for j, a in zip(js, ai)]
    bob_answers = [sd.bob[k].answers[b] for k, b in zip(ks, bi)]
    return RoundLog(
        seed, g.kind, g.sync_weight, procedure, "entangled-perfect",
        js, ks, alice_answers, bob_answers, wins,
    )


def cmd_play(args) -> int:
    g = _game_from_args(args)
    if args.rounds < 1:
        raise InputError(f"--rounds must be >= 1, got {args.rounds}")
    if args.strategy == "entangled-perfect":
        sd = quantum.perfect_strategy(g)
        log = play_entangled(g, sd, args.procedure, args.rounds, args.seed)
    else:
        s = solver.load_strategy(args.strategy, g)
        log = play_classical(
            g, s, args.procedure, args.rounds, args.seed, strategy_desc=args.strategy
        )
    rate = log.win_rate
    n = log.n_rounds
    p_hat = float(rate)
    stderr = (p_hat * (1 - p_hat) / n) ** 0.5
    print(f"game: {g.kind}, strategy: {log.strategy}, procedure: {args.procedure}")
    print(f"rounds: {n}, wins: {int(log.wins.sum())}")
    print(f"empirical win rate: {_frac_str(rate)} = {p_hat:.6f} (stderr {stderr:.6f})")
    path = _out_path(args, "play.json")
    if path:
        _write_json(log.to_json_dict(), path)
        print(f"wrote {path}")
    return 0


# --- dumps ----------------------------------------------------------------

def _emit_json(doc, args, default_name: str) -> None:
    path = _out_path(args, default_name)
    if path:
        _write_json(doc, path)
        print(f"wrote {path}")
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))


def cmd_dump_game(args) -> int:
    g = _game_from_args(args)
    _emit_json(g.to_json_dict(), args, f"game-{g.kind}.json")
    return 0


def cmd_dump_strategy(args) -> int:
    threads = _configure_threads(args.threads)
    g = _game_from_args(args)
    if args.symmetric:
        report = solver.solve_symmetric_value(g, threads=threads)
    else:
        report = solver.solve_classical_value(g, threads=threads)
    doc = solver.strategy_to_json_dict(g, report.witness)
    print(f"optimal value: {_frac_str(report.value)}")
    _emit_json(doc, args, f"strategy-{g.kind}.json")
    return 0


# --- parser ---------------------------------------------------------------

def _add_game_args(sub, with_p: bool = True):
    sub.add_argument("game", choices=("ms", "ams", "psams"), help="which game to build")
    if with_p:
        sub.add_argument("--p", help='synchronous weight as an exact rational, e.g. "1/7"')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pauligames",
        description="Nonlocal games from the two-qubit Pauli group: exact values and verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("structure", help="enumerate triples and magic squares, check counts")
    sp.add_argument("--out", help="write the JSON report here")
    sp.set_defaults(func=cmd_structure)

    sp = subs.add_parser("value", help="exact classical value by exhaustive scan")
    _add_game_args(sp)
    sp.add_argument("--symmetric", action="store_true", help="restrict to identical-play strategies")
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--out", help="write the JSON report here")
    sp.add_argument("--witness-out", help="write the witness strategy file here")
    sp.set_defaults(func=cmd_value)

    sp = subs.add_parser("verify-all", help="run the full verification suite")
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--out", help="write the JSON report here")
    sp.set_defaults(func=cmd_verify_all)

    sp = subs.add_parser("play", help="Monte Carlo referee for a stored or entangled strategy")
    _add_game_args(sp)
    sp.add_argument(
        "--strategy",
        required=True,
        help='path to a strategy file, or "entangled-perfect"',
    )
    sp.add_argument("--procedure", choices=games.PROCEDURES, default="flat")
    sp.add_argument("--rounds", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="write the round log JSON here")
    sp.set_defaults(func=cmd_play)

    sp = subs.add_parser("dump-game", help="write a game's JSON document")
    _add_game_args(sp)
    sp.add_argument("--out", help="write the JSON here (default: stdout)")
    sp.set_defaults(func=cmd_dump_game)

    sp = subs.add_parser("dump-strategy", help="solve a game and write the witness strategy")
    _add_game_args(sp)
    sp.add_argument("--symmetric", action="store_true", help="dump the identical-play witness")
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--out", help="write the JSON here (default: stdout)")
    sp.set_defaults(func=cmd_dump_strategy)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

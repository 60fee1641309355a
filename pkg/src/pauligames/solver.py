"""Exact evaluation and optimization of deterministic strategies.

Values are exact rationals throughout; every optimizer cross-checks its
result through a second route (responder re-derivation, direct pair
evaluation) and raises ConsistencyError on any disagreement.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import games
from ._scan import (
    VALID_ANSWERS,
    choices_to_answers,
    run_scan,
    unpack_choices,
    valid_answers,
)
from .errors import ConsistencyError, InputError
from .games import Answer, GameSpec, answer_parity, validate_answer

ALL_ANSWERS: tuple[Answer, ...] = tuple(
    (b0, b1, b2) for b0 in (0, 1) for b1 in (0, 1) for b2 in (0, 1)
)


@dataclass(frozen=True)
class DeterministicStrategy:
    """One 3-bit answer per question and per player."""

    alice: tuple[Answer, ...]
    bob: tuple[Answer, ...]

    def __post_init__(self):
        object.__setattr__(self, "alice", tuple(validate_answer(a) for a in self.alice))
        object.__setattr__(self, "bob", tuple(validate_answer(b) for b in self.bob))

    @property
    def is_symmetric(self) -> bool:
        return self.alice == self.bob


@dataclass(frozen=True)
class LosingPair:
    j: int
    k: int
    reason: str


@dataclass(frozen=True)
class ValueReport:
    """Result of an exact evaluation or optimization."""

    value: Fraction
    witness: DeterministicStrategy | None
    strategies_scanned: int
    wall_time: float
    losing_pairs: tuple[LosingPair, ...] | None = None

    def to_json_dict(self) -> dict:
        out = {
            "value": {"num": self.value.numerator, "den": self.value.denominator},
            "losing_pairs": [
                {"j": lp.j, "k": lp.k, "reason": lp.reason}
                for lp in (self.losing_pairs or ())
            ],
            "scanned": self.strategies_scanned,
            "seconds": self.wall_time,
        }
        return out


@dataclass(frozen=True)
class ConsistencyProfile:
    """Per-variable agreement pattern of a symmetric strategy.

    q counts variables answered identically in all three of their equations;
    two_thirds_vars lists the variables answered oppositely in exactly one.
    """

    q: int
    two_thirds_vars: tuple[int, ...]


@dataclass(frozen=True)
class SyncAgreementReport:
    """Maximal same-answer agreement available at the optimal value.

    max_agreement: over every scanned-side strategy attaining the optimal
    value, the largest number of questions where copying that side's own
    answer is itself an optimal response.  nonfull_max_agreement is the same
    maximum restricted to strategies where identical play is not optimal on
    every question (-1 if no such optimum exists).
    """

    optimal_value: Fraction
    max_agreement: int
    witness: DeterministicStrategy
    nonfull_max_agreement: int
    strategies_scanned: int
    wall_time: float


def _check_strategy_size(g: GameSpec, s: DeterministicStrategy) -> None:
    if len(s.alice) != g.n_questions or len(s.bob) != g.n_questions:
        raise InputError(
            f"strategy sized {len(s.alice)}/{len(s.bob)} for a game with"
            f" {g.n_questions} questions"
        )


def evaluate_pair(g: GameSpec, s: DeterministicStrategy) -> Fraction:
    """Exact winning probability of a fixed strategy pair."""
    _check_strategy_size(g, s)
    ints, den = g.integer_weights()
    total = 0
    for (j, k), w in zip(g.pairs, ints):
        total += w * games.payoff(g, j, k, s.alice[j], s.bob[k])
    return Fraction(total, den)


def losing_pairs(g: GameSpec, s: DeterministicStrategy) -> tuple[LosingPair, ...]:
    """Every positive-weight pair the strategy loses, with the first failing check."""
    _check_strategy_size(g, s)
    out = []
    for j, k in g.pairs:
        a, b = s.alice[j], s.bob[k]
        ej, ek = g.equations[j], g.equations[k]
        if answer_parity(a) != ej.parity or answer_parity(b) != ek.parity:
            out.append(LosingPair(j, k, "parity"))
            continue
        for v in g.shared_vars(j, k):
            if a[ej.vars.index(v)] != b[ek.vars.index(v)]:
                out.append(LosingPair(j, k, "consistency"))
                break
    return tuple(out)


def _response_scores(g: GameSpec, alice, answers: tuple[Answer, ...]):
    """Integer score table score[k][b] for a responder answering answers[b] at k."""
    ints, den = g.integer_weights()
    nq = g.n_questions
    score = [[0] * len(answers) for _ in range(nq)]
    for (j, k), w in zip(g.pairs, ints):
        ej, ek = g.equations[j], g.equations[k]
        a = validate_answer(alice[j])
        if answer_parity(a) != ej.parity:
            continue
        if j == k:
            for bi, b in enumerate(answers):
                if b == a:
                    score[k][bi] += w
            continue
        (v,) = g.shared_vars(j, k)
        pj = ej.vars.index(v)
        pk = ek.vars.index(v)
        for bi, b in enumerate(answers):
            if answer_parity(b) == ek.parity and b[pk] == a[pj]:
                score[k][bi] += w
    return score, den


def best_response_value(
    g: GameSpec, alice
) -> tuple[Fraction, list[set[Answer]]]:
    """Exact optimum over all responder strategies for a fixed first side.

    The payoff sum splits into independent per-question responder terms, so
    the optimum is the sum of per-question maxima.  Returns the value and,
    per question, the set of answers attaining that question's maximum.
    """
    if len(alice) != g.n_questions:
        raise InputError(f"expected {g.n_questions} answers, got {len(alice)}")
    score, den = _response_scores(g, alice, ALL_ANSWERS)
    total = 0
    argmax: list[set[Answer]] = []
    for k in range(g.n_questions):
        best = max(score[k])
        total += best
        argmax.append({ALL_ANSWERS[bi] for bi, sc in enumerate(score[k]) if sc == best})
    return Fraction(total, den), argmax


def explicit_best_response_value(
    g: GameSpec, alice, parity_restricted: bool = True
) -> Fraction:
    """Responder optimum by explicit enumeration of whole responder strategies.

    Oracle twin of best_response_value: the maximum runs over every complete
    responder table (4^n parity-valid ones, or 8^n unrestricted), with no
    per-question decomposition of the max.  Feasible for the 6-question game.
    """
    nq = g.n_questions
    if nq > 8:
        raise InputError("explicit enumeration is limited to small games")
    if parity_restricted:
        answer_sets = [valid_answers(e.parity) for e in g.equations]
    else:
        answer_sets = [ALL_ANSWERS] * nq
    score, den = _response_scores(g, alice, ALL_ANSWERS)
    index_of = {a: i for i, a in enumerate(ALL_ANSWERS)}
    cols = []
    for k in range(nq):
        cols.append(np.array([score[k][index_of[a]] for a in answer_sets[k]], dtype=np.int64))
    sizes = [len(s) for s in answer_sets]
    total = np.zeros(1, dtype=np.int64)
    for k in range(nq):
        total = (total[:, None] + cols[k][None, :]).reshape(-1)
    return Fraction(int(total.max()), den)


def _witness_from_choices(g: GameSpec, packed: int) -> tuple[tuple[Answer, ...], Fraction, list[set[Answer]]]:
    choices = unpack_choices(packed, g.n_questions)
    alice = choices_to_answers(g, choices)
    value, argmax = best_response_value(g, alice)
    return alice, value, argmax


def _pick_bob(argmax: list[set[Answer]], prefer=None) -> tuple[Answer, ...]:
    # Deterministic responder: per question the smallest parity-valid answer
    # among the optimal ones, except that prefer[k] wins when it is optimal.
    bob = []
    for k, opts in enumerate(argmax):
        if prefer is not None and prefer[k] in opts:
            bob.append(prefer[k])
            continue
        valid = sorted(a for a in opts if a in _VALID_SET)
        bob.append(valid[0] if valid else sorted(opts)[0])
    return tuple(bob)


_VALID_SET = frozenset(VALID_ANSWERS[0]) | frozenset(VALID_ANSWERS[1])


def solve_classical_value(
    g: GameSpec, threads: int | None = None, shard_bits: int | None = None
) -> ValueReport:
    """Exact classical value by exhaustive scan over packed first-side strategies.

    Parity-violating first-side answers are excluded without loss: such an
    answer contributes 0 to every pair it appears in, and any parity-valid
    replacement contributes at least 0.  The witness is the smallest packed
    strategy attaining the optimum, with a deterministic best response.
    """
    scan = run_scan(g, threads=threads, shard_bits=shard_bits)
    value = Fraction(scan.best, scan.tables.denom)
    alice, brv, argmax = _witness_from_choices(g, scan.best_witness)
    if brv != value:
        raise ConsistencyError(f"scan optimum {value} != responder re-derivation {brv}")
    witness = DeterministicStrategy(alice, _pick_bob(argmax))
    direct = evaluate_pair(g, witness)
    if direct != value:
        raise ConsistencyError(f"witness evaluates to {direct}, scan said {value}")
    return ValueReport(value, witness, scan.scanned, scan.seconds)


def solve_symmetric_value(
    g: GameSpec, threads: int | None = None, shard_bits: int | None = None
) -> ValueReport:
    """Exact optimum over identical-play (alice = bob) parity-valid strategies."""
    scan = run_scan(g, threads=threads, shard_bits=shard_bits)
    t = scan.tables
    value = Fraction(
        t.cross_weight * scan.sym_best + t.sync_weight * t.nq, t.denom
    )
    choices = unpack_choices(scan.sym_witness, g.n_questions)
    answers = choices_to_answers(g, choices)
    witness = DeterministicStrategy(answers, answers)
    direct = evaluate_pair(g, witness)
    if direct != value:
        raise ConsistencyError(f"symmetric witness evaluates to {direct}, scan said {value}")
    return ValueReport(value, witness, scan.scanned, scan.seconds)


def max_sync_agreement_over_optima(
    g: GameSpec, threads: int | None = None, shard_bits: int | None = None
) -> SyncAgreementReport:
    """Scan the optimal set for the most questions where copying is optimal.

    For each first-side strategy attaining the classical value, counts the
    questions where its own answer is already among the responder's optimal
    answers; reports the maximum over the whole optimal set, a witness pair
    realizing it, and the same maximum excluding strategies where copying is
    optimal everywhere.
    """
    scan = run_scan(g, threads=threads, shard_bits=shard_bits)
    value = Fraction(scan.best, scan.tables.denom)
    alice, brv, argmax = _witness_from_choices(g, scan.agree_witness)
    if brv != value:
        raise ConsistencyError("agreement witness does not attain the optimal value")
    recount = sum(1 for k, a in enumerate(alice) if a in argmax[k])
    if recount != scan.agree_max:
        raise ConsistencyError(
            f"agreement recount {recount} != scanned maximum {scan.agree_max}"
        )
    witness = DeterministicStrategy(alice, _pick_bob(argmax, prefer=alice))
    direct = evaluate_pair(g, witness)
    if direct != value:
        raise ConsistencyError(f"agreement witness pair evaluates to {direct}, not {value}")
    return SyncAgreementReport(
        optimal_value=value,
        max_agreement=scan.agree_max,
        witness=witness,
        nonfull_max_agreement=scan.agree_max_nonfull,
        strategies_scanned=scan.scanned,
        wall_time=scan.seconds,
    )


def find_optimal_witness(
    g: GameSpec, threads: int | None = None, shard_bits: int | None = None
) -> DeterministicStrategy:
    """The first-by-packed-order strategy pair attaining the classical value."""
    report = solve_classical_value(g, threads=threads, shard_bits=shard_bits)
    return report.witness


def max_satisfiable_assignment(equations) -> tuple[int, tuple[int, ...]]:
    """Exact maximum of simultaneously satisfied equations over all bit assignments."""
    n_vars = max(v for e in equations for v in e.vars) + 1
    best = -1
    witness = 0
    for m in range(1 << n_vars):
        count = 0
        for e in equations:
            b = ((m >> e.vars[0]) ^ (m >> e.vars[1]) ^ (m >> e.vars[2])) & 1
            if b == e.parity:
                count += 1
        if count > best:
            best = count
            witness = m
    return best, tuple((witness >> v) & 1 for v in range(n_vars))


def consistency_profile(g: GameSpec, alice) -> ConsistencyProfile:
    """Classify each variable of a symmetric parity-valid strategy.

    Each variable appears in exactly three equations; it is consistent when
    the strategy answers it identically in all three.  Parity-violating input
    is rejected because the classification only makes sense under it.
    """
    by_var = [[] for _ in range(g.n_variables)]
    for e in g.equations:
        for v in e.vars:
            by_var[v].append(e)
    if any(len(eqs) != 3 for eqs in by_var):
        raise InputError("consistency profiles need every variable in exactly 3 equations")
    if len(alice) != g.n_questions:
        raise InputError(f"expected {g.n_questions} answers, got {len(alice)}")
    answers = [validate_answer(a) for a in alice]
    for e in g.equations:
        if answer_parity(answers[e.id]) != e.parity:
            raise InputError(f"answer for question {e.id} violates its parity constraint")
    consistent = []
    two_thirds = []
    for v, eqs in enumerate(by_var):
        bits = {answers[e.id][e.vars.index(v)] for e in eqs}
        (consistent if len(bits) == 1 else two_thirds).append(v)
    return ConsistencyProfile(len(consistent), tuple(two_thirds))


def strategy_component_values(s: DeterministicStrategy) -> tuple[Fraction, Fraction]:
    """(cross-pair win rate, diagonal win rate) of a fixed pair on the 15-question games.

    Any mixture value is the affine combination (1-p)*cross + p*diag, which
    makes every fixed strategy a line in p.
    """
    ams = games.build_ams_game()
    cross = evaluate_pair(ams, s)
    diag_wins = 0
    for k in range(ams.n_questions):
        ek = ams.equations[k]
        if (
            s.alice[k] == s.bob[k]
            and answer_parity(s.alice[k]) == ek.parity
        ):
            diag_wins += 1
    return cross, Fraction(diag_wins, ams.n_questions)


@dataclass(frozen=True)
class SweepEntry:
    p: Fraction
    value: Fraction
    witness: DeterministicStrategy


def psams_value_sweep(
    p_values, threads: int | None = None, shard_bits: int | None = None
) -> list[SweepEntry]:
    """Exact classical value at each p, via the full scan per point."""
    entries = []
    for p in p_values:
        g = games.build_psams_game(p)
        report = solve_classical_value(g, threads=threads, shard_bits=shard_bits)
        entries.append(SweepEntry(Fraction(p), report.value, report.witness))
    return entries


def check_sweep_affine(entries: list[SweepEntry]) -> None:
    """Cross-check a sweep against the line structure of fixed strategies.

    Every fixed pair's value is affine in p, so the sweep values must equal
    the pointwise maximum of the witnesses' lines at every swept p.  Raises
    ConsistencyError on any violation.
    """
    lines = [strategy_component_values(e.witness) for e in entries]
    for e in entries:
        best_line = max((1 - e.p) * cross + e.p * diag for cross, diag in lines)
        if best_line != e.value:
            raise ConsistencyError(
                f"sweep value {e.value} at p={e.p} != pointwise line maximum {best_line}"
            )


def ms_double_enumeration_value() -> Fraction:
    """Classical value of the 6-question game by enumerating both sides fully.

    All 4^6 x 4^6 parity-valid strategy pairs are evaluated directly; no
    best-response shortcut is involved.  Oracle twin of solve_classical_value.
    """
    g = games.build_ms_game()
    nq = g.n_questions
    ints, den = g.integer_weights()
    n_strat = 4**nq
    choices = np.empty((n_strat, nq), dtype=np.int64)
    r = np.arange(n_strat, dtype=np.int64)
    for q in range(nq):
        choices[:, q] = (r >> (2 * q)) & 3
    win = np.zeros((n_strat, n_strat), dtype=np.int32)
    for (j, k), w in zip(g.pairs, ints):
        ej, ek = g.equations[j], g.equations[k]
        (v,) = g.shared_vars(j, k)
        pj, pk = ej.vars.index(v), ek.vars.index(v)
        aj = VALID_ANSWERS[ej.parity]
        ak = VALID_ANSWERS[ek.parity]
        table = np.zeros((4, 4), dtype=np.int32)
        for ca in range(4):
            for cb in range(4):
                if aj[ca][pj] == ak[cb][pk]:
                    table[ca, cb] = w
        win += table[choices[:, j][:, None], choices[:, k][None, :]]
    return Fraction(int(win.max()), den)


# --- strategy files -------------------------------------------------------

def strategy_to_json_dict(g: GameSpec, s: DeterministicStrategy) -> dict:
    _check_strategy_size(g, s)
    out = {
        "game": g.kind,
        "alice": [list(a) for a in s.alice],
        "bob": [list(b) for b in s.bob],
    }
    if g.kind == "psams":
        out["p"] = {
            "num": g.sync_weight.numerator,
            "den": g.sync_weight.denominator,
        }
    return out


def save_strategy(path, g: GameSpec, s: DeterministicStrategy) -> None:
    with open(path, "w") as fh:
        json.dump(strategy_to_json_dict(g, s), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _parse_answer_row(row, where: str) -> Answer:
    if not isinstance(row, list) or len(row) != 3 or any(b not in (0, 1) for b in row):
        raise InputError(f"{where} must be a list of three bits, got {row!r}")
    return tuple(row)


def load_strategy(path, g: GameSpec) -> DeterministicStrategy:
    """Read a strategy file and validate it against a game."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read strategy file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"strategy file {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"strategy file {path}: top level must be an object")
    kind = doc.get("game")
    if kind != g.kind:
        raise InputError(f"strategy file {path}: game {kind!r} does not match {g.kind!r}")
    if g.kind == "psams":
        p = doc.get("p")
        if not isinstance(p, dict) or set(p) != {"num", "den"}:
            raise InputError(f"strategy file {path}: psams needs p as {{num, den}}")
        if Fraction(p["num"], p["den"]) != g.sync_weight:
            raise InputError(
                f"strategy file {path}: p={p['num']}/{p['den']} does not match the game"
            )
    sides = {}
    for side in ("alice", "bob"):
        rows = doc.get(side)
        if not isinstance(rows, list) or len(rows) != g.n_questions:
            raise InputError(
                f"strategy file {path}: {side} must list {g.n_questions} answers"
            )
        sides[side] = tuple(
            _parse_answer_row(row, f"{side}[{i}]") for i, row in enumerate(rows)
        )
    return DeterministicStrategy(sides["alice"], sides["bob"])


def verify_strategy_file(path, g: GameSpec) -> ValueReport:
    """Exact value of a stored strategy plus every losing pair with its reason."""
    start = time.perf_counter()
    s = load_strategy(path, g)
    value = evaluate_pair(g, s)
    losers = losing_pairs(g, s)
    ints, den = g.integer_weights()
    lost = sum(w for (jk, w) in zip(g.pairs, ints) if any((lp.j, lp.k) == jk for lp in losers))
    if Fraction(den - lost, den) != value:
        raise ConsistencyError("losing-pair weights disagree with the evaluated value")
    return ValueReport(value, s, 1, time.perf_counter() - start, losers)

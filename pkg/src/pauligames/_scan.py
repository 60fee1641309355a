"""Exhaustive scan over packed one-sided strategies.

A packed strategy holds, for each question, a 2-bit choice indexing one of
the four parity-satisfying answers of that question (sorted ascending as bit
tuples).  The scan walks the whole 4^n space in Gray-code order: one step
flips a single packed bit, so exactly one question changes its choice and
only the score tables of its at-most-6 intersecting partner questions move.

Scores are integers over a fixed common denominator.  In one pass the kernel
tracks, per shard:
  * the best responder-optimized total and its minimal packed witness,
  * the best identical-play (symmetric) pair total and minimal witness,
  * among strategies attaining the best total, the maximal count of
    questions where copying the scanned side's own answer is already a best
    response (and the same maximum over strategies where that count is not
    full, i.e. where identical play is not itself optimal).
Shards partition the packed space contiguously; the shard count is fixed per
game size, so the merged result is independent of thread count.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConsistencyError, InputError
from .games import Answer, GameSpec

# Parity-valid answers per parity bit, ascending; choice bits index into these.
VALID_ANSWERS: tuple[tuple[Answer, ...], tuple[Answer, ...]] = (
    ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)),
    ((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)),
)


def valid_answers(parity: int) -> tuple[Answer, ...]:
    return VALID_ANSWERS[parity & 1]


def pack_choices(choices) -> int:
    packed = 0
    for q, c in enumerate(choices):
        if not 0 <= c <= 3:
            raise InputError(f"choice out of range at question {q}: {c}")
        packed |= c << (2 * q)
    return packed


def unpack_choices(packed: int, nq: int) -> tuple[int, ...]:
    if not 0 <= packed < 1 << (2 * nq):
        raise InputError(f"packed strategy out of range: {packed}")
    return tuple((packed >> (2 * q)) & 3 for q in range(nq))


def choices_to_answers(g: GameSpec, choices) -> tuple[Answer, ...]:
    return tuple(
        VALID_ANSWERS[g.equations[q].parity][c] for q, c in enumerate(choices)
    )


def answers_to_choices(g: GameSpec, answers) -> tuple[int, ...]:
    """Inverse of choices_to_answers; rejects parity-violating answers."""
    choices = []
    for q, a in enumerate(answers):
        table = VALID_ANSWERS[g.equations[q].parity]
        if tuple(a) not in table:
            raise InputError(f"answer {a} violates the parity of question {q}")
        choices.append(table.index(tuple(a)))
    return tuple(choices)


@dataclass(frozen=True)
class ScanTables:
    """Integer tables driving the kernel; scores are counts over 1/denom units."""

    nq: int
    deg: np.ndarray
    nbr: np.ndarray
    contrib: np.ndarray
    cross_weight: int
    sync_weight: int
    denom: int


def build_tables(g: GameSpec) -> ScanTables:
    nq = g.n_questions
    cross = [(j, k) for (j, k) in g.pairs if j != k]
    diag = [(j, k) for (j, k) in g.pairs if j == k]
    if diag and len(diag) != nq:
        raise ConsistencyError("diagonal pairs must cover every question or none")
    p = g.sync_weight
    denom = len(cross) * p.denominator if cross else nq * p.denominator
    wa = p.denominator - p.numerator
    ws_total = p.numerator * (len(cross) if cross else nq)
    if ws_total % nq:
        raise ConsistencyError("sync weight does not divide evenly across questions")
    ws = ws_total // nq
    # Cross-check the integer weights against the exact rational ones.
    for (j, k), w in zip(g.pairs, g.weights):
        expect = Fraction(wa if j != k else ws, denom)
        if w != expect:
            raise ConsistencyError(f"non-uniform pair weight at ({j}, {k}): {w} != {expect}")

    maxdeg = 0
    partners = [[] for _ in range(nq)]
    for j, k in cross:
        partners[j].append(k)
    maxdeg = max((len(x) for x in partners), default=0)
    deg = np.array([len(x) for x in partners], dtype=np.int64)
    nbr = np.zeros((nq, max(maxdeg, 1)), dtype=np.int64)
    for j, ks in enumerate(partners):
        for t, k in enumerate(sorted(ks)):
            nbr[j, t] = k

    contrib = np.zeros((nq, nq, 4, 4), dtype=np.int8)
    for j, k in cross:
        ej, ek = g.equations[j], g.equations[k]
        (v,) = set(ej.vars) & set(ek.vars)
        pj = ej.vars.index(v)
        pk = ek.vars.index(v)
        aj = VALID_ANSWERS[ej.parity]
        ak = VALID_ANSWERS[ek.parity]
        for ca in range(4):
            for cb in range(4):
                contrib[j, k, ca, cb] = 1 if aj[ca][pj] == ak[cb][pk] else 0
    return ScanTables(nq, deg, nbr, contrib, wa, ws, denom)


@dataclass(frozen=True)
class ScanResult:
    """Merged kernel output; integer scores over tables.denom."""

    tables: ScanTables
    best: int
    best_witness: int
    sym_best: int
    sym_witness: int
    agree_max: int
    agree_witness: int
    agree_max_nonfull: int
    agree_witness_nonfull: int
    scanned: int
    seconds: float


_kernel = None


def _get_kernel():
    global _kernel
    if _kernel is None:
        from ._kernel import scan_kernel

        _kernel = scan_kernel
    return _kernel


_cache: dict = {}


def _cache_key(g: GameSpec, shard_bits: int, threads: int):
    eqs = tuple((e.vars, e.parity) for e in g.equations)
    return (eqs, g.sync_weight, shard_bits, threads)


def default_shard_bits(nq: int) -> int:
    return 8 if nq >= 10 else 4


def run_scan(g: GameSpec, threads: int | None = None, shard_bits: int | None = None) -> ScanResult:
    """Run (or reuse) the full 4^n scan for this game at this thread count.

    Results are memoized per (game, shards, threads); reruns at another
    thread count execute in full, which is what the determinism checks need.
    """
    import numba

    if shard_bits is None:
        shard_bits = default_shard_bits(g.n_questions)
    if threads is None:
        threads = numba.get_num_threads()
    if threads < 1:
        raise InputError(f"threads must be >= 1, got {threads}")
    shard_bits = min(shard_bits, 2 * g.n_questions)
    key = _cache_key(g, shard_bits, threads)
    if key in _cache:
        return _cache[key]

    tables = build_tables(g)
    kernel = _get_kernel()
    old_threads = numba.get_num_threads()
    start = time.perf_counter()
    try:
        numba.set_num_threads(threads)
        out = kernel(
            tables.nq,
            tables.deg,
            tables.nbr,
            tables.contrib,
            tables.cross_weight,
            tables.sync_weight,
            1 << shard_bits,
            (1 << (2 * tables.nq)) >> shard_bits,
        )
    finally:
        numba.set_num_threads(old_threads)
    seconds = time.perf_counter() - start
    result = _merge(tables, out, seconds)
    _cache[key] = result
    return result


def _merge(tables: ScanTables, out, seconds: float) -> ScanResult:
    (best, bestwit, symbest, symwit, agreebest, agreewit, agreenf, agreenfwit) = out
    gbest = int(best.max())
    on = best == gbest
    gwit = int(bestwit[on].min())
    gagree = int(agreebest[on].max())
    gagreewit = int(agreewit[on & (agreebest == gagree)].min())
    nf_mask = on & (agreenf >= 0)
    if nf_mask.any():
        gnf = int(agreenf[nf_mask].max())
        gnfwit = int(agreenfwit[nf_mask & (agreenf == gnf)].min())
    else:
        gnf = -1
        gnfwit = -1
    gsym = int(symbest.max())
    sym_on = symbest == gsym
    gsymwit = int(symwit[sym_on].min())
    return ScanResult(
        tables=tables,
        best=gbest,
        best_witness=gwit,
        sym_best=gsym,
        sym_witness=gsymwit,
        agree_max=gagree,
        agree_witness=gagreewit,
        agree_max_nonfull=gnf,
        agree_witness_nonfull=gnfwit,
        scanned=1 << (2 * tables.nq),
        seconds=seconds,
    )

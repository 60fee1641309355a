"""Exact dense simulation of the shared-entanglement strategy.

The players share two maximally entangled qubit pairs.  Qubit order is
(Alice1, Alice2, Bob1, Bob2) with pairing (Alice1,Bob1), (Alice2,Bob2), so a
basis state's index is 4*i + j where i indexes Alice's two qubits and j
Bob's.  For each question a player measures the three commuting observables
of that equation's triple; outcomes are labeled by the parity-valid answer
bits in the equation's printed variable order.

Bob's observables are the entrywise complex conjugates of Alice's: with this
state, measuring M on Alice's side correlates with transpose(M) on Bob's, so
conjugation is what makes every shared-variable outcome agree (observables
with an odd number of Y letters are antisymmetric and would decorrelate
otherwise).  No step assumes that: win probabilities are computed from the
state vector, and the tests demand 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import games, pauli
from .errors import ConsistencyError, InputError
from .games import Answer, GameSpec
from ._scan import valid_answers

TOL = 1e-12


def bell_state() -> np.ndarray:
    """Two shared Bell pairs as one 16-amplitude state vector."""
    psi = np.zeros(16, dtype=complex)
    for i in range(4):
        psi[4 * i + i] = 0.5
    return psi


@dataclass(frozen=True)
class ProjectorFamily:
    """The four projective outcomes of one question's triple measurement.

    answers[i] labels projectors[i]; observables holds the three measured
    matrices in the equation's variable order.
    """

    question: int
    answers: tuple[Answer, ...]
    projectors: np.ndarray
    observables: np.ndarray


def triple_projectors(ops, conjugated: bool) -> tuple[int, tuple[Answer, ...], np.ndarray, np.ndarray]:
    """Projectors of a commuting triple, labeled in the given operator order.

    The projector for answer a is built from the first two observables as
    (I + (-1)^a0 O0)/2 (I + (-1)^a1 O1)/2; the third bit is pinned by the
    product sign, so every label satisfies the triple's parity by
    construction.  conjugated=True conjugates each observable entrywise.
    """
    ops = tuple(ops)
    if len(ops) != 3 or len(set(ops)) != 3 or any(p.is_identity for p in ops):
        raise InputError(f"need 3 distinct non-identity ops, got {ops}")
    for i in range(3):
        for l in range(i + 1, 3):
            if not pauli.commutes(ops[i], ops[l]):
                raise InputError(
                    f"{ops[i].label} and {ops[l].label} do not commute"
                )
    prod = pauli.multiply(
        pauli.multiply(pauli.SignedPauli(ops[0]), pauli.SignedPauli(ops[1])),
        pauli.SignedPauli(ops[2]),
    )
    if not prod.op.is_identity:
        raise InputError(f"product of {[p.label for p in ops]} is not +-identity")
    parity = 0 if prod.sign == 1 else 1

    mats = np.stack([pauli.op_matrix(p) for p in ops])
    if conjugated:
        mats = np.conj(mats)
    eye = np.eye(4, dtype=complex)
    by_answer = {}
    for a0 in (0, 1):
        for a1 in (0, 1):
            a2 = a0 ^ a1 ^ parity
            proj = ((eye + (-1) ** a0 * mats[0]) / 2) @ ((eye + (-1) ** a1 * mats[1]) / 2)
            by_answer[(a0, a1, a2)] = proj
    answers = valid_answers(parity)
    projectors = np.stack([by_answer[a] for a in answers])
    return parity, answers, projectors, mats


def projector_family(g: GameSpec, question: int, conjugated: bool) -> ProjectorFamily:
    """The measurement family for one question of a game."""
    eq = g.equations[question]
    ops = [pauli.op_from_label(g.variable_ops[v]) for v in eq.vars]
    parity, answers, projectors, mats = triple_projectors(ops, conjugated)
    if parity != eq.parity:
        raise ConsistencyError(
            f"question {question}: computed product sign gives parity {parity},"
            f" table says {eq.parity}"
        )
    return ProjectorFamily(question, answers, projectors, mats)


def validate_family(fam: ProjectorFamily, tol: float = TOL) -> None:
    """Hermiticity, idempotence, rank 1, orthogonality, completeness, eigenvalues."""
    projs = fam.projectors
    total = np.zeros((4, 4), dtype=complex)
    for i, p in enumerate(projs):
        if np.abs(p - p.conj().T).max() > tol:
            raise ConsistencyError(f"projector {i} is not Hermitian")
        if np.abs(p @ p - p).max() > tol:
            raise ConsistencyError(f"projector {i} is not idempotent")
        if abs(p.trace() - 1) > tol:
            raise ConsistencyError(f"projector {i} does not have rank 1")
        total += p
        for l in range(i):
            if np.abs(projs[l] @ p).max() > tol:
                raise ConsistencyError(f"projectors {l} and {i} are not orthogonal")
    if np.abs(total - np.eye(4)).max() > tol:
        raise ConsistencyError("projectors do not sum to the identity")
    for i, p in enumerate(projs):
        for pos in range(3):
            want = (-1) ** fam.answers[i][pos] * p
            if np.abs(fam.observables[pos] @ p - want).max() > tol:
                raise ConsistencyError(
                    f"projector {i} is not a (-1)^bit eigenvector of observable {pos}"
                )


@dataclass(frozen=True)
class EntangledStrategyDescriptor:
    """Shared state plus one projector family per question and side."""

    state: np.ndarray
    alice: tuple[ProjectorFamily, ...]
    bob: tuple[ProjectorFamily, ...]


def perfect_strategy(g: GameSpec) -> EntangledStrategyDescriptor:
    """Two Bell pairs; Alice measures the canonical observables, Bob their conjugates."""
    alice = tuple(projector_family(g, q, conjugated=False) for q in range(g.n_questions))
    bob = tuple(projector_family(g, q, conjugated=True) for q in range(g.n_questions))
    return EntangledStrategyDescriptor(bell_state(), alice, bob)


def pair_probability(state: np.ndarray, p_alice: np.ndarray, q_bob: np.ndarray) -> float:
    """<psi| P (x) Q |psi> for Alice acting on qubits 1,2 and Bob on 3,4."""
    m = np.kron(p_alice, q_bob)
    val = np.vdot(state, m @ state)
    if abs(val.imag) > 1e-9:
        raise ConsistencyError(f"probability has imaginary part {val.imag}")
    return float(val.real)


def joint_outcome_probabilities(
    s: EntangledStrategyDescriptor, j: int, k: int
) -> np.ndarray:
    """4x4 Born matrix: entry (ai, bi) for Alice's answers[ai], Bob's answers[bi]."""
    fa = s.alice[j]
    fb = s.bob[k]
    out = np.empty((4, 4))
    for ai in range(4):
        for bi in range(4):
            out[ai, bi] = pair_probability(s.state, fa.projectors[ai], fb.projectors[bi])
    return out


def conditional_win_probability(
    g: GameSpec, s: EntangledStrategyDescriptor, j: int, k: int
) -> float:
    """Win probability of the strategy on one positive-weight question pair."""
    if g.pair_weight(j, k) == 0:
        raise InputError(f"question pair ({j}, {k}) has weight 0 in this game")
    probs = joint_outcome_probabilities(s, j, k)
    fa, fb = s.alice[j], s.bob[k]
    total = 0.0
    for ai in range(4):
        for bi in range(4):
            total += probs[ai, bi] * games.payoff(g, j, k, fa.answers[ai], fb.answers[bi])
    return total


def entangled_win_probability(g: GameSpec, s: EntangledStrategyDescriptor) -> float:
    """Overall winning probability: pair weights times conditional win probabilities."""
    if len(s.alice) != g.n_questions or len(s.bob) != g.n_questions:
        raise InputError("strategy descriptor does not match the game's question count")
    total = 0.0
    for (j, k), w in zip(g.pairs, g.weights):
        total += float(w) * conditional_win_probability(g, s, j, k)
    return total


def sample_entangled_round(g: GameSpec, s: EntangledStrategyDescriptor, rng):
    """One seeded round: question pair, Born-sampled outcomes, win flag.

    The outcome is drawn by walking the 16-entry joint distribution in
    (alice index, bob index) order against a single uniform draw.
    """
    j, k = games.sample_question_pair(g, "flat", rng)
    probs = joint_outcome_probabilities(s, j, k).reshape(-1)
    u = float(rng.random())
    acc = 0.0
    idx = 15
    for i, pr in enumerate(probs):
        acc += pr
        if u < acc:
            idx = i
            break
    ai, bi = divmod(idx, 4)
    a = s.alice[j].answers[ai]
    b = s.bob[k].answers[bi]
    return j, k, a, b, games.payoff(g, j, k, a, b)

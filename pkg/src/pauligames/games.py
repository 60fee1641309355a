"""Game definitions: questions, exact pair distributions, payoff, samplers.

Three games are built here.  The magic square game asks one of 6 equations
over 9 variables; the augmented game asks one of 15 equations over 15
variables (one per commuting triple); the synchronous variant mixes the
augmented game's cross pairs with same-question pairs at rate p.  All
probabilities are exact rationals.

Randomness contract: every sampler takes a numpy Generator
(numpy.random.default_rng, PCG64); identical seeds give identical draws on
every platform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import pauli
from .errors import ConsistencyError, InputError

Answer = tuple[int, int, int]

PROCEDURES = ("flat", "equation_first", "variable_first", "magic_square_first")

# Variable index -> operator label, fixed once per game family.
AMS_VARIABLE_OPS = (
    "IX", "IY", "IZ", "XI", "YI", "ZI",
    "XX", "XY", "XZ", "YX", "YY", "YZ", "ZX", "ZY", "ZZ",
)
MS_VARIABLE_OPS = ("XX", "YZ", "ZY", "YY", "ZX", "XZ", "ZZ", "XY", "YX")

# (vars in printed order, parity); ids are list positions.
_AMS_TABLE = (
    ((0, 3, 6), 0),
    ((1, 3, 7), 0),
    ((2, 3, 8), 0),
    ((0, 4, 9), 0),
    ((1, 4, 10), 0),
    ((2, 4, 11), 0),
    ((0, 5, 12), 0),
    ((1, 5, 13), 0),
    ((2, 5, 14), 0),
    ((11, 13, 6), 0),
    ((12, 8, 10), 0),
    ((7, 9, 14), 0),
    ((6, 10, 14), 1),
    ((7, 11, 12), 1),
    ((8, 9, 13), 1),
)
_MS_TABLE = (
    ((0, 1, 2), 0),
    ((3, 4, 5), 0),
    ((6, 7, 8), 0),
    ((0, 3, 6), 1),
    ((1, 4, 7), 1),
    ((2, 5, 8), 1),
)


@dataclass(frozen=True)
class Equation:
    """One game constraint: three variable indices whose bits must XOR to parity.

    vars keeps the printed order; answer bit i refers to vars[i].
    """

    id: int
    vars: tuple[int, int, int]
    parity: int


def answer_parity(a: Answer) -> int:
    return (a[0] ^ a[1] ^ a[2]) & 1


def validate_answer(a) -> Answer:
    if (
        not isinstance(a, (tuple, list))
        or len(a) != 3
        or any(b not in (0, 1) for b in a)
    ):
        raise InputError(f"answer must be three bits, got {a!r}")
    return tuple(a)


@dataclass(frozen=True)
class GameSpec:
    """A question set with an exact distribution over ordered question pairs.

    pairs lists every positive-weight ordered pair (j, k), sorted; weights is
    aligned with it.  sync_weight is the total probability given to diagonal
    (j, j) pairs, split uniformly among them.
    """

    kind: str
    equations: tuple[Equation, ...]
    variable_ops: tuple[str, ...]
    pairs: tuple[tuple[int, int], ...]
    weights: tuple[Fraction, ...]
    sync_weight: Fraction

    @property
    def n_questions(self) -> int:
        return len(self.equations)

    @property
    def n_variables(self) -> int:
        return len(self.variable_ops)

    def pair_weight(self, j: int, k: int) -> Fraction:
        try:
            idx = self.pairs.index((j, k))
        except ValueError:
            return Fraction(0)
        return self.weights[idx]

    def shared_vars(self, j: int, k: int) -> tuple[int, ...]:
        if j == k:
            return self.equations[j].vars
        sj = set(self.equations[j].vars)
        return tuple(v for v in self.equations[k].vars if v in sj)

    def integer_weights(self) -> tuple[list[int], int]:
        """Weights as integers over a common denominator (weights[i] = ints[i]/den)."""
        den = 1
        for w in self.weights:
            den = den * w.denominator // math.gcd(den, w.denominator)
        ints = [int(w * den) for w in self.weights]
        if sum(ints) != den:
            raise ConsistencyError("pair weights do not sum to 1")
        return ints, den

    def to_json_dict(self) -> dict:
        return {
            "equations": [
                {"id": e.id, "vars": list(e.vars), "parity": e.parity}
                for e in self.equations
            ],
            "pairs": [
                {"j": j, "k": k, "num": w.numerator, "den": w.denominator}
                for (j, k), w in zip(self.pairs, self.weights)
            ],
            "p": {"num": self.sync_weight.numerator, "den": self.sync_weight.denominator},
        }


def _intersecting_pairs(equations) -> list[tuple[int, int]]:
    out = []
    for j, ej in enumerate(equations):
        for k, ek in enumerate(equations):
            if j != k and len(set(ej.vars) & set(ek.vars)) == 1:
                out.append((j, k))
    return sorted(out)


def _cross_check_parities(equations, variable_ops) -> None:
    # The printed parity column must equal the sign of the operator product,
    # recomputed from the algebra.
    for eq in equations:
        ops = [pauli.SignedPauli(pauli.op_from_label(variable_ops[v])) for v in eq.vars]
        prod = pauli.multiply(pauli.multiply(ops[0], ops[1]), ops[2])
        if not prod.op.is_identity:
            raise ConsistencyError(f"equation {eq.id}: operator product is not +-identity")
        sign_parity = 0 if prod.sign == 1 else 1
        if sign_parity != eq.parity:
            raise ConsistencyError(
                f"equation {eq.id}: printed parity {eq.parity} but operator product sign"
                f" gives {sign_parity}"
            )


def build_ms_game() -> GameSpec:
    """The 6-question magic square game: rows demand parity 0, columns parity 1."""
    equations = tuple(Equation(i, v, p) for i, (v, p) in enumerate(_MS_TABLE))
    _cross_check_parities(equations, MS_VARIABLE_OPS)
    pairs = tuple(_intersecting_pairs(equations))
    if len(pairs) != 18:
        raise ConsistencyError(f"expected 18 intersecting ordered pairs, got {len(pairs)}")
    w = Fraction(1, len(pairs))
    return GameSpec("ms", equations, MS_VARIABLE_OPS, pairs, (w,) * len(pairs), Fraction(0))


def _regenerate_ams_equations() -> set[tuple[frozenset, int]]:
    label_to_var = {lab: i for i, lab in enumerate(AMS_VARIABLE_OPS)}
    gen = set()
    for t in pauli.enumerate_commuting_triples():
        vars_ = frozenset(label_to_var[p.label] for p in t.ops)
        gen.add((vars_, 0 if t.product_sign == 1 else 1))
    return gen


def build_ams_game() -> GameSpec:
    """The 15-question augmented game: one equation per commuting triple.

    The hard-coded table is cross-checked against the triples regenerated
    from the group structure; any mismatch is a ConsistencyError.
    """
    equations = tuple(Equation(i, v, p) for i, (v, p) in enumerate(_AMS_TABLE))
    _cross_check_parities(equations, AMS_VARIABLE_OPS)
    hard = {(frozenset(e.vars), e.parity) for e in equations}
    if _regenerate_ams_equations() != hard:
        raise ConsistencyError("regenerated commuting triples do not match the equation table")
    pairs = tuple(_intersecting_pairs(equations))
    if len(pairs) != 90:
        raise ConsistencyError(f"expected 90 intersecting ordered pairs, got {len(pairs)}")
    w = Fraction(1, len(pairs))
    return GameSpec("ams", equations, AMS_VARIABLE_OPS, pairs, (w,) * len(pairs), Fraction(0))


def build_psams_game(p) -> GameSpec:
    """Mixture game: cross pairs at total weight 1-p, diagonal pairs at total weight p.

    p must be an exact rational in [0, 1].  p = 0 returns the plain
    augmented game; p = 1 keeps only the 15 diagonal pairs.
    """
    if isinstance(p, float):
        raise InputError("p must be an exact rational (Fraction or int), not a float")
    try:
        p = Fraction(p)
    except (TypeError, ValueError) as exc:
        raise InputError(f"p must be an exact rational, got {p!r}") from exc
    if not 0 <= p <= 1:
        raise InputError(f"p must lie in [0, 1], got {p}")
    base = build_ams_game()
    if p == 0:
        return base
    pairs = []
    weights = []
    if p < 1:
        cross = (1 - p) / len(base.pairs)
        for jk in base.pairs:
            pairs.append(jk)
            weights.append(cross)
    diag = p / base.n_questions
    for j in range(base.n_questions):
        pairs.append((j, j))
        weights.append(diag)
    order = sorted(range(len(pairs)), key=lambda i: pairs[i])
    return GameSpec(
        "psams",
        base.equations,
        base.variable_ops,
        tuple(pairs[i] for i in order),
        tuple(weights[i] for i in order),
        p,
    )


def build_game(kind: str, p=None) -> GameSpec:
    """Dispatch on the game name used by files and the CLI."""
    if kind == "ms":
        if p not in (None, 0):
            raise InputError("the magic square game takes no p")
        return build_ms_game()
    if kind == "ams":
        if p not in (None, 0):
            raise InputError("the augmented game takes no p; use psams")
        return build_ams_game()
    if kind == "psams":
        if p is None:
            raise InputError("psams requires p")
        return build_psams_game(p)
    raise InputError(f"unknown game {kind!r} (expected ms, ams, or psams)")


def payoff(g: GameSpec, j: int, k: int, a: Answer, b: Answer) -> int:
    """1 iff both answers have the right parity and agree on every shared variable.

    For a diagonal pair all three variables are shared, so the answers must
    be identical.  Querying a zero-weight pair is an input error.
    """
    a = validate_answer(a)
    b = validate_answer(b)
    if g.pair_weight(j, k) == 0:
        raise InputError(f"question pair ({j}, {k}) has weight 0 in this game")
    ej, ek = g.equations[j], g.equations[k]
    if answer_parity(a) != ej.parity or answer_parity(b) != ek.parity:
        return 0
    for v in g.shared_vars(j, k):
        if a[ej.vars.index(v)] != b[ek.vars.index(v)]:
            return 0
    return 1


@dataclass(frozen=True)
class PairDistribution:
    """Exact rational distribution over ordered question pairs."""

    weights: tuple[tuple[tuple[int, int], Fraction], ...]

    @classmethod
    def from_dict(cls, d: dict) -> "PairDistribution":
        items = tuple(sorted((jk, w) for jk, w in d.items() if w != 0))
        total = sum(w for _, w in items)
        if total != 1:
            raise ConsistencyError(f"pair distribution sums to {total}, not 1")
        return cls(items)

    def as_dict(self) -> dict:
        return dict(self.weights)


def _equations_by_variable(g: GameSpec) -> list[list[int]]:
    by_var = [[] for _ in range(g.n_variables)]
    for e in g.equations:
        for v in e.vars:
            by_var[v].append(e.id)
    return by_var


def _require_ams(g: GameSpec, procedure: str) -> None:
    if g.kind != "ams":
        raise InputError(
            f"procedure {procedure!r} is defined only for the plain augmented game"
        )


def _square_line_ids(g: GameSpec) -> list[tuple[list[int], list[int]]]:
    """For each operator magic square, its row and column equation ids."""
    label_to_var = {lab: i for i, lab in enumerate(g.variable_ops)}
    varset_to_eq = {frozenset(e.vars): e.id for e in g.equations}

    def eq_id(triple):
        return varset_to_eq[frozenset(label_to_var[p.label] for p in triple.ops)]

    squares = pauli.enumerate_magic_squares(pauli.enumerate_commuting_triples())
    return [
        ([eq_id(t) for t in s.rows], [eq_id(t) for t in s.cols])
        for s in squares
    ]


def exact_pair_distribution(procedure: str) -> PairDistribution:
    """The ordered-pair distribution each sampling procedure induces, computed exactly.

    No sampling is involved: the procedure's decision tree is summed with
    rational weights.
    """
    g = build_ams_game()
    dist: dict = {}
    if procedure == "flat":
        for jk, w in zip(g.pairs, g.weights):
            dist[jk] = dist.get(jk, Fraction(0)) + w
    elif procedure == "equation_first":
        partners = _partner_table(g)
        for j in range(g.n_questions):
            for k in partners[j]:
                w = Fraction(1, g.n_questions) * Fraction(1, len(partners[j]))
                dist[(j, k)] = dist.get((j, k), Fraction(0)) + w
    elif procedure == "variable_first":
        by_var = _equations_by_variable(g)
        for eqs in by_var:
            for j in eqs:
                for k in eqs:
                    if j != k:
                        w = (
                            Fraction(1, g.n_variables)
                            * Fraction(1, len(eqs))
                            * Fraction(1, len(eqs) - 1)
                        )
                        dist[(j, k)] = dist.get((j, k), Fraction(0)) + w
    elif procedure == "magic_square_first":
        squares = _square_line_ids(g)
        for rows, cols in squares:
            for r in rows:
                for c in cols:
                    for jk in ((r, c), (c, r)):
                        w = Fraction(1, len(squares)) * Fraction(1, 2 * len(rows) * len(cols))
                        dist[jk] = dist.get(jk, Fraction(0)) + w
    else:
        raise InputError(f"unknown procedure {procedure!r} (expected one of {PROCEDURES})")
    return PairDistribution.from_dict(dist)


def _partner_table(g: GameSpec) -> list[list[int]]:
    partners = [[] for _ in range(g.n_questions)]
    for j, k in g.pairs:
        if j != k:
            partners[j].append(k)
    return [sorted(p) for p in partners]


def draw_weighted_index(weights_int: list[int], den: int, rng) -> int:
    """Exact integer-weight categorical draw: index i with probability weights_int[i]/den."""
    u = int(rng.integers(den))
    acc = 0
    for i, w in enumerate(weights_int):
        acc += w
        if u < acc:
            return i
    raise ConsistencyError("integer weights do not cover the draw range")


def sample_question_pair(g: GameSpec, procedure: str, rng) -> tuple[int, int]:
    """One ordered question pair, drawn by the requested procedure.

    flat works for every game; the other procedures are defined only for the
    plain augmented game.  Draw order is fixed, so a seeded generator
    reproduces the sequence exactly.
    """
    if procedure == "flat":
        ints, den = g.integer_weights()
        return g.pairs[draw_weighted_index(ints, den, rng)]
    _require_ams(g, procedure)
    if procedure == "equation_first":
        j = int(rng.integers(g.n_questions))
        partners = _partner_table(g)[j]
        return j, partners[int(rng.integers(len(partners)))]
    if procedure == "variable_first":
        by_var = _equations_by_variable(g)
        eqs = by_var[int(rng.integers(g.n_variables))]
        j = eqs[int(rng.integers(len(eqs)))]
        rest = [k for k in eqs if k != j]
        return j, rest[int(rng.integers(len(rest)))]
    if procedure == "magic_square_first":
        squares = _square_line_ids(g)
        rows, cols = squares[int(rng.integers(len(squares)))]
        r = rows[int(rng.integers(len(rows)))]
        c = cols[int(rng.integers(len(cols)))]
        if int(rng.integers(2)):
            return c, r
        return r, c
    raise InputError(f"unknown procedure {procedure!r} (expected one of {PROCEDURES})")

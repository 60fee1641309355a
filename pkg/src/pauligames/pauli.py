"""Two-qubit Pauli algebra and combinatorics.

Elements of the signless two-qubit Pauli group are kept in symplectic form
(one X bit and one Z bit per qubit).  Products carry an explicit power of i
relative to the canonical tensor-product representatives, so the +-II signs
of triple products are computed, never assumed.  On top of the algebra this
module enumerates the 15 commuting triples, their incidence structure, and
the 10 operator magic squares.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, InputError

_LETTERS = "IXYZ"
# (x, z) symplectic bits per single-qubit letter; Y carries both.
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}

_SINGLE_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True, order=True)
class PauliOp:
    """Signless two-qubit Pauli element in symplectic form.

    Bit 0 of each field belongs to the first qubit, bit 1 to the second.
    Ordering is lexicographic on (x_bits, z_bits); that order is the
    canonical sort used everywhere triples are stored.
    """

    x_bits: int
    z_bits: int

    def __post_init__(self):
        if not (0 <= self.x_bits <= 3 and 0 <= self.z_bits <= 3):
            raise InputError(f"symplectic bits out of range: x={self.x_bits} z={self.z_bits}")

    @property
    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def label(self) -> str:
        letters = []
        for qubit in range(2):
            x = (self.x_bits >> qubit) & 1
            z = (self.z_bits >> qubit) & 1
            letters.append(_BITS_LETTER[(x, z)])
        return "".join(letters)

    def __repr__(self):
        return f"PauliOp({self.label})"


IDENTITY = PauliOp(0, 0)


@dataclass(frozen=True)
class SignedPauli:
    """A PauliOp together with a phase i**phase_exp relative to its canonical matrix."""

    op: PauliOp
    phase_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @property
    def sign(self) -> int:
        """+1 or -1 when the phase is real; raises otherwise."""
        if self.phase_exp == 0:
            return 1
        if self.phase_exp == 2:
            return -1
        raise ConsistencyError(f"phase i^{self.phase_exp} is not a real sign")


def op_from_label(label: str) -> PauliOp:
    """Parse a 2-character label over {I,X,Y,Z} into a PauliOp."""
    if not isinstance(label, str) or len(label) != 2:
        raise InputError(f"operator label must be 2 characters over I/X/Y/Z, got {label!r}")
    x_bits = 0
    z_bits = 0
    for qubit, ch in enumerate(label):
        if ch not in _LETTER_BITS:
            raise InputError(f"bad character {ch!r} in operator label {label!r}")
        x, z = _LETTER_BITS[ch]
        x_bits |= x << qubit
        z_bits |= z << qubit
    return PauliOp(x_bits, z_bits)


def op_to_label(op: PauliOp) -> str:
    return op.label


def all_ops() -> list[PauliOp]:
    """All 16 elements in canonical (x_bits, z_bits) order."""
    return sorted(PauliOp(x, z) for x in range(4) for z in range(4))


def nonidentity_ops() -> list[PauliOp]:
    return [p for p in all_ops() if not p.is_identity]


def commutes(a: PauliOp, b: PauliOp) -> bool:
    """True iff the symplectic form sum_qubit (a.x b.z + a.z b.x) vanishes mod 2."""
    form = 0
    for qubit in range(2):
        ax = (a.x_bits >> qubit) & 1
        az = (a.z_bits >> qubit) & 1
        bx = (b.x_bits >> qubit) & 1
        bz = (b.z_bits >> qubit) & 1
        form ^= (ax & bz) ^ (az & bx)
    return form == 0


def _single_phase(xa: int, za: int, xb: int, zb: int) -> int:
    # Canonical single-qubit rep is C(x,z) = i^(x z) X^x Z^z, so
    # C(a) C(b) = i^(xa za + xb zb + 2 za xb - (xa^xb)(za^zb)) C(a^b).
    return (xa * za + xb * zb + 2 * za * xb - (xa ^ xb) * (za ^ zb)) % 4


def multiply(a: SignedPauli, b: SignedPauli) -> SignedPauli:
    """Product of two signed Paulis, phase-exact against matrix multiplication."""
    phase = a.phase_exp + b.phase_exp
    for qubit in range(2):
        phase += _single_phase(
            (a.op.x_bits >> qubit) & 1,
            (a.op.z_bits >> qubit) & 1,
            (b.op.x_bits >> qubit) & 1,
            (b.op.z_bits >> qubit) & 1,
        )
    return SignedPauli(PauliOp(a.op.x_bits ^ b.op.x_bits, a.op.z_bits ^ b.op.z_bits), phase % 4)


def op_matrix(op: PauliOp) -> np.ndarray:
    """Canonical 4x4 representative: plain tensor product with +1 prefactor."""
    l1, l2 = op.label
    return np.kron(_SINGLE_MATS[l1], _SINGLE_MATS[l2])


def matrix_rep(s: SignedPauli) -> np.ndarray:
    return (1j ** s.phase_exp) * op_matrix(s.op)


@dataclass(frozen=True)
class CommutingTriple:
    """Three distinct commuting non-identity ops whose product is +-identity.

    ops are stored in canonical sorted order; product_sign is the sign of the
    ordered product of canonical representatives (order-independent because
    the factors commute).
    """

    ops: tuple[PauliOp, PauliOp, PauliOp]
    product_sign: int

    @classmethod
    def from_ops(cls, ops) -> "CommutingTriple":
        ops = tuple(sorted(ops))
        if len(set(ops)) != 3 or any(p.is_identity for p in ops):
            raise InputError(f"need 3 distinct non-identity ops, got {ops}")
        for p, q in itertools.combinations(ops, 2):
            if not commutes(p, q):
                raise InputError(f"{p.label} and {q.label} do not commute")
        prod = multiply(multiply(SignedPauli(ops[0]), SignedPauli(ops[1])), SignedPauli(ops[2]))
        if not prod.op.is_identity:
            raise InputError(f"product of {[p.label for p in ops]} is not proportional to identity")
        return cls(ops, prod.sign)

    @property
    def op_set(self) -> frozenset[PauliOp]:
        return frozenset(self.ops)

    @property
    def labels(self) -> tuple[str, str, str]:
        return tuple(p.label for p in self.ops)


def enumerate_commuting_triples() -> list[CommutingTriple]:
    """All commuting triples of non-identity elements, canonically sorted."""
    found = []
    for a, b, c in itertools.combinations(nonidentity_ops(), 3):
        if not (commutes(a, b) and commutes(a, c) and commutes(b, c)):
            continue
        ab = multiply(SignedPauli(a), SignedPauli(b))
        if ab.op != c:
            continue
        found.append(CommutingTriple.from_ops((a, b, c)))
    return sorted(found, key=lambda t: t.ops)


@dataclass(frozen=True)
class IncidenceReport:
    """Counts describing how the commuting triples overlap."""

    per_element: dict[str, int]
    per_triple_intersections: list[int]
    ordered_intersecting_pairs: int


def incidence_stats(triples: list[CommutingTriple]) -> IncidenceReport:
    """Membership and intersection statistics for a triple family."""
    membership = Counter()
    for t in triples:
        for p in t.ops:
            membership[p.label] += 1
    per_triple = []
    ordered = 0
    for t in triples:
        n = sum(1 for u in triples if u is not t and len(t.op_set & u.op_set) == 1)
        per_triple.append(n)
        ordered += n
    return IncidenceReport(dict(sorted(membership.items())), per_triple, ordered)


@dataclass(frozen=True)
class OperatorMagicSquare:
    """3 disjoint row triples and 3 disjoint column triples over the same 9 ops.

    grid[i][j] is the unique op in rows[i] intersect cols[j].  A square is
    identified up to row/column permutation and transpose; the family with
    the lexicographically smaller sorted serialization is stored as rows.
    """

    rows: tuple[CommutingTriple, CommutingTriple, CommutingTriple]
    cols: tuple[CommutingTriple, CommutingTriple, CommutingTriple]
    grid: tuple[tuple[PauliOp, ...], ...]

    @classmethod
    def from_lines(cls, rows, cols) -> "OperatorMagicSquare":
        rows = tuple(sorted(rows, key=lambda t: t.ops))
        cols = tuple(sorted(cols, key=lambda t: t.ops))
        cells = set().union(*(t.op_set for t in rows))
        if len(cells) != 9 or set().union(*(t.op_set for t in cols)) != cells:
            raise ConsistencyError("rows and cols do not cover the same 9 operators")
        grid = []
        for r in rows:
            row_cells = []
            for c in cols:
                meet = r.op_set & c.op_set
                if len(meet) != 1:
                    raise ConsistencyError("a row and a column do not meet in exactly one operator")
                row_cells.append(next(iter(meet)))
            grid.append(tuple(row_cells))
        negatives = sum(1 for t in rows + cols if t.product_sign == -1)
        if negatives % 2 != 1:
            raise ConsistencyError(f"square has an even count ({negatives}) of sign -1 lines")
        return cls(rows, cols, tuple(grid))

    @property
    def lines(self) -> tuple[CommutingTriple, ...]:
        return self.rows + self.cols


def enumerate_magic_squares(triples: list[CommutingTriple]) -> list[OperatorMagicSquare]:
    """All operator magic squares, deduplicated up to line permutations and transpose."""
    by_set = {t.op_set: t for t in triples}
    seen = {}
    for rows in itertools.combinations(triples, 3):
        cells = rows[0].op_set | rows[1].op_set | rows[2].op_set
        if len(cells) != 9:
            continue
        row_sets = {t.op_set for t in rows}
        candidates = [
            t for t in triples
            if t.op_set <= cells and t.op_set not in row_sets
        ]
        for cols in itertools.combinations(candidates, 3):
            if len(cols[0].op_set | cols[1].op_set | cols[2].op_set) != 9:
                continue
            if not all(len(r.op_set & c.op_set) == 1 for r in rows for c in cols):
                continue
            fam_a = frozenset(t.op_set for t in rows)
            fam_b = frozenset(t.op_set for t in cols)
            key = frozenset((fam_a, fam_b))
            if key in seen:
                continue
            # Canonical orientation: the smaller serialized family becomes rows.
            ser_a = sorted(sorted(p for p in s) for s in fam_a)
            ser_b = sorted(sorted(p for p in s) for s in fam_b)
            if ser_b < ser_a:
                rows_c, cols_c = cols, rows
            else:
                rows_c, cols_c = rows, cols
            seen[key] = OperatorMagicSquare.from_lines(
                [by_set[t.op_set] for t in rows_c],
                [by_set[t.op_set] for t in cols_c],
            )
    return sorted(seen.values(), key=lambda s: tuple(t.ops for t in s.rows))


def triples_to_json(triples: list[CommutingTriple]) -> list[dict]:
    """JSON-friendly dump: [{ops: [labels], sign: +-1}]."""
    return [{"ops": list(t.labels), "sign": t.product_sign} for t in triples]


def squares_to_json(squares: list[OperatorMagicSquare]) -> list[dict]:
    return [
        {
            "rows": [list(t.labels) for t in s.rows],
            "cols": [list(t.labels) for t in s.cols],
            "grid": [[p.label for p in row] for row in s.grid],
        }
        for s in squares
    ]

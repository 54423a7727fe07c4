"""Exact linear algebra over GF(2) with row provenance.

Rows are stored as Python integers used as bitsets: bit ``j`` of a row is the
coefficient of column ``j``.  Every reduced row carries a provenance bitset
naming the original rows whose XOR produced it, so an inconsistent system
yields a checkable certificate: the cited original rows XOR to the zero
vector on the left and to 1 on the right.

Conventions fixed here and relied on elsewhere:

* pivot selection is lowest-index nonzero column, lowest row, which makes
  elimination traces reproducible;
* free columns are assigned 0 when solving.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Gf2Matrix:
    rows: int
    cols: int
    bits: list[int]

    def __post_init__(self) -> None:
        if len(self.bits) != self.rows:
            raise ValueError("row count does not match bit rows")
        mask = (1 << self.cols) - 1
        for r in self.bits:
            if r & ~mask:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows: list[list[int]], cols: int | None = None) -> "Gf2Matrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        bits = [sum((v & 1) << j for j, v in enumerate(row)) for row in rows]
        return cls(len(rows), cols, bits)

    def row(self, i: int) -> list[int]:
        return [(self.bits[i] >> j) & 1 for j in range(self.cols)]


@dataclass
class Gf2System:
    matrix: Gf2Matrix
    rhs: list[int]
    provenance: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.rhs) != self.matrix.rows:
            raise ValueError("rhs length does not match row count")
        if not self.provenance:
            # Untouched rows carry their own index as provenance.
            self.provenance = [1 << i for i in range(self.matrix.rows)]
        elif len(self.provenance) != self.matrix.rows:
            raise ValueError("provenance length does not match row count")

    @classmethod
    def from_rows(cls, rows: list[list[int]], rhs: list[int], cols: int | None = None) -> "Gf2System":
        return cls(Gf2Matrix.from_rows(rows, cols), [b & 1 for b in rhs])


@dataclass
class ReducedSystem:
    system: Gf2System
    pivot_cols: list[int]


@dataclass
class Solution:
    assignment: list[int]
    free_cols: list[int]


@dataclass
class Inconsistency:
    rows: frozenset[int]


def row_reduce(system: Gf2System) -> ReducedSystem:
    """Reduce to row-reduced echelon form, tracking provenance.

    Pivot rows come first with strictly increasing pivot columns; rows that
    reduced to zero (possibly with rhs 1, i.e. contradictions) follow.
    """
    bits = list(system.matrix.bits)
    rhs = list(system.rhs)
    prov = list(system.provenance)
    n_rows, n_cols = system.matrix.rows, system.matrix.cols

    pivot_cols: list[int] = []
    r = 0
    for col in range(n_cols):
        mask = 1 << col
        pivot = next((i for i in range(r, n_rows) if bits[i] & mask), None)
        if pivot is None:
            continue
        bits[r], bits[pivot] = bits[pivot], bits[r]
        rhs[r], rhs[pivot] = rhs[pivot], rhs[r]
        prov[r], prov[pivot] = prov[pivot], prov[r]
        for i in range(n_rows):
            if i != r and bits[i] & mask:
                bits[i] ^= bits[r]
                rhs[i] ^= rhs[r]
                prov[i] ^= prov[r]
        pivot_cols.append(col)
        r += 1

    reduced = Gf2System(Gf2Matrix(n_rows, n_cols, bits), rhs, prov)
    return ReducedSystem(reduced, pivot_cols)


def solve(system: Gf2System) -> Solution | Inconsistency:
    """Solve the system, or certify that no solution exists.

    On success the assignment sets every free column to 0.  On failure the
    returned row set names original rows whose XOR is the all-zero vector
    with rhs bit 1.
    """
    reduced = row_reduce(system)
    sys_r = reduced.system
    rank = len(reduced.pivot_cols)
    for i in range(rank, sys_r.matrix.rows):
        if sys_r.rhs[i]:
            cited = frozenset(j for j in range(system.matrix.rows) if (sys_r.provenance[i] >> j) & 1)
            return Inconsistency(cited)

    assignment = [0] * sys_r.matrix.cols
    for i, col in enumerate(reduced.pivot_cols):
        assignment[col] = sys_r.rhs[i]
    pivot_set = set(reduced.pivot_cols)
    free_cols = [c for c in range(sys_r.matrix.cols) if c not in pivot_set]
    return Solution(assignment, free_cols)


def evaluate(system: Gf2System, assignment: list[int]) -> list[int]:
    """Return matrix @ assignment over GF(2), one bit per row."""
    vec = sum((b & 1) << j for j, b in enumerate(assignment))
    return [(row & vec).bit_count() & 1 for row in system.matrix.bits]

"""Exact rank of sparse rational matrices.

Matrices are stored column-wise as ``{row: Fraction}`` dictionaries.  The
exact path clears denominators column by column and runs fraction-free
elimination on Python integers; a rank modulo a large prime is available
as a fast path and is checked against the exact one in the test suite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence

Column = Dict[int, Fraction]

MERSENNE_61 = (1 << 61) - 1


@dataclass
class MatrixQ:
    """Sparse rows x cols matrix over Q, held as a list of columns."""

    rows: int
    cols: int
    columns: List[Column] = field(default_factory=list)

    def __post_init__(self):
        if not self.columns:
            self.columns = [{} for _ in range(self.cols)]
        if len(self.columns) != self.cols:
            raise ValueError("column count mismatch")

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "MatrixQ":
        nr = len(data)
        nc = len(data[0]) if nr else 0
        cols = [{i: Fraction(data[i][j]) for i in range(nr) if data[i][j]} for j in range(nc)]
        return cls(nr, nc, cols)

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[Column]) -> "MatrixQ":
        cols = [{r: Fraction(v) for r, v in c.items() if v} for c in columns]
        return cls(rows, len(cols), cols)

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for i, v in c.items():
                out[i][j] = v
        return out

    def hstack(self, other: "MatrixQ") -> "MatrixQ":
        if other.rows != self.rows:
            raise ValueError("row count mismatch")
        return MatrixQ(self.rows, self.cols + other.cols, self.columns + other.columns)

    def is_zero(self) -> bool:
        return not any(self.columns)

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def rank(self) -> int:
        return rank_exact(self)


def _integer_column(col: Column) -> Dict[int, int]:
    den = 1
    for v in col.values():
        den = den * v.denominator // math.gcd(den, v.denominator)
    out = {r: int(v * den) for r, v in col.items()}
    g = 0
    for v in out.values():
        g = math.gcd(g, v)
    if g > 1:
        out = {r: v // g for r, v in out.items()}
    return out


def components(M: MatrixQ) -> List[List[int]]:
    """Column index sets of the connected blocks of the row/column incidence graph.

    The rank of M is the sum of the ranks of these blocks.
    """
    parent = list(range(M.cols))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner: Dict[int, int] = {}
    for j, col in enumerate(M.columns):
        for r in col:
            o = owner.get(r)
            if o is None:
                owner[r] = j
            else:
                ra, rb = find(o), find(j)
                if ra != rb:
                    parent[ra] = rb
    groups: Dict[int, List[int]] = {}
    for j, col in enumerate(M.columns):
        if col:
            groups.setdefault(find(j), []).append(j)
    return list(groups.values())


def _eliminate_integer(vectors: List[Dict[int, int]]) -> int:
    """Fraction-free incremental echelon reduction; returns the rank."""
    pivots: Dict[int, Dict[int, int]] = {}
    # short vectors first keeps fill-in down
    for v in sorted(vectors, key=len):
        v = dict(v)
        while v:
            lead = min(v)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = v
                break
            a, b = p[lead], v[lead]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            new = {r: a * x for r, x in v.items()}
            for r, x in p.items():
                y = new.get(r, 0) - b * x
                if y:
                    new[r] = y
                else:
                    new.pop(r, None)
            g = 0
            for x in new.values():
                g = math.gcd(g, x)
                if g == 1:
                    break
            if g > 1:
                new = {r: x // g for r, x in new.items()}
            v = new
    return len(pivots)


def _eliminate_mod(vectors: List[Dict[int, int]], p: int) -> int:
    pivots: Dict[int, Dict[int, int]] = {}
    for v in sorted(vectors, key=len):
        v = {r: x % p for r, x in v.items() if x % p}
        while v:
            lead = min(v)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(v[lead], -1, p)
                pivots[lead] = {r: x * inv % p for r, x in v.items()}
                break
            c = v[lead]
            for r, x in piv.items():
                y = (v.get(r, 0) - c * x) % p
                if y:
                    v[r] = y
                else:
                    v.pop(r, None)
    return len(pivots)


def rank_exact(M: MatrixQ) -> int:
    """Exact rank over Q."""
    total = 0
    for block in components(M):
        total += _eliminate_integer([_integer_column(M.columns[j]) for j in block])
    return total


def rank_modular(M: MatrixQ, p: int = MERSENNE_61) -> int:
    """Rank modulo p (a lower bound for the rational rank, equal for almost every p)."""
    total = 0
    for block in components(M):
        vecs = []
        for j in block:
            col = M.columns[j]
            vecs.append({r: v.numerator * pow(v.denominator, -1, p) % p for r, v in col.items()})
        total += _eliminate_mod(vecs, p)
    return total


def rank_bareiss(M: MatrixQ) -> int:
    """Dense Bareiss elimination with pivot search; reference for small matrices."""
    rows = [[0] * M.cols for _ in range(M.rows)]
    for j, col in enumerate(M.columns):
        ic = _integer_column(col)
        for i, v in ic.items():
            rows[i][j] = v
    A = rows
    m, n = M.rows, M.cols
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == m:
            break
    return r


def rank(M: MatrixQ, method: str = "exact") -> int:
    if method == "exact":
        return rank_exact(M)
    if method == "modular":
        return rank_modular(M)
    if method == "bareiss":
        return rank_bareiss(M)
    raise ValueError(f"unknown rank method {method!r}")

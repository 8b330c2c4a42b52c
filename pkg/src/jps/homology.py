"""Graded slices of the complexes, homology dimensions and Poincare series.

All degrees of forms are canonical: F dx_I sits in degree w(F) + sum_{i in I} w_i.
A multiderivation with components Q^I sits in degree w(Q^I) - sum_{i in I} w_i,
so that the star map raises degree by |w|.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .complexes import (PAYLOAD_SIZE, ChainElement, DegreeError, MultiDerivation, coboundary,
                        derham_d, koszul_wedge, poisson_boundary, slot_weight, star, star_inv)
from .linalg import MatrixQ, rank
from .poisson import PoissonStructure
from .polyring import Poly, WeightVector, grading, homogeneous_dim, mono_index, monomial_basis


class UnsupportedStructureError(ValueError):
    """The requested computation does not apply to this structure."""


# --------------------------------------------------------------------------
# graded bases

Basis = List[Tuple[int, Tuple[int, int, int, int]]]  # (slot, monomial)


def form_basis(k: int, d: int, w: WeightVector) -> Basis:
    """Basis of Omega^k in canonical degree d: (payload slot, monomial) pairs."""
    out = []
    for j in range(PAYLOAD_SIZE[k]):
        for m in monomial_basis(d - slot_weight(k, j, w), w):
            out.append((j, m))
    return out


def form_dim(k: int, d: int, w: WeightVector) -> int:
    return sum(homogeneous_dim(d - slot_weight(k, j, w), w) for j in range(PAYLOAD_SIZE[k]))


def _form_rows(k: int, d: int, w: WeightVector) -> Dict[Tuple[int, tuple], int]:
    return {key: i for i, key in enumerate(form_basis(k, d, w))}


def basis_chain(k: int, slot: int, m) -> ChainElement:
    slots = [Poly()] * PAYLOAD_SIZE[k]
    slots[slot] = Poly.monomial(m)
    return ChainElement.from_slots(k, slots)


def chain_to_vector(c: ChainElement, d: int, w: WeightVector) -> Dict[int, Fraction]:
    """Coordinates of a homogeneous form of canonical degree d."""
    rows = _form_rows(c.k, d, w)
    out = {}
    for j, coef in enumerate(c.slots()):
        for m, v in coef.items():
            key = (j, m)
            if key not in rows:
                raise ValueError(f"form has a term outside canonical degree {d}")
            out[rows[key]] = v
    return out


def vector_to_chain(k: int, d: int, w: WeightVector, vec: Dict[int, Fraction]) -> ChainElement:
    basis = form_basis(k, d, w)
    slots: List[Dict] = [dict() for _ in range(PAYLOAD_SIZE[k])]
    for i, v in vec.items():
        j, m = basis[i]
        slots[j][m] = v
    return ChainElement.from_slots(k, [Poly(s) for s in slots])


def multideriv_basis(k: int, d: int, w: WeightVector):
    out = []
    for I in combinations(range(1, 5), k):
        for m in monomial_basis(d + sum(w[i - 1] for i in I), w):
            out.append((I, m))
    return out


def multideriv_dim(k: int, d: int, w: WeightVector) -> int:
    return len(multideriv_basis(k, d, w))


def casimir_count(d: int, p1: int, p2: int) -> int:
    """Number of monomials P1^a P2^b of weight degree d."""
    if d < 0:
        return 0
    return sum(1 for a in range(d // p1 + 1) if (d - a * p1) % p2 == 0)


# --------------------------------------------------------------------------
# maps between slices


@dataclass(frozen=True)
class GradedMap:
    """A graded linear map: kind in {boundary, coboundary, derham, koszul}.

    ``k`` is the source degree (form degree, or multiderivation degree for
    coboundary); ``P`` is the polynomial for Koszul maps.
    """

    kind: str
    k: int
    P: Optional[Poly] = None

    def __post_init__(self):
        ok = {"boundary": range(1, 5), "coboundary": range(0, 4),
              "derham": range(0, 4), "koszul": range(0, 4)}
        if self.kind not in ok:
            raise ValueError(f"unknown map kind {self.kind!r}")
        if self.k not in ok[self.kind]:
            raise DegreeError(f"{self.kind} map not defined on degree {self.k}")
        if (self.kind == "koszul") != (self.P is not None):
            raise ValueError("Koszul maps (and only they) need P")

    @property
    def target_k(self) -> int:
        return self.k - 1 if self.kind == "boundary" else self.k + 1

    def shift(self, S: PoissonStructure) -> int:
        if self.kind in ("boundary", "coboundary"):
            return S.pi_degree
        if self.kind == "derham":
            return 0
        return grading(self.P, S.weights).degree

    def apply(self, S: PoissonStructure, c):
        if self.kind == "boundary":
            return poisson_boundary(S, c)
        if self.kind == "derham":
            return derham_d(c)
        if self.kind == "koszul":
            return koszul_wedge(self.P, c)
        return coboundary(S, c)


def boundary_map(k: int) -> GradedMap:
    return GradedMap("boundary", k)


def form_map_matrix(fn: Callable[[ChainElement], ChainElement], k: int, d: int, tk: int, d2: int,
                    w: WeightVector) -> MatrixQ:
    """Matrix of a K-linear map from the degree-d slice of Omega^k to degree d2 of Omega^tk."""
    rows = _form_rows(tk, d2, w)
    cols = []
    for j, m in form_basis(k, d, w):
        img = fn(basis_chain(k, j, m))
        if img.k != tk:
            raise DegreeError(f"map produced a {img.k}-form, expected {tk}")
        col = {}
        for jj, coef in enumerate(img.slots()):
            for mm, v in coef.items():
                try:
                    col[rows[jj, mm]] = v
                except KeyError:
                    raise ValueError(f"image leaves canonical degree {d2}") from None
        cols.append(col)
    return MatrixQ(len(rows), len(cols), cols)


def span_matrix(chains: Sequence[ChainElement], k: int, d: int, w: WeightVector) -> MatrixQ:
    """Columns are the coordinates of the given degree-d k-forms."""
    return MatrixQ(form_dim(k, d, w), len(chains), [chain_to_vector(c, d, w) for c in chains])


def assemble_matrix(S: PoissonStructure, gmap: GradedMap, d: int) -> MatrixQ:
    """Matrix of gmap on the degree-d slice of its domain.

    Columns follow the domain basis, rows the codomain basis (both in
    monomial_basis order within each slot).
    """
    w = S.weights
    d2 = d + gmap.shift(S)
    if gmap.kind == "coboundary":
        src = multideriv_basis(gmap.k, d, w)
        tgt = {key: i for i, key in enumerate(multideriv_basis(gmap.k + 1, d2, w))}
        cols = []
        for I, m in src:
            Q = MultiDerivation(gmap.k, {I: Poly.monomial(m)})
            img = coboundary(S, Q)
            col = {}
            for J, coef in img.comps.items():
                for mm, v in coef.items():
                    col[tgt[J, mm]] = v
            cols.append(col)
        return MatrixQ(len(tgt), len(cols), cols)
    return form_map_matrix(lambda c: gmap.apply(S, c), gmap.k, d, gmap.target_k, d2, w)


def domain_dim(S: PoissonStructure, gmap: GradedMap, d: int) -> int:
    if gmap.kind == "coboundary":
        return multideriv_dim(gmap.k, d, S.weights)
    return form_dim(gmap.k, d, S.weights)


@lru_cache(maxsize=4096)
def map_rank(S: PoissonStructure, gmap: GradedMap, d: int, method: str = "exact") -> int:
    if domain_dim(S, gmap, d) == 0:
        return 0
    return rank(assemble_matrix(S, gmap, d), method)


def rank_exact(M: MatrixQ) -> int:
    return rank(M, "exact")


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("JPS_JOBS", "1")))
    except ValueError:
        return 1


def _rank_task(args):
    S, gmap, d, method = args
    return map_rank(S, gmap, d, method)


def rank_table(S: PoissonStructure, tasks: Sequence[Tuple[GradedMap, int]], method: str = "exact",
               jobs: Optional[int] = None) -> Dict[Tuple[GradedMap, int], int]:
    """Ranks for many (map, degree) pairs, optionally in worker processes."""
    jobs = default_jobs() if jobs is None else jobs
    todo = list(dict.fromkeys(tasks))
    if jobs > 1 and len(todo) > 1:
        # biggest slices first so the pool drains evenly
        todo.sort(key=lambda t: -domain_dim(S, t[0], t[1]))
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            vals = list(ex.map(_rank_task, [(S, g, d, method) for g, d in todo]))
        return dict(zip(todo, vals))
    return {t: map_rank(S, t[0], t[1], method) for t in todo}


# --------------------------------------------------------------------------
# star duality

# star o delta^k o star^-1 = STAR_SIGNS[k] * boundary on Omega^(4-k)
STAR_SIGNS = {0: -1, 1: 1, 2: -1, 3: 1}


def star_intertwining_sign(S: PoissonStructure, k: int, d: int) -> Optional[int]:
    """The sign e with star delta^k star^-1 = e * boundary on degree-d (4-k)-forms.

    Returns 0 when both maps vanish on the slice and None when no sign works.
    """
    sign = 0
    for j, m in form_basis(4 - k, d, S.weights):
        c = basis_chain(4 - k, j, m)
        a = star(coboundary(S, star_inv(c)))
        b = poisson_boundary(S, c)
        if b.is_zero():
            if not a.is_zero():
                return None
            continue
        e = 1 if a == b else (-1 if a == -b else None)
        if e is None or (sign and e != sign):
            return None
        sign = e
    return sign


# --------------------------------------------------------------------------
# homology / cohomology


def homology_dims(S: PoissonStructure, N: int, method: str = "exact",
                  jobs: Optional[int] = None) -> List[List[int]]:
    """dims[i][d] = dim H_i in canonical degree d, for i = 0..4 and d = 0..N."""
    if N < 0:
        raise ValueError("N must be >= 0")
    w, s = S.weights, S.pi_degree
    tasks = [(boundary_map(k), d) for k in range(1, 5) for d in range(N + 1)]
    tasks += [(boundary_map(k), d - s) for k in range(1, 5) for d in range(N + 1) if d - s >= 0]
    ranks = rank_table(S, tasks, method, jobs)

    def rk(k, d):
        if k < 1 or k > 4 or d < 0:
            return 0
        return ranks[boundary_map(k), d]

    dims = []
    for i in range(5):
        row = []
        for d in range(N + 1):
            ker = form_dim(i, d, w) - rk(i, d)
            row.append(ker - rk(i + 1, d - s))
        dims.append(row)
    return dims


def kernel_dims(S: PoissonStructure, i: int, N: int, method: str = "exact") -> List[int]:
    """dim ker of the boundary on Omega^i, canonical degrees 0..N."""
    w = S.weights
    if i == 0:
        return [form_dim(0, d, w) for d in range(N + 1)]
    return [form_dim(i, d, w) - map_rank(S, boundary_map(i), d, method) for d in range(N + 1)]


def cohomology_dims(S: PoissonStructure, N: int, method: str = "exact",
                    jobs: Optional[int] = None) -> Dict[int, Dict[int, int]]:
    """dims[i][d] = dim H^i in multiderivation degree d.

    Degrees run from -|w| to N - |w|, the range that the star map sends onto
    canonical form degrees 0..N.
    """
    from .complexes import modular_check

    if not modular_check(S)[1]:
        raise UnsupportedStructureError("cohomology via duality needs a unimodular structure")
    w, s = S.weights, S.pi_degree
    lo, hi = -w.total, N - w.total
    degs = range(lo, hi + 1)
    tasks = [(GradedMap("coboundary", k), d) for k in range(4) for d in degs]
    tasks += [(GradedMap("coboundary", k), d - s) for k in range(4) for d in degs]
    ranks = rank_table(S, tasks, method, jobs)

    def rk(k, d):
        if k < 0 or k > 3:
            return 0
        return ranks[GradedMap("coboundary", k), d]

    out: Dict[int, Dict[int, int]] = {}
    for i in range(5):
        out[i] = {}
        for d in degs:
            ker = multideriv_dim(i, d, w) - rk(i, d)
            out[i][d] = ker - rk(i - 1, d - s)
    return out


# --------------------------------------------------------------------------
# series


def _poly_str(c: Sequence[int]) -> str:
    out = ""
    for e, v in enumerate(c):
        if not v:
            continue
        mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
        mag = abs(v)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not out:
            out = body if v > 0 else f"-{body}"
        else:
            out += f" + {body}" if v > 0 else f" - {body}"
    return out or "0"


@dataclass(frozen=True)
class RationalSeries:
    """numerator(t) / denominator(t), integer coefficient lists in ascending powers."""

    numerator: Tuple[int, ...]
    denominator: Tuple[int, ...]

    def __post_init__(self):
        if not self.denominator or self.denominator[0] == 0:
            raise ValueError("denominator must not vanish at t = 0")

    def __str__(self):
        return f"({_poly_str(self.numerator)}) / ({_poly_str(self.denominator)})"


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


ONE_MINUS_T2_SQ = tuple(_polymul((1, 0, -1), (1, 0, -1)))  # (1 - t^2)^2

CLOSED_FORMS = {
    0: RationalSeries((1, 4, 2), ONE_MINUS_T2_SQ),
    1: RationalSeries((0, 4, 4, 4, 1), ONE_MINUS_T2_SQ),
    2: RationalSeries((0, 0, 0, 4, 2), ONE_MINUS_T2_SQ),
    3: RationalSeries((0, 0, 0, 0, 1), ONE_MINUS_T2_SQ),
    4: RationalSeries((0, 0, 0, 0, 1), ONE_MINUS_T2_SQ),
}


def closed_form_series(i: int) -> RationalSeries:
    """Poincare series of H_i for quadratic Casimirs and unit weights."""
    if i not in CLOSED_FORMS:
        raise ValueError("homology index must be in 0..4")
    return CLOSED_FORMS[i]


def taylor_coeffs(s: RationalSeries, N: int, integral: bool = True) -> List:
    """First N+1 Taylor coefficients by exact long division."""
    den = [Fraction(v) for v in s.denominator]
    num = [Fraction(v) for v in s.numerator]
    out = []
    for n in range(N + 1):
        acc = num[n] if n < len(num) else Fraction(0)
        for j in range(1, min(n, len(den) - 1) + 1):
            acc -= den[j] * out[n - j]
        out.append(acc / den[0])
    if integral:
        if any(c.denominator != 1 for c in out):
            raise ValueError("series has non-integral coefficients")
        return [int(c) for c in out]
    return out


def euler_check(S: PoissonStructure, d: int, dims: Optional[List[List[int]]] = None,
                method: str = "exact") -> Tuple[int, int]:
    """Alternating sums of chain and homology dimensions in degree d."""
    if S.pi_degree != 0:
        raise UnsupportedStructureError("boundary maps do not preserve degree for these weights")
    w = S.weights
    chain = sum((-1) ** k * form_dim(k, d, w) for k in range(5))
    if dims is None or len(dims[0]) <= d:
        dims = homology_dims(S, d, method, jobs=1)
    hom = sum((-1) ** k * dims[k][d] for k in range(5))
    return chain, hom


# --------------------------------------------------------------------------
# kernel sizes predicted by the short exact sequences


def _A(d: int, w: WeightVector) -> int:
    return homogeneous_dim(d, w) if d >= 0 else 0


def predicted_kernel_series(S: PoissonStructure, i: int, N: int) -> List[int]:
    """dim ker of the boundary on Omega^i in degrees 0..N from the exact sequences."""
    w = S.weights
    p1, p2, tot = S.degree_P1, S.degree_P2, w.total
    C = lambda d: casimir_count(d, p1, p2)
    A = lambda d: _A(d, w)
    out = []
    for d in range(N + 1):
        if i == 0:
            v = A(d)
        elif i == 1:
            v = A(d - p1) + A(d - p2) + A(d) - C(d)
        elif i == 2:
            v = A(d - p1 - p2) + A(d - p1) + A(d - p2) - C(d - p1) - C(d - p2)
        elif i == 3:
            if not tot == 2 * p1 == 2 * p2:
                raise UnsupportedStructureError("kernel of the third boundary needs |w| = 2 deg P1 = 2 deg P2")
            v = C(d - tot) + A(d - p1 - p2) - C(d - p1 - p2)
        elif i == 4:
            v = C(d - tot)
        else:
            raise ValueError("i must be in 0..4")
        out.append(v)
    return out


def predicted_homology_series(S: PoissonStructure, N: int) -> List[List[int]]:
    """Homology dimensions derived from predicted kernels and rank-nullity."""
    w, s = S.weights, S.pi_degree
    ker = [predicted_kernel_series(S, i, N) for i in range(5)]
    dims = []
    for i in range(5):
        row = []
        for d in range(N + 1):
            e = d - s
            img = 0
            if i < 4 and e >= 0:
                img = form_dim(i + 1, e, w) - ker[i + 1][e]
            row.append(ker[i][d] - img)
        dims.append(row)
    return dims

"""Differential forms, multiderivations and the maps between them.

A k-form is stored as a :class:`ChainElement` whose payload lives in
A, A^4, A^6, A^4, A for k = 0..4, against the fixed bases

    k=1  dx1, dx2, dx3, dx4
    k=2  dx1^dx4, dx1^dx2, dx3^dx2, dx3^dx4, dx3^dx1, dx2^dx4
    k=3  dx2^dx3^dx4, dx3^dx1^dx4, dx1^dx2^dx4, dx2^dx1^dx3
    k=4  dx1^dx2^dx3^dx4

Besides the compact vector formulas, this module carries a generic
representation ``{increasing index tuple: Poly}`` used for the shuffle
star operator and for the definition-level boundary, which serve as
independent cross-checks of the compact path.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .poisson import SLOT_PAIRS, PoissonStructure
from .polyring import COORDS, ONE, ZERO, Poly, WeightVector, _coerce, grading
from .veccalc import (Vec4, Vec6, barcross, barcurl, cross, curl, divergence, dot,
                      euler_field, f_map, grad)

Index = Tuple[int, ...]
FormDict = Dict[Index, Poly]

SLOT_TRIPLES = ((2, 3, 4), (3, 1, 4), (1, 2, 4), (2, 1, 3))

# ordered index tuple of each payload slot, per form degree
SLOT_BASIS: Dict[int, Tuple[Index, ...]] = {
    0: ((),),
    1: ((1,), (2,), (3,), (4,)),
    2: SLOT_PAIRS,
    3: SLOT_TRIPLES,
    4: ((1, 2, 3, 4),),
}

PAYLOAD_SIZE = {0: 1, 1: 4, 2: 6, 3: 4, 4: 1}

CANONICAL = "canonical"
STAR_SHIFTED = "star-shifted"


class DegreeError(ValueError):
    """A differential was applied outside its degree range."""


def sort_sign(idx: Sequence[int]) -> Tuple[int, Index]:
    """Sign and sorted tuple of a wedge of coordinate differentials; sign 0 on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


# --------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class ChainElement:
    """A k-form; payload is a Poly (k = 0, 4), Vec4 (k = 1, 3) or Vec6 (k = 2)."""

    k: int
    payload: Union[Poly, Vec4, Vec6]

    def __post_init__(self):
        if self.k not in PAYLOAD_SIZE:
            raise DegreeError(f"form degree must be in 0..4, got {self.k}")
        want = {0: Poly, 1: Vec4, 2: Vec6, 3: Vec4, 4: Poly}[self.k]
        p = self.payload
        if want is Poly:
            p = _coerce(p)
        if not isinstance(p, want):
            raise TypeError(f"{self.k}-form payload must be {want.__name__}, got {type(self.payload).__name__}")
        object.__setattr__(self, "payload", p)

    @classmethod
    def zero(cls, k: int) -> "ChainElement":
        return cls(k, ZERO if k in (0, 4) else (Vec6 if k == 2 else Vec4).zero())

    def slots(self) -> Tuple[Poly, ...]:
        return (self.payload,) if self.k in (0, 4) else tuple(self.payload)

    @classmethod
    def from_slots(cls, k: int, slots: Sequence[Poly]) -> "ChainElement":
        if k in (0, 4):
            (p,) = slots
            return cls(k, p)
        return cls(k, (Vec6 if k == 2 else Vec4)(slots))

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.slots())

    def __add__(self, other: "ChainElement") -> "ChainElement":
        if other.k != self.k:
            raise DegreeError("cannot add forms of different degree")
        return ChainElement(self.k, self.payload + other.payload)

    def __sub__(self, other: "ChainElement") -> "ChainElement":
        if other.k != self.k:
            raise DegreeError("cannot subtract forms of different degree")
        return ChainElement(self.k, self.payload - other.payload)

    def __neg__(self) -> "ChainElement":
        return ChainElement(self.k, -self.payload)

    def scale(self, F) -> "ChainElement":
        return ChainElement(self.k, self.payload * F)

    # generic representation ---------------------------------------------
    def to_forms(self) -> FormDict:
        out: FormDict = {}
        for idx, coef in zip(SLOT_BASIS[self.k], self.slots()):
            if coef:
                s, key = sort_sign(idx)
                out[key] = out.get(key, ZERO) + (coef if s > 0 else -coef)
        return out

    @classmethod
    def from_forms(cls, k: int, forms: FormDict) -> "ChainElement":
        slots = []
        for idx in SLOT_BASIS[k]:
            s, key = sort_sign(idx)
            c = forms.get(key, ZERO)
            slots.append(c if s > 0 else -c)
        extra = set(forms) - {sort_sign(i)[1] for i in SLOT_BASIS[k]}
        if any(forms[e] for e in extra):
            raise DegreeError(f"form components {sorted(extra)} do not belong to degree {k}")
        return cls.from_slots(k, slots)


def delta_form() -> ChainElement:
    """dx1^dx2^dx3^dx4."""
    return ChainElement(4, ONE)


def rho_form(w: WeightVector) -> ChainElement:
    """Contraction of the volume form with the Euler field; payload e_w."""
    return ChainElement(3, euler_field(w))


def slot_weight(k: int, slot: int, w: WeightVector) -> int:
    return sum(w[i - 1] for i in SLOT_BASIS[k][slot])


def chain_degree(c: ChainElement, w: WeightVector, convention: str = CANONICAL):
    """Weight degree of a homogeneous form; None for zero.

    ``canonical``: deg(F dx_I) = w(F) + sum of w_i over I.
    ``star-shifted``: canonical minus |w| (the degree of the multiderivation
    that the form corresponds to under the star map).
    """
    degs = set()
    for j, coef in enumerate(c.slots()):
        if coef:
            g = grading(coef, w)
            if not g.is_homogeneous:
                raise ValueError("form is not homogeneous")
            degs.add(g.degree + slot_weight(c.k, j, w))
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError("form is not homogeneous")
    (d,) = degs
    if convention == STAR_SHIFTED:
        return d - w.total
    if convention != CANONICAL:
        raise ValueError(f"unknown grading convention {convention!r}")
    return d


# --------------------------------------------------------------------------
# de Rham


def derham_d(c: ChainElement) -> ChainElement:
    k, p = c.k, c.payload
    if k == 0:
        return ChainElement(1, grad(p))
    if k == 1:
        return ChainElement(2, curl(p))
    if k == 2:
        return ChainElement(3, barcurl(p))
    if k == 3:
        return ChainElement(4, divergence(p))
    raise DegreeError("de Rham differential of a top form requested")


def derham_d_forms(forms: FormDict) -> FormDict:
    """d on the generic representation: d(F dx_I) = sum_j dF/dx_j dx_j ^ dx_I."""
    out: FormDict = {}
    for idx, F in forms.items():
        for j in range(1, 5):
            s, key = sort_sign((j,) + idx)
            if s:
                dF = F.diff(j)
                if dF:
                    out[key] = out.get(key, ZERO) + (dF if s > 0 else -dF)
    return {k: v for k, v in out.items() if v}


def wedge_forms(a: FormDict, b: FormDict) -> FormDict:
    out: FormDict = {}
    for i, F in a.items():
        for j, G in b.items():
            s, key = sort_sign(i + j)
            if s:
                t = F * G
                out[key] = out.get(key, ZERO) + (t if s > 0 else -t)
    return {k: v for k, v in out.items() if v}


def exact_one_form(F: Poly) -> FormDict:
    return {(j,): F.diff(j) for j in range(1, 5) if F.diff(j)}


# --------------------------------------------------------------------------
# Poisson boundary


def poisson_boundary(S: PoissonStructure, c: ChainElement) -> ChainElement:
    """The compact vector form of the Poisson boundary."""
    W, fW = S.casimir_wedge, S.f_casimir_wedge
    k, p = c.k, c.payload
    if k == 1:
        return ChainElement(0, dot(curl(p), fW))
    if k == 2:
        return ChainElement(1, -barcross(barcurl(p), fW) - grad(dot(p, fW)))
    if k == 3:
        return ChainElement(2, W * divergence(p) + curl(barcross(p, fW)))
    if k == 4:
        return ChainElement(3, -barcross(grad(p), W))
    raise DegreeError("Poisson boundary of a 0-form requested")


def boundary_from_definition(S: PoissonStructure, c: ChainElement) -> ChainElement:
    """Boundary evaluated term by term on F dx_i1^...^dx_ik.

    Uses the decomposable-form formula with F0 = F and F_j = x_ij, in the
    generic representation; shares nothing with the compact formulas except
    the bracket itself.
    """
    k = c.k
    if k == 0:
        raise DegreeError("Poisson boundary of a 0-form requested")
    out: FormDict = {}

    def add(forms: FormDict, sign: int):
        for key, v in forms.items():
            out[key] = out.get(key, ZERO) + (v if sign > 0 else -v)

    for idx, F in c.to_forms().items():
        for a in range(k):
            rest = idx[:a] + idx[a + 1:]
            br = S.bracket(F, COORDS[idx[a] - 1])
            if br:
                add({rest: br}, 1 if a % 2 == 0 else -1)
        for a in range(k):
            for b in range(a + 1, k):
                rest = tuple(i for n, i in enumerate(idx) if n not in (a, b))
                br = S.pi[idx[a], idx[b]]
                piece = wedge_forms({(): F}, wedge_forms(exact_one_form(br), {rest: ONE}))
                add(piece, 1 if (a + b) % 2 == 0 else -1)
    return ChainElement.from_forms(k - 1, {key: v for key, v in out.items() if v})


# --------------------------------------------------------------------------
# multiderivations


@dataclass(frozen=True)
class MultiDerivation:
    """Skew k-derivation stored by its values on increasing coordinate tuples."""

    k: int
    comps: Dict[Index, Poly]

    def __post_init__(self):
        if not 0 <= self.k <= 4:
            raise DegreeError(f"multiderivation degree must be in 0..4, got {self.k}")
        keys = list(combinations(range(1, 5), self.k))
        full = {}
        for key in keys:
            full[key] = _coerce(self.comps.get(key, ZERO))
        if set(self.comps) - set(keys):
            raise ValueError(f"components must be indexed by increasing {self.k}-tuples")
        object.__setattr__(self, "comps", full)

    @classmethod
    def zero(cls, k: int) -> "MultiDerivation":
        return cls(k, {})

    @classmethod
    def function(cls, F: Poly) -> "MultiDerivation":
        return cls(0, {(): F})

    @classmethod
    def vector_field(cls, comps: Sequence[Poly]) -> "MultiDerivation":
        return cls(1, {(i + 1,): c for i, c in enumerate(comps)})

    @classmethod
    def bivector(cls, S: PoissonStructure) -> "MultiDerivation":
        return cls(2, {key: S.pi[key] for key in combinations(range(1, 5), 2)})

    def value(self, idx: Sequence[int]) -> Poly:
        """Q(x_i1, ..., x_ik) for any index sequence."""
        s, key = sort_sign(idx)
        if not s:
            return ZERO
        v = self.comps[key]
        return v if s > 0 else -v

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.comps.values())

    def __eq__(self, other):
        if not isinstance(other, MultiDerivation):
            return NotImplemented
        return self.k == other.k and self.comps == other.comps

    def __hash__(self):
        return hash((self.k, tuple(sorted(self.comps.items()))))

    def __add__(self, other: "MultiDerivation") -> "MultiDerivation":
        if other.k != self.k:
            raise DegreeError("degree mismatch")
        return MultiDerivation(self.k, {i: self.comps[i] + other.comps[i] for i in self.comps})

    def __sub__(self, other: "MultiDerivation") -> "MultiDerivation":
        if other.k != self.k:
            raise DegreeError("degree mismatch")
        return MultiDerivation(self.k, {i: self.comps[i] - other.comps[i] for i in self.comps})

    def __neg__(self) -> "MultiDerivation":
        return MultiDerivation(self.k, {i: -v for i, v in self.comps.items()})

    def scale(self, F) -> "MultiDerivation":
        return MultiDerivation(self.k, {i: v * F for i, v in self.comps.items()})


def _det(rows: List[List[Poly]]) -> Poly:
    n = len(rows)
    if n == 0:
        return ONE
    if n == 1:
        return rows[0][0]
    out = ZERO
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        t = a * _det(minor)
        out = out + t if j % 2 == 0 else out - t
    return out


def eval_multideriv(Q: MultiDerivation, *args: Poly) -> Poly:
    """Q(F1, ..., Fk) = sum over I of Q^I * det(dF_a / dx_{I_b})."""
    if len(args) != Q.k:
        raise ValueError(f"{Q.k}-derivation takes {Q.k} arguments, got {len(args)}")
    if Q.k == 0:
        return Q.comps[()]
    grads = [[F.diff(j) for j in range(1, 5)] for F in args]
    out = ZERO
    for idx, q in Q.comps.items():
        if q.is_zero():
            continue
        m = [[g[i - 1] for i in idx] for g in grads]
        d = _det(m)
        if d:
            out = out + q * d
    return out


def _eval_poly_first(Q: MultiDerivation, G: Poly, rest: Index) -> Poly:
    """Q(G, x_rest...) using the derivation property in the first slot."""
    out = ZERO
    for m in range(1, 5):
        if m in rest:
            continue
        d = G.diff(m)
        if d:
            v = Q.value((m,) + rest)
            if v:
                out = out + d * v
    return out


def coboundary(S: PoissonStructure, Q: MultiDerivation) -> MultiDerivation:
    """Lichnerowicz coboundary, both sums running over 0 <= i (< j) <= k.

    On functions this gives delta(F)(G) = {G, F}.
    """
    k = Q.k
    if k >= 4:
        raise DegreeError("coboundary of a 4-derivation requested")
    comps = {}
    for J in combinations(range(1, 5), k + 1):
        acc = ZERO
        for i in range(k + 1):
            rest = J[:i] + J[i + 1:]
            v = Q.value(rest)
            if v:
                t = S.bracket_with_coord(J[i], v)
                acc = acc + t if i % 2 == 0 else acc - t
        for i in range(k + 1):
            for l in range(i + 1, k + 1):
                rest = tuple(J[n] for n in range(k + 1) if n not in (i, l))
                t = _eval_poly_first(Q, S.pi[J[i], J[l]], rest)
                if t:
                    acc = acc + t if (i + l) % 2 == 0 else acc - t
        comps[J] = acc
    return MultiDerivation(k + 1, comps)


def coboundary_from_definition(S: PoissonStructure, Q: MultiDerivation, args: Sequence[Poly]) -> Poly:
    """(delta Q)(F0..Fk) on arbitrary polynomial arguments, straight from the sum."""
    k = Q.k
    if len(args) != k + 1:
        raise ValueError("wrong number of arguments")
    acc = ZERO
    for i in range(k + 1):
        rest = list(args[:i]) + list(args[i + 1:])
        t = S.bracket(args[i], eval_multideriv(Q, *rest))
        acc = acc + t if i % 2 == 0 else acc - t
    for i in range(k + 1):
        for l in range(i + 1, k + 1):
            rest = [a for n, a in enumerate(args) if n not in (i, l)]
            t = eval_multideriv(Q, S.bracket(args[i], args[l]), *rest)
            acc = acc + t if (i + l) % 2 == 0 else acc - t
    return acc


# --------------------------------------------------------------------------
# star


def _complement(idx: Index) -> Index:
    return tuple(i for i in range(1, 5) if i not in idx)


def star(Q: MultiDerivation) -> ChainElement:
    """Shuffle-sum isomorphism X^k -> Omega^(4-k)."""
    forms: FormDict = {}
    for idx, q in Q.comps.items():
        if q:
            comp = _complement(idx)
            s, _ = sort_sign(idx + comp)
            forms[comp] = q if s > 0 else -q
    return ChainElement.from_forms(4 - Q.k, forms)


def star_inv(c: ChainElement) -> MultiDerivation:
    comps = {}
    for idx, v in c.to_forms().items():
        comp = _complement(idx)
        s, _ = sort_sign(comp + idx)
        comps[comp] = v if s > 0 else -v
    return MultiDerivation(4 - c.k, comps)


def modular_check(S: PoissonStructure) -> Tuple[MultiDerivation, bool]:
    """D2(pi) = star^-1 d star (pi); the structure is unimodular iff it vanishes."""
    D2 = star_inv(derham_d(star(MultiDerivation.bivector(S))))
    return D2, D2.is_zero()


# --------------------------------------------------------------------------
# Koszul maps and Lie derivative


def koszul_wedge(P: Poly, c: ChainElement) -> ChainElement:
    """Wedge with dP in vector form."""
    gP = grad(P)
    k, p = c.k, c.payload
    if k == 0:
        return ChainElement(1, gP * p)
    if k == 1:
        return ChainElement(2, cross(p, gP))
    if k == 2:
        return ChainElement(3, barcross(gP, p))
    if k == 3:
        return ChainElement(4, dot(p, gP))
    raise DegreeError("Koszul map out of a top form requested")


def lie_derivative(V: MultiDerivation, Q: MultiDerivation) -> MultiDerivation:
    """L_V Q on coordinate arguments: V(Q(x_I)) - sum_a Q(.., V(x_ia), ..)."""
    if V.k != 1:
        raise ValueError("Lie derivative needs a vector field (k = 1)")
    Vc = [V.comps[(m,)] for m in range(1, 5)]
    comps = {}
    for idx, q in Q.comps.items():
        acc = ZERO
        for m in range(1, 5):
            if Vc[m - 1]:
                d = q.diff(m)
                if d:
                    acc = acc + Vc[m - 1] * d
        for a in range(Q.k):
            args = [COORDS[i - 1] for i in idx]
            args[a] = Vc[idx[a] - 1]
            acc = acc - eval_multideriv(Q, *args)
        comps[idx] = acc
    return MultiDerivation(Q.k, comps)


def euler_derivation(w: WeightVector) -> MultiDerivation:
    return MultiDerivation.vector_field(w.euler_vector())

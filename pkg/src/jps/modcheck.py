"""Degree-by-degree checks of the module-structure statements.

Every statement of the form "this K[P1,P2]-module is spanned by / free on
these elements" is tested one weight degree at a time as exact linear
algebra over Q: a family spans a slice when its rank (together with the
relevant image) matches the slice dimension, and it is free there when no
rank is lost.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .complexes import (ChainElement, chain_degree, delta_form, derham_d, koszul_wedge,
                        poisson_boundary, rho_form)
from .homology import (UnsupportedStructureError, assemble_matrix, boundary_map,
                       form_dim, form_map_matrix, map_rank, span_matrix)
from .linalg import MatrixQ, rank
from .poisson import PoissonStructure
from .polyring import (STANDARD_WEIGHTS, Poly, WeightVector, grading, homogeneous_dim,
                       monomial_basis, parse_poly)
from .veccalc import Vec4, barcross, cross, dot, f_map, grad

# the final degrees inspected must all vanish before mu is reported as finite
ZERO_RUN = 3


@dataclass
class CheckResult:
    """Outcome of one check; truthy iff it passed."""

    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "details": self.details}


# --------------------------------------------------------------------------
# Milnor algebras


@dataclass(frozen=True)
class MilnorResult:
    graded_dims: Tuple[int, ...]
    mu: Optional[int]  # None: not finite up to the inspected degree

    @property
    def finite(self) -> bool:
        return self.mu is not None


def _poly_vector(P: Poly, d: int, w: WeightVector) -> Dict[int, Fraction]:
    index = {m: i for i, m in enumerate(monomial_basis(d, w))}
    return {index[m]: v for m, v in P.items()}


def ideal_slice_rank(gens: Sequence[Poly], d: int, w: WeightVector, method: str = "exact") -> int:
    """dim of the degree-d part of the ideal generated by homogeneous ``gens``."""
    cols = []
    for g in gens:
        if g.is_zero():
            continue
        e = d - grading(g, w).degree
        for m in monomial_basis(e, w):
            cols.append(_poly_vector(g.mul_mono(m), d, w))
    if not cols:
        return 0
    return rank(MatrixQ(homogeneous_dim(d, w), len(cols), cols), method)


def quotient_dims(gens: Sequence[Poly], N: int, w: WeightVector = STANDARD_WEIGHTS) -> MilnorResult:
    for g in gens:
        if not grading(g, w).is_homogeneous:
            raise ValueError(f"generator {g} is not weight homogeneous")
    dims = tuple(homogeneous_dim(d, w) - ideal_slice_rank(gens, d, w) for d in range(N + 1))
    tail = dims[-ZERO_RUN:]
    mu = sum(dims) if len(tail) == ZERO_RUN and not any(tail) else None
    return MilnorResult(dims, mu)


def jacobian_minors(P1: Poly, P2: Poly) -> List[Poly]:
    a, b = grad(P1), grad(P2)
    return [a[i] * b[j] - a[j] * b[i] for i, j in combinations(range(4), 2)]


def milnor_dims(P1: Poly, P2: Poly, N: int, w: WeightVector = STANDARD_WEIGHTS) -> MilnorResult:
    """Graded dims of A / (P1, P2, 2x2 minors of the Jacobian) up to degree N."""
    return quotient_dims([P1, P2] + jacobian_minors(P1, P2), N, w)


def milnor_dims_single(P: Poly, N: int, w: WeightVector = STANDARD_WEIGHTS) -> MilnorResult:
    """Graded dims of A / (dP/dx1, ..., dP/dx4)."""
    return quotient_dims([P.diff(i) for i in range(1, 5)], N, w)


# --------------------------------------------------------------------------
# subspace helpers


def _subspace_equal(fn: Optional[Callable[[ChainElement], ChainElement]], k: int, d: int, tk: int,
                    d2: int, spanning: Sequence[ChainElement], w: WeightVector,
                    method: str) -> Tuple[bool, dict]:
    """ker(fn) on the degree-d slice of Omega^k versus span(spanning)."""
    dim = form_dim(k, d, w)
    r_map = rank(form_map_matrix(fn, k, d, tk, d2, w), method) if dim else 0
    kernel = dim - r_map
    spanning = [c for c in spanning if not c.is_zero()]
    inside = all(fn(c).is_zero() for c in spanning)
    r_span = rank(span_matrix(spanning, k, d, w), method) if spanning else 0
    return inside and r_span == kernel, {"degree": d, "kernel_dim": kernel, "span_rank": r_span,
                                         "span_in_kernel": inside}


def casimir_monomials(S: PoissonStructure, e: int) -> List[Poly]:
    """P1^a P2^b of weight degree e."""
    p1, p2 = S.degree_P1, S.degree_P2
    if e < 0:
        return []
    out = []
    for a in range(e // p1 + 1):
        rest = e - a * p1
        if rest % p2 == 0:
            out.append(S.P1 ** a * S.P2 ** (rest // p2))
    return out


def _monos(e: int, w: WeightVector) -> List[Poly]:
    return [Poly.monomial(m) for m in monomial_basis(e, w)] if e >= 0 else []


# --------------------------------------------------------------------------
# kernels of the boundary maps


def kernel_spanning_set(S: PoissonStructure, i: int, d: int) -> List[ChainElement]:
    """The spanning set of the degree-d slice of ker d_i described by the kernel propositions."""
    w = S.weights
    p1, p2 = S.degree_P1, S.degree_P2
    g1, g2 = S.grad_P1, S.grad_P2
    w12 = cross(g1, g2)
    if i == 1:
        return ([ChainElement(1, g1 * m) for m in _monos(d - p1, w)]
                + [ChainElement(1, g2 * m) for m in _monos(d - p2, w)]
                + [derham_d(ChainElement(0, m)) for m in _monos(d, w)])
    if i == 2:
        return ([ChainElement(2, w12 * m) for m in _monos(d - p1 - p2, w)]
                + [ChainElement(2, cross(grad(m), g1)) for m in _monos(d - p1, w)]
                + [ChainElement(2, cross(grad(m), g2)) for m in _monos(d - p2, w)])
    if i == 3:
        if not (w.total == 2 * p1 == 2 * p2):
            raise UnsupportedStructureError(
                f"ker d3 description needs |w| = 2 deg P1 = 2 deg P2, got {w.total}, {p1}, {p2}")
        rho = rho_form(w)
        return ([rho.scale(C) for C in casimir_monomials(S, d - w.total)]
                + [ChainElement(3, barcross(grad(m), w12)) for m in _monos(d - p1 - p2, w)])
    if i == 4:
        return [delta_form().scale(C) for C in casimir_monomials(S, d - w.total)]
    raise ValueError(f"kernel descriptions exist for i = 1..4, got {i}")


def kernel_characterization_check(S: PoissonStructure, i: int, d: int,
                                  method: str = "exact") -> CheckResult:
    """ker d_i in degree d equals the span of its described generators."""
    span = kernel_spanning_set(S, i, d)
    ok, info = _subspace_equal(lambda c: poisson_boundary(S, c), i, d, i - 1, d + S.pi_degree,
                               span, S.weights, method)
    return CheckResult(f"kernel-{i}", ok, info)


# --------------------------------------------------------------------------
# division lemmas


def saito_division_check(S: PoissonStructure, d: int, method: str = "exact") -> CheckResult:
    """Both division statements for grad P1 x grad P2 at degree d.

    Two-forms: G with (grad P1 x grad P2) . f(G) = 0 are H1 x grad P1 + H2 x grad P2.
    One-forms: H with H barcross (grad P1 x grad P2) = 0 are U1 grad P1 + U2 grad P2.
    """
    w = S.weights
    p1, p2 = S.degree_P1, S.degree_P2
    g1, g2 = S.grad_P1, S.grad_P2
    w12 = cross(g1, g2)

    two = [koszul_wedge(P, ChainElement(1, Vec4.unit(j + 1) * m))
           for P, p in ((S.P1, p1), (S.P2, p2))
           for j in range(4) for m in _monos(d - p - w[j], w)]
    ok2, info2 = _subspace_equal(lambda G: ChainElement(4, dot(w12, f_map(G.payload))), 2, d, 4,
                                 d + p1 + p2, two, w, method)

    one = ([ChainElement(1, g1 * m) for m in _monos(d - p1, w)]
           + [ChainElement(1, g2 * m) for m in _monos(d - p2, w)])
    ok1, info1 = _subspace_equal(lambda H: ChainElement(3, barcross(H.payload, w12)), 1, d, 3,
                                 d + p1 + p2, one, w, method)
    return CheckResult("saito", ok1 and ok2, {"degree": d, "two_forms": info2, "one_forms": info1})


# --------------------------------------------------------------------------
# Koszul complex of dP


def koszul_exactness_check(P: Poly, d: int, w: WeightVector = STANDARD_WEIGHTS,
                           method: str = "exact") -> CheckResult:
    """Exactness of 0 -> Omega^0 -> ... -> Omega^4 (wedge with dP) at slots 0..3, degree d.

    Slot k is exact in degree d when ker(k, d) = im(k - 1, d - deg P); slot 0
    means injectivity.  Slot 4 is not expected to be exact (its cokernel is
    the Milnor algebra).
    """
    g = grading(P, w)
    if P.is_zero() or not g.is_homogeneous:
        raise ValueError("P must be a nonzero weight homogeneous polynomial")
    p = g.degree

    def rk(k, e):
        if k < 0 or e < 0 or form_dim(k, e, w) == 0:
            return 0
        return rank(form_map_matrix(lambda c: koszul_wedge(P, c), k, e, k + 1, e + p, w), method)

    slots = []
    for k in range(4):
        kernel = form_dim(k, d, w) - rk(k, d)
        image = rk(k - 1, d - p)
        slots.append({"slot": k, "kernel_dim": kernel, "image_dim": image, "exact": kernel == image})
    ok = all(s["exact"] for s in slots)
    failed = [s["slot"] for s in slots if not s["exact"]]
    return CheckResult("koszul", ok, {"degree": d, "slots": slots, "failed_slots": failed})


# --------------------------------------------------------------------------
# generator families


MU = ("1", "x1", "x2", "x3", "x4", "x1^2", "x3^2")
H2_SIXTH_CANDIDATES = ("printed", "P1xP2", "mu6")
H2_SIXTH_DEFAULT = "P1xP2"


@dataclass(frozen=True)
class GeneratorFamily:
    """Claimed generators of H_i over K[P1, P2], as (form, canonical degree) pairs."""

    label: str
    i: int
    elements: Tuple[Tuple[ChainElement, Optional[int]], ...]


def _mu() -> List[Poly]:
    return [parse_poly(s) for s in MU]


def generator_family(S: PoissonStructure, i: int, sixth: str = H2_SIXTH_DEFAULT) -> GeneratorFamily:
    w = S.weights
    mu = _mu()
    g1, g2 = S.grad_P1, S.grad_P2
    if i == 0:
        els = [ChainElement(0, m) for m in mu]
        label = "mu_0..mu_6"
    elif i == 1:
        els = ([ChainElement(1, grad(m)) for m in mu[1:7]]
               + [ChainElement(1, g1 * m) for m in mu[1:6]]
               + [ChainElement(1, g1), ChainElement(1, g2)])
        label = "grad mu_k (k=1..6), mu_k grad P1 (k=1..5), grad P1, grad P2"
    elif i == 2:
        els = [ChainElement(2, cross(grad(m), g1)) for m in mu[1:6]]
        if sixth == "printed":
            els.append(ChainElement(2, cross(g1, g1)))
        elif sixth == "P1xP2":
            els.append(ChainElement(2, cross(g1, g2)))
        elif sixth == "mu6":
            els.append(ChainElement(2, cross(grad(mu[6]), g1)))
        else:
            raise ValueError(f"unknown sixth-generator reading {sixth!r}")
        label = f"grad mu_k x grad P1 (k=1..5), sixth={sixth}"
    elif i == 3:
        els = [rho_form(w)]
        label = "rho"
    elif i == 4:
        els = [delta_form()]
        label = "delta"
    else:
        raise ValueError(f"i must be in 0..4, got {i}")
    return GeneratorFamily(label, i, tuple((c, chain_degree(c, w)) for c in els))


@dataclass
class GeneratorReport:
    i: int
    label: str
    spans: bool
    free: bool
    per_degree: List[dict]

    def as_check(self) -> CheckResult:
        return CheckResult(f"generators-H{self.i}", self.spans and self.free,
                           {"family": self.label, "spans": self.spans, "free": self.free,
                            "per_degree": self.per_degree})


def require_j_preset(S: PoissonStructure) -> None:
    if S.name != "sklyanin-J":
        raise UnsupportedStructureError(
            f"generator theorems are stated for the J-form Sklyanin preset, not {S.name!r}")


def verify_generators(S: PoissonStructure, i: int, N: int, sixth: str = H2_SIXTH_DEFAULT,
                      method: str = "exact") -> GeneratorReport:
    """Spanning and freeness of the claimed H_i generators, degree by degree up to N."""
    require_j_preset(S)
    w = S.weights
    s = S.pi_degree
    fam = generator_family(S, i, sixth)
    per = []
    spans = free = True
    for d in range(N + 1):
        elems = []
        for g, gd in fam.elements:
            if gd is None:
                continue
            elems.extend(g.scale(C) for C in casimir_monomials(S, d - gd))
        dim = form_dim(i, d, w)
        ker = dim - (map_rank(S, boundary_map(i), d, method) if i >= 1 and dim else 0)
        in_ker = i == 0 or all(poisson_boundary(S, c).is_zero() for c in elems)
        if i < 4 and form_dim(i + 1, d - s, w):
            img_m = assemble_matrix(S, boundary_map(i + 1), d - s)
        else:
            img_m = MatrixQ(dim, 0, [])
        r_img = rank(img_m, method) if img_m.cols else 0
        gens = [c for c in elems if not c.is_zero()]
        total = img_m.hstack(span_matrix(gens, i, d, w)) if gens else img_m
        r_tot = rank(total, method) if total.cols else 0
        d_spans = in_ker and r_tot == ker
        d_free = r_tot - r_img == len(elems)
        spans &= d_spans
        free &= d_free
        per.append({"degree": d, "count": len(elems), "homology_dim": ker - r_img,
                    "kernel_dim": ker, "image_rank": r_img, "span_rank": r_tot,
                    "spans": d_spans, "free": d_free})
    return GeneratorReport(i, fam.label, spans, free, per)


def resolve_h2_sixth(S: PoissonStructure, N: int, method: str = "exact") -> Dict[str, GeneratorReport]:
    """Run the H2 generator check under each reading of the sixth generator."""
    return {c: verify_generators(S, 2, N, c, method) for c in H2_SIXTH_CANDIDATES}

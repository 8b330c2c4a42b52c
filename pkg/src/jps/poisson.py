"""Jacobian Poisson structures on K[x1,x2,x3,x4].

The bracket of a structure with Casimirs P1, P2 and multiplier lam is

    {F, G} = lam * det(grad F, grad G, grad P1, grad P2).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from typing import Dict, Optional, Tuple

from .polyring import (COORDS, ONE, STANDARD_WEIGHTS, ZERO, Coeff, Poly, WeightVector,
                       grading, parse_poly)
from .veccalc import Vec4, Vec6, cross, dot, f_map, grad

PAIRS = tuple(combinations(range(1, 5), 2))

# Vec6 slot j holds the coefficient of this ordered pair of coordinates.
SLOT_PAIRS = ((1, 4), (1, 2), (3, 2), (3, 4), (3, 1), (2, 4))

# Global sign that makes the corrected k-form quadrics reproduce the
# coordinate bracket table verbatim; fixed by scripts/calibrate_lambda.py.
K_PRESET_LAMBDA = Fraction(-1)


class StructureError(ValueError):
    """A Poisson structure failed validation."""


class GenericityError(StructureError):
    """Sklyanin parameters violate the genericity constraints."""


def _perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def det_leibniz(rows) -> Poly:
    """Determinant of a square matrix of polynomials by the permutation sum."""
    n = len(rows)
    total = ZERO
    for p in permutations(range(n)):
        term = ONE
        for i in range(n):
            term = term * rows[i][p[i]]
            if term.is_zero():
                break
        else:
            total = total + (term if _perm_sign(p) > 0 else -term)
    return total


def _laplace_sign(i: int, j: int) -> int:
    # sign of the (rows 1,2 | cols i,j) term in the Laplace expansion
    return -1 if (1 + 2 + i + j) % 2 else 1


def _minor2(a: Vec4, b: Vec4, i: int, j: int) -> Poly:
    return a[i - 1] * b[j - 1] - a[j - 1] * b[i - 1]


@dataclass(frozen=True)
class PoissonStructure:
    """A validated Jacobian Poisson structure (P1, P2, lam, weights)."""

    P1: Poly
    P2: Poly
    lam: Fraction = Fraction(1)
    weights: WeightVector = STANDARD_WEIGHTS
    name: str = "custom"
    params: Tuple[Tuple[str, Fraction], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam == 0:
            raise StructureError("multiplier lambda must be nonzero")
        for label, P in (("P1", self.P1), ("P2", self.P2)):
            g = grading(P, self.weights)
            if P.is_zero():
                raise StructureError(f"{label} is zero")
            if not g.is_homogeneous:
                raise StructureError(f"{label} is not weight homogeneous for weights {self.weights.w}")
        for i, j, k in combinations(range(1, 5), 3):
            if not jacobiator(self, COORDS[i - 1], COORDS[j - 1], COORDS[k - 1]).is_zero():
                raise StructureError(f"Jacobi identity fails on (x{i}, x{j}, x{k})")
        for label, P in (("P1", self.P1), ("P2", self.P2)):
            if not is_casimir(self, P):
                raise StructureError(f"{label} is not a Casimir")

    # cached data --------------------------------------------------------
    @cached_property
    def grad_P1(self) -> Vec4:
        return grad(self.P1)

    @cached_property
    def grad_P2(self) -> Vec4:
        return grad(self.P2)

    @cached_property
    def casimir_wedge(self) -> Vec6:
        """lam * grad P1 x grad P2; every boundary map is built from this."""
        return cross(self.grad_P1, self.grad_P2) * self.lam

    @cached_property
    def f_casimir_wedge(self) -> Vec6:
        return f_map(self.casimir_wedge)

    @cached_property
    def pi(self) -> Dict[Tuple[int, int], Poly]:
        """Coordinate brackets {x_i, x_j} for all ordered pairs, i != j."""
        out = {}
        a, b = self.grad_P1, self.grad_P2
        for i, j in PAIRS:
            k, l = [m for m in range(1, 5) if m not in (i, j)]
            v = _minor2(a, b, k, l).scale(self.lam * _laplace_sign(i, j))
            out[i, j] = v
            out[j, i] = -v
        return out

    @property
    def degree_P1(self) -> int:
        return grading(self.P1, self.weights).degree

    @property
    def degree_P2(self) -> int:
        return grading(self.P2, self.weights).degree

    @property
    def pi_degree(self) -> int:
        """Weight degree of the bivector: deg P1 + deg P2 - |w|."""
        return self.degree_P1 + self.degree_P2 - self.weights.total

    def bracket(self, F: Poly, G: Poly) -> Poly:
        """{F, G} through the coordinate bracket table (biderivation form)."""
        dF = [F.diff(i) for i in range(1, 5)]
        dG = [G.diff(i) for i in range(1, 5)]
        out = ZERO
        for i, j in PAIRS:
            m = dF[i - 1] * dG[j - 1] - dF[j - 1] * dG[i - 1]
            if m:
                out = out + m * self.pi[i, j]
        return out

    def bracket_with_coord(self, j: int, F: Poly) -> Poly:
        """{x_j, F}."""
        out = ZERO
        for m in range(1, 5):
            if m != j:
                d = F.diff(m)
                if d:
                    out = out + d * self.pi[j, m]
        return out

    def describe(self) -> dict:
        return {
            "name": self.name,
            "params": {k: str(v) for k, v in self.params},
            "P1": str(self.P1),
            "P2": str(self.P2),
            "lambda": str(self.lam),
            "weights": list(self.weights.w),
        }

    def __reduce__(self):
        # cached_property values are not part of the pickled state
        return (PoissonStructure, (self.P1, self.P2, self.lam, self.weights, self.name, self.params))


def jacobian_bracket(S: PoissonStructure, F: Poly, G: Poly) -> Poly:
    """lam * det(grad F, grad G, grad P1, grad P2) by Laplace expansion."""
    a, b = grad(F), grad(G)
    out = ZERO
    for i, j in PAIRS:
        top = _minor2(a, b, i, j)
        if top.is_zero():
            continue
        k, l = [m for m in range(1, 5) if m not in (i, j)]
        bottom = _minor2(S.grad_P1, S.grad_P2, k, l)
        term = top * bottom
        out = out + term if _laplace_sign(i, j) > 0 else out - term
    return out.scale(S.lam)


def vector_form_bracket(S: PoissonStructure, F: Poly, G: Poly) -> Poly:
    """The same bracket written as lam * (grad F x grad G) . f(grad P1 x grad P2)."""
    return dot(cross(grad(F), grad(G)), S.f_casimir_wedge)


def bracket_table(S: PoissonStructure) -> Vec6:
    """Coordinate brackets arranged in the A^6 slot order."""
    return Vec6(S.pi[p] for p in SLOT_PAIRS)


def jacobiator(S: PoissonStructure, F: Poly, G: Poly, H: Poly) -> Poly:
    b = S.bracket
    return b(F, b(G, H)) + b(G, b(H, F)) + b(H, b(F, G))


def is_casimir(S: PoissonStructure, C: Poly) -> bool:
    return all(S.bracket_with_coord(j, C).is_zero() for j in range(1, 5))


# --------------------------------------------------------------------------
# Sklyanin presets


@dataclass(frozen=True)
class SklyaninParams:
    """``variant`` is "k" (quadrics q1, q2) or "J" (quadrics Q1, Q2)."""

    variant: str
    k: Optional[Fraction] = None
    J: Optional[Tuple[Fraction, Fraction, Fraction]] = None

    def __post_init__(self):
        if self.variant not in ("k", "J"):
            raise ValueError(f"unknown Sklyanin variant {self.variant!r}")
        if self.variant == "k":
            if self.k is None:
                raise ValueError("k-form needs k")
            object.__setattr__(self, "k", Fraction(self.k))
        else:
            if self.J is None or len(self.J) != 3:
                raise ValueError("J-form needs three parameters J1, J2, J3")
            object.__setattr__(self, "J", tuple(Fraction(v) for v in self.J))

    def genericity_violations(self) -> list:
        if self.variant != "J":
            return []
        out = []
        J = self.J
        for a, b in combinations(range(3), 2):
            if J[a] == J[b]:
                out.append(f"J{a + 1} = J{b + 1} = {J[a]} (must be pairwise distinct)")
        for a in range(3):
            if J[a] in (-1, 0, 1):
                out.append(f"J{a + 1} = {J[a]} (must avoid -1, 0, 1)")
        return out


def k_quadrics(k: Coeff) -> Tuple[Poly, Poly]:
    params = {"k": Fraction(k)}
    q1 = parse_poly("1/2*x1^2 + 1/2*x3^2 + k*x2*x4", params)
    # x2 in place of the printed x1: only this choice reproduces the bracket table
    q2 = parse_poly("1/2*x2^2 + 1/2*x4^2 + k*x1*x3", params)
    return q1, q2


def j_quadrics(J) -> Tuple[Poly, Poly]:
    params = {"J1": J[0], "J2": J[1], "J3": J[2]}
    Q1 = parse_poly("1/2*(x1^2 + x2^2 + x3^2)", params)
    Q2 = parse_poly("1/2*(x4^2 + J1*x1^2 + J2*x2^2 + J3*x3^2)", params)
    return Q1, Q2


def sklyanin_preset(p: SklyaninParams) -> PoissonStructure:
    if p.variant == "k":
        q1, q2 = k_quadrics(p.k)
        return PoissonStructure(q1, q2, K_PRESET_LAMBDA, STANDARD_WEIGHTS,
                                name="sklyanin-k", params=(("k", p.k),))
    bad = p.genericity_violations()
    if bad:
        raise GenericityError("; ".join(bad))
    Q1, Q2 = j_quadrics(p.J)
    return PoissonStructure(Q1 + Q2, Q2, Fraction(1), STANDARD_WEIGHTS, name="sklyanin-J",
                            params=tuple((f"J{i + 1}", v) for i, v in enumerate(p.J)))


def k_preset(k: Coeff) -> PoissonStructure:
    return sklyanin_preset(SklyaninParams("k", k=k))


def j_preset(J1: Coeff, J2: Coeff, J3: Coeff) -> PoissonStructure:
    return sklyanin_preset(SklyaninParams("J", J=(J1, J2, J3)))


def expected_k_table(k: Coeff) -> Dict[Tuple[int, int], Poly]:
    """The coordinate bracket table of the k-form, indices mod 4."""
    k = Fraction(k)
    x = lambda i: COORDS[(i - 1) % 4]
    out = {}
    for i in range(1, 5):
        out[i, (i % 4) + 1] = x(i) * x(i + 1) * (k * k) - x(i + 2) * x(i + 3)
        out[i, ((i + 1) % 4) + 1] = (x(i + 3) ** 2 - x(i + 1) ** 2).scale(k)
    return out

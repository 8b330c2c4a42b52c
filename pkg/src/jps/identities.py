"""The nineteen operator identities on A^4 / A^6 as executable checks.

Each identity is a function of a :class:`random.Random` that draws its own
inputs and returns ``(lhs, rhs)``; the identity holds when they are equal.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .polyring import Poly, ZERO
from .veccalc import (Vec4, Vec6, barcross, barcurl, cross, curl, divergence, dot,
                      f_map, grad)

MAX_DEG = 3
MAX_TERMS = 5


def random_poly(rng: random.Random, max_deg: int = MAX_DEG, max_terms: int = MAX_TERMS) -> Poly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        d = rng.randint(0, max_deg)
        e = [0, 0, 0, 0]
        for _ in range(d):
            e[rng.randrange(4)] += 1
        num = rng.randint(-9, 9)
        den = rng.choice((1, 1, 1, 2, 3))
        terms[tuple(e)] = terms.get(tuple(e), 0) + Fraction(num, den)
    return Poly(terms)


def random_vec4(rng: random.Random, **kw) -> Vec4:
    return Vec4(random_poly(rng, **kw) for _ in range(4))


def random_vec6(rng: random.Random, **kw) -> Vec6:
    return Vec6(random_poly(rng, **kw) for _ in range(6))


def _i1(r):
    x = random_vec6(r)
    return f_map(f_map(x)), x


def _i2(r):
    x, y = random_vec6(r), random_vec6(r)
    return dot(f_map(x), y), dot(x, f_map(y))


def _i3(r):
    x, y = random_vec6(r), random_vec6(r)
    return dot(f_map(x), f_map(y)), dot(x, y)


def _i4(r):
    x, y, z = random_vec6(r), random_vec4(r), random_vec4(r)
    return dot(x, cross(y, z)), dot(y, barcross(z, f_map(x)))


def _i5(r):
    x, y, z = random_vec4(r), random_vec4(r), random_vec6(r)
    return dot(x, barcross(y, z)), -dot(y, barcross(x, z))


def _i6(r):
    x, z = random_vec4(r), random_vec6(r)
    return dot(x, barcross(x, z)), ZERO


def _i7(r):
    x, y = random_vec4(r), random_vec4(r)
    return barcross(x, cross(x, y)), Vec4.zero()


def _i8(r):
    x, y, z = random_vec4(r), random_vec4(r), random_vec4(r)
    return dot(cross(x, z), f_map(cross(x, y))), ZERO


def _i9(r):
    x, y, z = random_vec4(r), random_vec4(r), random_vec4(r)
    return barcross(x, cross(y, z)), barcross(y, cross(z, x))


def _i10(r):
    x, y, z = random_vec4(r), random_vec4(r), random_vec4(r)
    yz = cross(y, z)
    return barcross(barcross(x, f_map(yz)), yz), Vec4.zero()


def _i11(r):
    x, y, z = random_vec4(r), random_vec4(r), random_vec4(r)
    return barcross(z, f_map(cross(x, y))), y * (-dot(z, x)) + x * dot(z, y)


def _i12(r):
    x, y, z, t = (random_vec4(r) for _ in range(4))
    lhs = cross(barcross(z, f_map(cross(x, y))), t)
    return lhs, cross(y, t) * (-dot(z, x)) + cross(x, t) * dot(z, y)


def _i13(r):
    x, y, z = random_vec4(r), random_vec4(r), random_vec4(r)
    return cross(barcross(x, f_map(cross(y, z))), z), cross(y, z) * dot(x, z)


def _i14(r):
    x, y, z = random_vec4(r), random_vec4(r), random_vec6(r)
    fxy = f_map(cross(x, y))
    return barcross(barcross(x, z), fxy), x * (-dot(z, fxy))


def _i15(r):
    x, y = random_vec4(r), random_vec4(r)
    return barcurl(cross(x, y)), barcross(y, curl(x)) - barcross(x, curl(y))


def _i16(r):
    F, x = random_poly(r), random_vec4(r)
    return curl(x * F), curl(x) * F + cross(grad(F), x)


def _i17(r):
    F, y = random_poly(r), random_vec6(r)
    return barcurl(y * F), barcurl(y) * F + barcross(grad(F), y)


def _i18(r):
    F, x = random_poly(r), random_vec4(r)
    return divergence(x * F), dot(grad(F), x) + F * divergence(x)


def _i19(r):
    x, y = random_vec4(r), random_vec6(r)
    return divergence(barcross(x, y)), dot(y, f_map(curl(x))) - dot(x, barcurl(y))


IDENTITIES: Dict[int, Tuple[str, Callable]] = {
    1: ("f∘f = id", _i1),
    2: ("f(x)·y = x·f(y)", _i2),
    3: ("f(x)·f(y) = x·y", _i3),
    4: ("x·(y×z) = y·(z×̄f(x))", _i4),
    5: ("x·(y×̄z) = -y·(x×̄z)", _i5),
    6: ("x·(x×̄z) = 0", _i6),
    7: ("x×̄(x×y) = 0", _i7),
    8: ("(x×z)·f(x×y) = 0", _i8),
    9: ("x×̄(y×z) = y×̄(z×x)", _i9),
    10: ("(x×̄f(y×z))×̄(y×z) = 0", _i10),
    11: ("z×̄f(x×y) = -(z·x)y + (z·y)x", _i11),
    12: ("(z×̄f(x×y))×t = -(z·x)y×t + (z·y)x×t", _i12),
    13: ("(x×̄f(y×z))×z = (x·z)y×z", _i13),
    14: ("(x×̄z)×̄f(x×y) = -(z·f(x×y))x", _i14),
    15: ("∇×̄(x×y) = y×̄(∇×x) - x×̄(∇×y)", _i15),
    16: ("∇×(Fx) = F∇×x + ∇F×x", _i16),
    17: ("∇×̄(Fy) = F∇×̄y + ∇F×̄y", _i17),
    18: ("Div(Fx) = ∇F·x + F Div(x)", _i18),
    19: ("Div(x×̄y) = y·f(∇×x) - x·(∇×̄y)", _i19),
}


def check_identity(item: int, rng: random.Random, cases: int = 100) -> Tuple[bool, int]:
    """Run one identity on ``cases`` random inputs.

    Returns ``(ok, failures)``.
    """
    _, fn = IDENTITIES[item]
    bad = 0
    for _ in range(cases):
        lhs, rhs = fn(rng)
        if lhs != rhs:
            bad += 1
    return bad == 0, bad


def check_all(seed: int = 0, cases: int = 100) -> List[dict]:
    results = []
    for item, (name, _) in IDENTITIES.items():
        rng = random.Random(seed * 1000 + item)
        ok, bad = check_identity(item, rng, cases)
        results.append({"item": item, "identity": name, "pass": ok, "cases": cases, "failures": bad})
    return results

"""Vector calculus on A^4 and A^6.

A^4 carries 1-forms and 3-forms, A^6 carries 2-forms.  The slots of A^6
follow the 2-form order

    dx1^dx4, dx1^dx2, dx3^dx2, dx3^dx4, dx3^dx1, dx2^dx4

and every component table below is written against that order.
"""
from __future__ import annotations

from typing import Iterable, Tuple, Union

from .polyring import ZERO, Coeff, Poly, WeightVector, _coerce


class _Vec:
    __slots__ = ("comps",)
    size = 0

    def __init__(self, comps: Iterable):
        cs = []
        for c in comps:
            p = _coerce(c)
            if p is None:
                raise TypeError(f"component {c!r} is not a polynomial")
            cs.append(p)
        if len(cs) != self.size:
            raise ValueError(f"{type(self).__name__} needs {self.size} components, got {len(cs)}")
        self.comps: Tuple[Poly, ...] = tuple(cs)

    @classmethod
    def zero(cls):
        return cls([ZERO] * cls.size)

    @classmethod
    def unit(cls, j: int, value=1):
        """Vector with ``value`` in slot j (1-based) and zeros elsewhere."""
        cs = [ZERO] * cls.size
        cs[j - 1] = _coerce(value)
        return cls(cs)

    def __getitem__(self, i):
        return self.comps[i]

    def __iter__(self):
        return iter(self.comps)

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.comps == other.comps

    def __hash__(self):
        return hash((type(self).__name__, self.comps))

    def __add__(self, other):
        _same(self, other)
        return type(self)(a + b for a, b in zip(self.comps, other.comps))

    def __sub__(self, other):
        _same(self, other)
        return type(self)(a - b for a, b in zip(self.comps, other.comps))

    def __neg__(self):
        return type(self)(-a for a in self.comps)

    def __mul__(self, F: Union[Poly, Coeff]):
        """Multiply every component by a polynomial or rational."""
        F = _coerce(F)
        if F is None:
            return NotImplemented
        return type(self)(F * a for a in self.comps)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(str(c) for c in self.comps)})"


def _same(a, b):
    if type(a) is not type(b):
        raise TypeError(f"arity mismatch: {type(a).__name__} vs {type(b).__name__}")


class Vec4(_Vec):
    __slots__ = ()
    size = 4


class Vec6(_Vec):
    __slots__ = ()
    size = 6


def cross(x: Vec4, y: Vec4) -> Vec6:
    """Wedge of two 1-forms, written in the A^6 slot order."""
    X1, X2, X3, X4 = x
    Y1, Y2, Y3, Y4 = y
    return Vec6((
        X1 * Y4 - X4 * Y1,
        X1 * Y2 - X2 * Y1,
        X3 * Y2 - X2 * Y3,
        X3 * Y4 - X4 * Y3,
        X3 * Y1 - X1 * Y3,
        X2 * Y4 - X4 * Y2,
    ))


def barcross(x: Vec4, y: Vec6) -> Vec4:
    X1, X2, X3, X4 = x
    Y1, Y2, Y3, Y4, Y5, Y6 = y
    return Vec4((
        -X4 * Y3 + X2 * Y4 - X3 * Y6,
        X3 * Y1 - X1 * Y4 + X4 * Y5,
        -X2 * Y1 + X4 * Y2 + X1 * Y6,
        -X3 * Y2 + X1 * Y3 - X2 * Y5,
    ))


def f_map(y: Vec6) -> Vec6:
    """The signed slot permutation 1<->3 (sign -1), 2<->4, 5<->6."""
    Y1, Y2, Y3, Y4, Y5, Y6 = y
    return Vec6((-Y3, Y4, -Y1, Y2, Y6, Y5))


def dot(x: _Vec, y: _Vec) -> Poly:
    _same(x, y)
    out = ZERO
    for a, b in zip(x.comps, y.comps):
        if a and b:
            out = out + a * b
    return out


def grad(F: Poly) -> Vec4:
    return Vec4(F.diff(i) for i in range(1, 5))


def curl(y: Vec4) -> Vec6:
    Y1, Y2, Y3, Y4 = y
    return Vec6((
        Y4.diff(1) - Y1.diff(4),
        Y2.diff(1) - Y1.diff(2),
        Y2.diff(3) - Y3.diff(2),
        Y4.diff(3) - Y3.diff(4),
        Y1.diff(3) - Y3.diff(1),
        Y4.diff(2) - Y2.diff(4),
    ))


def barcurl(g: Vec6) -> Vec4:
    G1, G2, G3, G4, G5, G6 = g
    return Vec4((
        -G3.diff(4) + G4.diff(2) - G6.diff(3),
        G1.diff(3) - G4.diff(1) + G5.diff(4),
        -G1.diff(2) + G2.diff(4) + G6.diff(1),
        -G2.diff(3) + G3.diff(1) - G5.diff(2),
    ))


def divergence(k: Vec4) -> Poly:
    return k[0].diff(1) + k[1].diff(2) + k[2].diff(3) + k[3].diff(4)


def euler_field(w: WeightVector) -> Vec4:
    """e_w = (w1 x1, ..., w4 x4)."""
    return Vec4(w.euler_vector())

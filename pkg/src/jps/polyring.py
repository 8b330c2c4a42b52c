"""Sparse polynomials in x1..x4 over the rationals.

Coefficients are :class:`fractions.Fraction`; nothing in this package ever
touches floating point.  A monomial is a 4-tuple of exponents.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

NVARS = 4

Mono = Tuple[int, int, int, int]
Coeff = Union[int, Fraction]

ONE_MONO: Mono = (0, 0, 0, 0)


def _mono_mul(a: Mono, b: Mono) -> Mono:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


class Poly:
    """Immutable sparse polynomial ``{monomial: Fraction}`` with no zero terms."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Mono, Coeff]] = None):
        clean: Dict[Mono, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    if len(m) != NVARS or min(m) < 0:
                        raise ValueError(f"bad monomial {m!r}")
                    clean[tuple(m)] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Mono, Fraction]) -> "Poly":
        # caller guarantees normalized terms
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: Coeff) -> "Poly":
        return cls._raw({ONE_MONO: Fraction(c)} if c else {})

    @classmethod
    def var(cls, i: int) -> "Poly":
        """The coordinate x_i, i in 1..4."""
        _check_index(i)
        e = [0, 0, 0, 0]
        e[i - 1] = 1
        return cls._raw({tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, m: Mono, c: Coeff = 1) -> "Poly":
        return cls({tuple(m): c})

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> Dict[Mono, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, m: Mono) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Mono]:
        return iter(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def total_degree(self) -> Optional[int]:
        if not self._terms:
            return None
        return max(sum(m) for m in self._terms)

    # arithmetic ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m)
            if v is None:
                out[m] = -c
            else:
                v -= c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly._raw(out)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        out: Dict[Mono, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return Poly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Coeff) -> "Poly":
        if not c:
            return ZERO
        c = Fraction(c)
        return Poly._raw({m: v * c for m, v in self._terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_mono(self, m: Mono, c: Coeff = 1) -> "Poly":
        """Multiply by the single term c*x^m."""
        if not c:
            return ZERO
        c = Fraction(c)
        return Poly._raw({_mono_mul(k, m): v * c for k, v in self._terms.items()})

    # calculus -----------------------------------------------------------
    def diff(self, i: int) -> "Poly":
        """Formal partial derivative with respect to x_i (i in 1..4)."""
        _check_index(i)
        j = i - 1
        out = {}
        for m, c in self._terms.items():
            e = m[j]
            if e:
                mm = list(m)
                mm[j] = e - 1
                out[tuple(mm)] = c * e
        return Poly._raw(out)

    def subs_linear_sign(self, signs: Tuple[int, int, int, int]) -> "Poly":
        """Apply x_i -> signs[i] * x_i."""
        out = {}
        for m, c in self._terms.items():
            s = 1
            for e, g in zip(m, signs):
                if g < 0 and e % 2:
                    s = -s
            out[m] = c if s > 0 else -c
        return Poly._raw(out)

    def evaluate(self, point: Iterable[Coeff]) -> Fraction:
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for v, e in zip(pt, m):
                if e:
                    t *= v ** e
            total += t
        return total

    # printing -----------------------------------------------------------
    def sorted_terms(self) -> List[Tuple[Mono, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


def _coerce(x) -> Optional[Poly]:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    return None


def _check_index(i: int) -> None:
    if not isinstance(i, int) or not 1 <= i <= NVARS:
        raise IndexError(f"variable index must be in 1..{NVARS}, got {i!r}")


ZERO = Poly()
ONE = Poly.const(1)
X1, X2, X3, X4 = (Poly.var(i) for i in range(1, 5))
COORDS = (X1, X2, X3, X4)


def poly_arith(a: Poly, b, op: str) -> Poly:
    """Dispatch form of ring arithmetic; ``op`` is add, sub, mul or scale."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def partial_derivative(F: Poly, i: int) -> Poly:
    return F.diff(i)


# --------------------------------------------------------------------------
# weight grading


@dataclass(frozen=True)
class WeightVector:
    """Positive integer weights of x1..x4 without common divisor."""

    w: Tuple[int, int, int, int] = (1, 1, 1, 1)

    def __post_init__(self):
        w = tuple(int(v) for v in self.w)
        if len(w) != NVARS or min(w) <= 0:
            raise ValueError(f"weights must be 4 positive integers, got {self.w!r}")
        if math.gcd(*w) != 1:
            raise ValueError(f"weights {w} have a common divisor")
        object.__setattr__(self, "w", w)

    @property
    def total(self) -> int:
        """|w|, the sum of the weights."""
        return sum(self.w)

    def __getitem__(self, i: int) -> int:
        return self.w[i]

    def mono_degree(self, m: Mono) -> int:
        w = self.w
        return m[0] * w[0] + m[1] * w[1] + m[2] * w[2] + m[3] * w[3]

    def euler_vector(self):
        """Coefficients of the Euler derivation: (w1 x1, ..., w4 x4)."""
        return tuple(COORDS[i].scale(self.w[i]) for i in range(NVARS))


STANDARD_WEIGHTS = WeightVector((1, 1, 1, 1))


@dataclass(frozen=True)
class Grading:
    is_homogeneous: bool
    degree: Optional[int]
    components: Dict[int, Poly]


def grading(F: Poly, w: WeightVector = STANDARD_WEIGHTS) -> Grading:
    """Split F into weight-homogeneous components.

    The zero polynomial counts as homogeneous with undefined degree.
    """
    parts: Dict[int, Dict[Mono, Fraction]] = {}
    for m, c in F.items():
        parts.setdefault(w.mono_degree(m), {})[m] = c
    comps = {d: Poly._raw(t) for d, t in sorted(parts.items())}
    if not comps:
        return Grading(True, None, {})
    if len(comps) == 1:
        (d,) = comps
        return Grading(True, d, comps)
    return Grading(False, None, comps)


def weighted_degree(F: Poly, w: WeightVector = STANDARD_WEIGHTS) -> Optional[int]:
    """Degree of a homogeneous F, None for 0; raises for inhomogeneous F."""
    g = grading(F, w)
    if not g.is_homogeneous:
        raise ValueError("polynomial is not weight homogeneous")
    return g.degree


@lru_cache(maxsize=None)
def _basis(d: int, w: Tuple[int, int, int, int]) -> Tuple[Mono, ...]:
    out = []
    w1, w2, w3, w4 = w
    for a in range(d // w1 + 1):
        r1 = d - a * w1
        for b in range(r1 // w2 + 1):
            r2 = r1 - b * w2
            for c in range(r2 // w3 + 1):
                r3 = r2 - c * w3
                if r3 % w4 == 0:
                    out.append((a, b, c, r3 // w4))
    # x1 > x2 > x3 > x4 lexicographically, largest first
    out.sort(reverse=True)
    return tuple(out)


def monomial_basis(d: int, w: WeightVector = STANDARD_WEIGHTS) -> Tuple[Mono, ...]:
    """All monomials of weighted degree exactly d, in canonical order."""
    if d < 0:
        return ()
    return _basis(d, w.w)


def homogeneous_dim(d: int, w: WeightVector = STANDARD_WEIGHTS) -> int:
    return len(monomial_basis(d, w))


def mono_index(d: int, w: WeightVector = STANDARD_WEIGHTS) -> Dict[Mono, int]:
    return _index(d, w.w)


@lru_cache(maxsize=None)
def _index(d: int, w: Tuple[int, int, int, int]) -> Dict[Mono, int]:
    return {m: i for i, m in enumerate(_basis(d, w))}


# --------------------------------------------------------------------------
# text form


class PolyParseError(ValueError):
    """Syntax error in a polynomial expression; ``pos`` is the 0-based offset."""

    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}")


class UnknownVariableError(PolyParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+[eE][+-]?\d+)|(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1):
            raise PolyParseError(f"non-rational literal {m.group(1)!r}", start, text)
        if m.group(2):
            toks.append(("num", int(m.group(2)), start))
        elif m.group(3):
            toks.append(("name", m.group(3), start))
        else:
            op = m.group(4)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, params: Mapping[str, Coeff]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.params = params

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolyParseError(msg, tok[2], self.text)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            q = self.unary()
            if tok[1] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise PolyParseError("division only by a nonzero constant", tok[2], self.text)
                p = p.scale(1 / q.coeff(ONE_MONO))
        return p

    def unary(self) -> Poly:
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            p = self.unary()
            return -p if op == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                neg = True
                self.take()
            tok = self.take()
            if tok[0] != "num" or neg:
                raise PolyParseError("exponent must be a non-negative integer", tok[2], self.text)
            return base ** tok[1]
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return Poly.const(val)
        if kind == "name":
            m = re.fullmatch(r"x([1-4])", val)
            if m:
                return Poly.var(int(m.group(1)))
            if val in self.params:
                return Poly.const(Fraction(self.params[val]))
            raise UnknownVariableError(f"unknown variable {val!r}", pos, self.text)
        if kind == "op" and val == "(":
            p = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                raise PolyParseError("expected ')'", close[2], self.text)
            return p
        self.error("unexpected token" if kind != "end" else "unexpected end of input", tok)


def parse_poly(text: str, params: Optional[Mapping[str, Coeff]] = None) -> Poly:
    """Parse an expression in x1..x4 with rational literals.

    ``params`` binds named constants such as ``k`` or ``J1``.
    """
    return _Parser(text, params or {}).parse()


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(F: Poly) -> str:
    if F.is_zero():
        return "0"
    pieces = []
    for m, c in F.sorted_terms():
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}^{e}")
        a = abs(c)
        if not factors:
            body = _fmt_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _fmt_coeff(a) + "*" + "*".join(factors)
        pieces.append(("-" if c < 0 else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out

"""Number fields Q[x]/(f) in the power basis, with exact real signs."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import sympy

from .polynomials import IntegerPolynomial, is_squarefree
from .real_roots import RealEmbedding, isolate_real_roots, sign_at_root


def _is_irreducible(f: IntegerPolynomial) -> bool:
    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(f.coeffs)), x, domain="ZZ").is_irreducible


class NumberField:
    """Q(t) with t a root of an irreducible integer polynomial.

    Real embeddings are listed with the largest root first, so index 0 is the
    distinguished embedding used by model forms unless told otherwise.
    """

    def __init__(self, minpoly, check: bool = True):
        f = minpoly if isinstance(minpoly, IntegerPolynomial) else IntegerPolynomial(minpoly)
        if f.degree < 1:
            raise ValueError("defining polynomial must have degree >= 1")
        f = f.primitive_part()
        if check:
            if not is_squarefree(f):
                raise ValueError(f"defining polynomial {f} is not squarefree")
            if not _is_irreducible(f):
                raise ValueError(f"defining polynomial {f} is reducible over Q")
        self.minpoly = f
        self.degree = f.degree
        self.real_embeddings: list[RealEmbedding] = [
            RealEmbedding(e.poly, i, e.lo, e.hi)
            for i, e in enumerate(reversed(isolate_real_roots(f)))
        ]
        self.r1 = len(self.real_embeddings)
        self.r2 = (self.degree - self.r1) // 2
        self.cm_base: "NumberField | None" = None
        self.cm_d: int | None = None

    def __repr__(self):
        return f"NumberField({self.minpoly}, r1={self.r1}, r2={self.r2})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    @property
    def is_totally_real(self) -> bool:
        return self.r2 == 0

    @property
    def is_totally_imaginary(self) -> bool:
        return self.r1 == 0

    @property
    def is_rationals(self) -> bool:
        return self.degree == 1

    def __call__(self, coords) -> "NumberFieldElement":
        if isinstance(coords, (int, Fraction)):
            coords = [coords]
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            raise ValueError("too many coordinates")
        return NumberFieldElement(self, tuple(coords + [Fraction(0)] * (self.degree - len(coords))))

    @cached_property
    def gen(self) -> "NumberFieldElement":
        if self.degree == 1:
            # t is the rational root of a linear polynomial
            a0, a1 = self.minpoly.coeffs
            return self([Fraction(-a0, a1)])
        return self([0, 1])

    def one(self):
        return self([1])

    def zero(self):
        return self([0])

    def _reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        f = self.minpoly.coeffs
        d = self.degree
        c = list(coeffs)
        lead = Fraction(f[-1])
        for k in range(len(c) - 1, d - 1, -1):
            t = c[k] / lead
            if t:
                for j in range(d + 1):
                    c[k - d + j] -= t * f[j]
        c = c[:d] + [Fraction(0)] * max(0, d - len(c))
        return tuple(c)

    def to_json(self) -> dict:
        return {"minpoly": self.minpoly.to_json(), "r1": self.r1, "r2": self.r2,
                "embeddings": [e.to_json() for e in self.real_embeddings]}


@dataclass(frozen=True)
class NumberFieldElement:
    field: NumberField
    coords: tuple[Fraction, ...]

    def _other(self, b):
        if isinstance(b, NumberFieldElement):
            if b.field != self.field:
                raise ValueError("elements of different number fields")
            return b
        return self.field(b)

    def __add__(self, b):
        b = self._other(b)
        return NumberFieldElement(self.field, tuple(x + y for x, y in zip(self.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-x for x in self.coords))

    def __sub__(self, b):
        return self + (-self._other(b))

    def __rsub__(self, b):
        return self._other(b) - self

    def __mul__(self, b):
        b = self._other(b)
        if self.field.degree == 1:
            return NumberFieldElement(self.field, (self.coords[0] * b.coords[0],))
        prod = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, x in enumerate(self.coords):
            if x:
                for j, y in enumerate(b.coords):
                    prod[i + j] += x * y
        return NumberFieldElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.field.one(), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, NumberFieldElement):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def polynomial_coeffs(self) -> list[Fraction]:
        """Coefficients of the representing polynomial in the field generator."""
        if self.field.degree == 1:
            return [self.coords[0]]
        return list(self.coords)

    def inverse(self) -> "NumberFieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.field.degree == 1:
            return NumberFieldElement(self.field, (1 / self.coords[0],))
        # extended Euclid over Q between a(x) and f(x)
        a = _strip(list(self.coords))
        f = [Fraction(c) for c in self.field.minpoly.coeffs]
        r0, r1 = f, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        c = r1[0]
        return NumberFieldElement(self.field, self.field._reduce([x / c for x in s1]))

    def __truediv__(self, b):
        return self * self._other(b).inverse()

    def conjugate_value(self, e: RealEmbedding) -> float:
        x = e.approx()
        return float(sum(float(c) * x**i for i, c in enumerate(self.polynomial_coeffs())))

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]

    def __repr__(self):
        if self.field.degree == 1:
            return str(self.coords[0])
        terms = [f"{c}*t^{i}" if i else str(c) for i, c in enumerate(self.coords) if c]
        return " + ".join(terms) or "0"


def _strip(a):
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _strip(out)


def _psub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _strip([x - y for x, y in zip(a, b)])


def _pdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        t = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = t
        for j, y in enumerate(b):
            a[k + j] -= t * y
        a.pop()
        _strip(a)
        if len(a) == 1 and a[0] == 0:
            break
    return _strip(q), _strip(a) if a else [Fraction(0)]


def sign_at_embedding(a: NumberFieldElement, e: RealEmbedding) -> int:
    """Exact sign of the image of a under the real embedding e."""
    if e.poly != a.field.minpoly:
        raise ValueError("embedding does not belong to the element's field")
    if a.is_zero():
        return 0
    return sign_at_root(a.polynomial_coeffs(), e)

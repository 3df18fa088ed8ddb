"""Dense integer polynomials (ascending coefficients)."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd


class IntegerPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "IntegerPolynomial":
        return cls([0, 1])

    @classmethod
    def from_json(cls, data) -> "IntegerPolynomial":
        return cls([int(x) for x in data])

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, IntegerPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntegerPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}{'*' + mono if mono else ''}"
            terms.append(("- " if c < 0 else "+ ") + s)
        out = " ".join(terms)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntegerPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntegerPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntegerPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntegerPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = IntegerPolynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntegerPolynomial":
        return IntegerPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive_part(self) -> "IntegerPolynomial":
        """Divide by the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lead < 0:
            c = -c
        return IntegerPolynomial(x // c for x in self.coeffs)

    def exact_div(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        """Quotient in Z[x]; raises if the division leaves a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            if rem:
                raise ArithmeticError("inexact polynomial division")
            return IntegerPolynomial()
        quo = [0] * (dq + 1)
        lead = other.lead
        for k in range(dq, -1, -1):
            c, r = divmod(rem[k + other.degree], lead)
            if r:
                raise ArithmeticError("inexact polynomial division")
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        if any(rem):
            raise ArithmeticError("inexact polynomial division")
        return IntegerPolynomial(quo)

    def divmod_rational(self, other: "IntegerPolynomial"):
        """Division over Q, returning Fraction coefficient lists."""
        rem = [Fraction(c) for c in self.coeffs]
        d = other.degree
        lead = Fraction(other.lead)
        quo = [Fraction(0)] * max(0, len(rem) - d)
        for k in range(len(rem) - d - 1, -1, -1):
            c = rem[k + d] / lead
            quo[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
        rem = rem[:d]
        while rem and rem[-1] == 0:
            rem.pop()
        return quo, rem


def _coerce(x) -> IntegerPolynomial:
    if isinstance(x, IntegerPolynomial):
        return x
    return IntegerPolynomial([x])


def poly_gcd(f: IntegerPolynomial, g: IntegerPolynomial) -> IntegerPolynomial:
    """Primitive gcd in Z[x] with positive leading coefficient."""
    if f.is_zero():
        return g.primitive_part()
    if g.is_zero():
        return f.primitive_part()
    h = dup_gcd(list(reversed(f.coeffs)), list(reversed(g.coeffs)), ZZ)
    return IntegerPolynomial(int(c) for c in reversed(h)).primitive_part()


def poly_radical(f: IntegerPolynomial) -> IntegerPolynomial:
    """Squarefree part f / gcd(f, f'), primitive with positive leading coefficient."""
    if f.is_zero():
        raise ValueError("radical of the zero polynomial")
    if f.degree == 0:
        return IntegerPolynomial([1])
    g = poly_gcd(f, f.derivative())
    return f.primitive_part().exact_div(g).primitive_part()


def is_squarefree(f: IntegerPolynomial) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0

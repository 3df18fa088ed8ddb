"""Prime and prime-power finite fields.

Elements are stored as integers ``0 <= code < q`` whose base-``p`` digits are
the coefficients of the element in the power basis ``1, t, ..., t^(n-1)`` of
the chosen modulus.  ``FieldElement`` wraps a code for operator-style use; the
group carriers work with raw codes.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from ..config import check_cap


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p, ascending coefficient lists -----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _powmod_x(e: int, m: list[int], p: int) -> list[int]:
    """x^e mod m over F_p."""
    result, base = [1], _pmod([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible_mod_p(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    f = _trim([c % p for c in f])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if _powmod_x(p**n, f, p) != _pmod([0, 1], f, p):
        return False
    for r in prime_factors(n):
        h = _powmod_x(p ** (n // r), f, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        g = _pgcd(f, _trim(h), p)
        if len(g) != 1:
            return False
    return True


def least_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree n whose lower coefficients, read as a base-p
    number with ``c_{n-1}`` most significant, are smallest."""
    for code in range(p**n):
        low = [(code // p**i) % p for i in range(n)]
        if is_irreducible_mod_p(low + [1], p):
            return tuple(low + [1])
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """The field F_q, q = p^n, with a fixed modulus."""

    def __init__(self, p: int, n: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        check_cap("field_size", p**n)
        if modulus is None:
            modulus = least_irreducible(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if not is_irreducible_mod_p(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p, self.n, self.q = p, n, p**n
        self.modulus = modulus
        self._exp = None
        self._log = None

    def __repr__(self):
        return f"FiniteField(p={self.p}, n={self.n}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (isinstance(other, FiniteField) and self.p == other.p
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # codes <-> coefficient vectors
    def coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        return tuple((a // p**i) % p for i in range(self.n))

    def from_coeffs(self, c) -> int:
        c = list(c)
        if len(c) > self.n:
            raise ValueError("too many coefficients")
        return sum((int(x) % self.p) * self.p**i for i, x in enumerate(c))

    def element(self, c) -> "FieldElement":
        if isinstance(c, int):
            return FieldElement(self, c)
        return FieldElement(self, self.from_coeffs(c))

    def elements(self):
        return range(self.q)

    @property
    def generator_theta(self) -> int:
        """Code of the class of x (the power-basis generator)."""
        return self.from_coeffs(_pmod([0, 1], list(self.modulus), self.p))

    # arithmetic on codes
    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % p
        out, w = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        out, w = 0, 1
        while a:
            out += ((-(a % p)) % p) * w
            a //= p
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale(self, k: int, a: int) -> int:
        """Multiply by the prime-field scalar k."""
        k %= self.p
        return self.from_coeffs([k * c for c in self.coeffs(a)])

    def _poly_mul(self, a: int, b: int) -> int:
        prod = _pmul(list(self.coeffs(a)), list(self.coeffs(b)), self.p)
        return self.from_coeffs(_pmod(prod, list(self.modulus), self.p))

    def _build_tables(self):
        q = self.q
        for g in range(1, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._poly_mul(x, g)
            if len(exp) == q - 1:
                break
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self._exp, self._log = exp, log

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.n == 1:
            return a * b % self.p
        if self._exp is None:
            self._build_tables()
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        if self.n == 1:
            return pow(a, -1, self.p)
        if self._exp is None:
            self._build_tables()
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def encode(self, a: int) -> bytes:
        width = max(1, (self.q.bit_length() + 7) // 8)
        return a.to_bytes(width, "big")

    def mul_matrix(self, c: int) -> np.ndarray:
        """Matrix over F_p of x -> c*x in the power basis (column j = image of t^j)."""
        n = self.n
        m = np.zeros((n, n), dtype=np.int64)
        for j in range(n):
            m[:, j] = self.coeffs(self.mul(c, self.p**j))
        return m

    def apply_linear(self, matrix, a: int) -> int:
        """Apply an F_p-linear map (n x n matrix on coefficient columns) to a code."""
        v = np.asarray(matrix, dtype=np.int64) @ np.array(self.coeffs(a), dtype=np.int64)
        return self.from_coeffs(v % self.p)

    def frobenius_matrix(self) -> np.ndarray:
        n = self.n
        m = np.zeros((n, n), dtype=np.int64)
        for j in range(n):
            m[:, j] = self.coeffs(self.frobenius(self.p**j))
        return m


@functools.lru_cache(maxsize=None)
def make_finite_field(p: int, n: int = 1) -> FiniteField:
    return FiniteField(p, n)


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.field.q:
            raise ValueError("code out of range")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    def _wrap(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.code
        return self.field.from_coeffs([other])

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._wrap(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._wrap(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._wrap(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * FieldElement(self.field, self.field.inv(self._wrap(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def frobenius(self):
        return FieldElement(self.field, self.field.frobenius(self.code))

    def __bool__(self):
        return self.code != 0

    def encode(self) -> bytes:
        return self.field.encode(self.code)

    def __repr__(self):
        return f"F{self.field.q}{list(self.coeffs)}"


def all_vectors(p: int, n: int):
    """All vectors of F_p^n in lexicographic order."""
    return itertools.product(range(p), repeat=n)

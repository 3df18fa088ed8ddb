"""Concrete element types that ``generate_group`` can close over.

A carrier element supports ``*``, ``inverse()``, ``identity()``, ``encode()``
(canonical bytes) and ``carrier`` (a hashable description of the ambient
structure, used to reject mixed generator lists).
"""
from __future__ import annotations

from dataclasses import dataclass

from ..algebra.finite_field import FiniteField


@dataclass(frozen=True)
class Perm:
    """Permutation of {0..n-1}; ``p * q`` applies p first, then q."""

    images: tuple[int, ...]

    @classmethod
    def from_cycles(cls, n: int, *cycles, one_based: bool = True) -> "Perm":
        img = list(range(n))
        off = 1 if one_based else 0
        for cyc in cycles:
            cyc = [c - off for c in cyc]
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def carrier(self):
        return ("perm", len(self.images))

    def __mul__(self, other: "Perm") -> "Perm":
        o = other.images
        return Perm(tuple(o[i] for i in self.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def identity(self) -> "Perm":
        return Perm(tuple(range(len(self.images))))

    def encode(self) -> bytes:
        w = 1 if len(self.images) <= 256 else 2
        return b"".join(i.to_bytes(w, "big") for i in self.images)

    def cycles(self, one_based: bool = True) -> list[tuple[int, ...]]:
        seen, out = set(), []
        off = 1 if one_based else 0
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                seen.add(i)
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j + off)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __repr__(self):
        cyc = self.cycles()
        return "".join(str(c).replace(",)", ")").replace(" ", "") for c in cyc) or "()"


@dataclass(frozen=True)
class FunctionPerm:
    """Permutation composed as functions: ``(s * t)(x) = s(t(x))``."""

    images: tuple[int, ...]

    @property
    def carrier(self):
        return ("fperm", len(self.images))

    def __mul__(self, other: "FunctionPerm") -> "FunctionPerm":
        s = self.images
        return FunctionPerm(tuple(s[i] for i in other.images))

    def inverse(self) -> "FunctionPerm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return FunctionPerm(tuple(inv))

    def identity(self) -> "FunctionPerm":
        return FunctionPerm(tuple(range(len(self.images))))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def encode(self) -> bytes:
        w = 1 if len(self.images) <= 256 else (2 if len(self.images) <= 65536 else 4)
        return b"".join(i.to_bytes(w, "big") for i in self.images)


@dataclass(frozen=True)
class MatrixElement:
    """Invertible n x n matrix over a finite field, entries as field codes."""

    field: FiniteField
    n: int
    entries: tuple[int, ...]

    @classmethod
    def from_rows(cls, field: FiniteField, rows) -> "MatrixElement":
        n = len(rows)
        return cls(field, n, tuple(int(x) for row in rows for x in row))

    @property
    def carrier(self):
        return ("matrix", self.field, self.n)

    def rows(self) -> list[list[int]]:
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def __mul__(self, other: "MatrixElement") -> "MatrixElement":
        F, n = self.field, self.n
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    x, y = a[i * n + k], b[k * n + j]
                    if x and y:
                        acc = F.add(acc, F.mul(x, y))
                out.append(acc)
        return MatrixElement(F, n, tuple(out))

    def identity(self) -> "MatrixElement":
        n = self.n
        return MatrixElement(self.field, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def inverse(self) -> "MatrixElement":
        F, n = self.field, self.n
        A = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.rows())]
        for c in range(n):
            piv = next((r for r in range(c, n) if A[r][c]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            A[c], A[piv] = A[piv], A[c]
            inv = F.inv(A[c][c])
            A[c] = [F.mul(inv, x) for x in A[c]]
            for r in range(n):
                if r != c and A[r][c]:
                    f = A[r][c]
                    A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[c])]
        return MatrixElement(F, n, tuple(x for row in A for x in row[n:]))

    def encode(self) -> bytes:
        return b"".join(self.field.encode(x) for x in self.entries)


@dataclass(frozen=True)
class HeisenbergElement:
    """Upper unitriangular [[1, x, t], [0, 1, y], [0, 0, 1]] over F_q."""

    field: FiniteField
    x: int
    y: int
    t: int

    @property
    def carrier(self):
        return ("heisenberg", self.field)

    def __mul__(self, o: "HeisenbergElement") -> "HeisenbergElement":
        F = self.field
        return HeisenbergElement(F, F.add(self.x, o.x), F.add(self.y, o.y),
                                 F.add(F.add(self.t, o.t), F.mul(self.x, o.y)))

    def inverse(self) -> "HeisenbergElement":
        F = self.field
        # (x, y, t)^-1 = (-x, -y, xy - t)
        return HeisenbergElement(F, F.neg(self.x), F.neg(self.y), F.sub(F.mul(self.x, self.y), self.t))

    def identity(self) -> "HeisenbergElement":
        return HeisenbergElement(self.field, 0, 0, 0)

    def encode(self) -> bytes:
        F = self.field
        return F.encode(self.x) + F.encode(self.y) + F.encode(self.t)

    def as_matrix(self) -> MatrixElement:
        return MatrixElement.from_rows(self.field, [[1, self.x, self.t], [0, 1, self.y], [0, 0, 1]])


@dataclass(frozen=True)
class AffineElement:
    """Pair (v, M) in F_p^n x SL(n, F_p), with (v, M)(w, N) = (v + Mw, MN)."""

    p: int
    n: int
    v: tuple[int, ...]
    M: tuple[int, ...]  # row-major

    @property
    def carrier(self):
        return ("affine", self.p, self.n)

    def _apply(self, w) -> tuple[int, ...]:
        n, p, M = self.n, self.p, self.M
        return tuple(sum(M[i * n + k] * w[k] for k in range(n)) % p for i in range(n))

    def __mul__(self, o: "AffineElement") -> "AffineElement":
        n, p = self.n, self.p
        Mw = self._apply(o.v)
        v = tuple((a + b) % p for a, b in zip(self.v, Mw))
        A, B = self.M, o.M
        MN = tuple(sum(A[i * n + k] * B[k * n + j] for k in range(n)) % p
                   for i in range(n) for j in range(n))
        return AffineElement(p, n, v, MN)

    def inverse(self) -> "AffineElement":
        F = MatrixElement(_prime_field(self.p), self.n, self.M).inverse()
        Minv = AffineElement(self.p, self.n, (0,) * self.n, F.entries)
        w = Minv._apply(self.v)
        return AffineElement(self.p, self.n, tuple((-x) % self.p for x in w), F.entries)

    def identity(self) -> "AffineElement":
        n = self.n
        return AffineElement(self.p, n, (0,) * n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def encode(self) -> bytes:
        return bytes(self.v) + bytes(self.M) if self.p < 256 else \
            b"".join(x.to_bytes(4, "big") for x in self.v + self.M)

    def as_matrix(self) -> MatrixElement:
        """Embedding into GL(n+1, F_p) as [[M, v], [0, 1]]."""
        n = self.n
        rows = [list(self.M[i * n:(i + 1) * n]) + [self.v[i]] for i in range(n)]
        rows.append([0] * n + [1])
        return MatrixElement.from_rows(_prime_field(self.p), rows)


@dataclass(frozen=True)
class SemidirectElement:
    """Pair (a, s): a an index into an abelian group A, s an automorphism of A
    stored as an index permutation; (a, s)(b, t) = (a + s(b), s o t)."""

    A: object  # ConcreteGroup
    a: int
    s: FunctionPerm

    @property
    def carrier(self):
        return ("semidirect", id(self.A))

    def __mul__(self, o: "SemidirectElement") -> "SemidirectElement":
        return SemidirectElement(self.A, self.A.mul(self.a, self.s(o.a)), self.s * o.s)

    def inverse(self) -> "SemidirectElement":
        sinv = self.s.inverse()
        return SemidirectElement(self.A, sinv(self.A.inv[self.a]), sinv)

    def identity(self) -> "SemidirectElement":
        return SemidirectElement(self.A, 0, self.s.identity())

    def encode(self) -> bytes:
        w = max(1, (self.A.order.bit_length() + 7) // 8)
        return self.a.to_bytes(w, "big") + self.s.encode()

    def __hash__(self):
        return hash((self.a, self.s))

    def __eq__(self, other):
        return isinstance(other, SemidirectElement) and self.A is other.A and \
            self.a == other.a and self.s == other.s


_fields = {}


def _prime_field(p: int) -> FiniteField:
    if p not in _fields:
        from ..algebra.finite_field import make_finite_field
        _fields[p] = make_finite_field(p, 1)
    return _fields[p]


@dataclass(frozen=True)
class AbelianElement:
    """Element of Z/m_1 x ... x Z/m_k, written additively but multiplied with ``*``."""

    moduli: tuple[int, ...]
    values: tuple[int, ...]

    @property
    def carrier(self):
        return ("abelian", self.moduli)

    def __mul__(self, o: "AbelianElement") -> "AbelianElement":
        return AbelianElement(self.moduli, tuple((a + b) % m for a, b, m in zip(self.values, o.values, self.moduli)))

    def inverse(self) -> "AbelianElement":
        return AbelianElement(self.moduli, tuple((-a) % m for a, m in zip(self.values, self.moduli)))

    def identity(self) -> "AbelianElement":
        return AbelianElement(self.moduli, (0,) * len(self.moduli))

    def encode(self) -> bytes:
        return b"".join(v.to_bytes(4, "big") for v in self.values)

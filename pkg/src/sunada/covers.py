"""Finite covers of the level-2 modular quotient and their exact spectra.

The base surface group is Gamma(2), free on a = [[1,2],[0,1]] and
b = [[1,0],[2,1]].  A surjection phi: F_2 -> G and a subgroup H <= G give the
cover M_H.  Closed geodesics are recorded by absolute trace, which is a
monotone proxy for length: l = 2 arccosh(|tr| / 2).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra.linalg import integer_charpoly
from .algebra.polynomials import IntegerPolynomial, poly_radical
from .config import check_cap
from .groups.core import ConcreteGroup, Subgroup, subgroup_from
from .groups.cosets import coset_table

# letters: 0 = a, 1 = a^-1, 2 = b, 3 = b^-1; inverse of l is l ^ 1
LETTER_NAMES = ("a", "A", "b", "B")
MATRICES = (((1, 2), (0, 1)), ((1, -2), (0, 1)), ((1, 0), (2, 1)), ((1, 0), (-2, 1)))


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[int, ...]

    def __post_init__(self):
        for x, y in zip(self.letters, self.letters[1:]):
            if x == y ^ 1:
                raise ValueError("word is not freely reduced")

    @classmethod
    def parse(cls, s: str) -> "FreeWord":
        """'aBab' with capitals for inverses; reduces freely."""
        out: list[int] = []
        for ch in s:
            if ch not in LETTER_NAMES:
                raise ValueError(f"bad letter {ch!r}")
            l = LETTER_NAMES.index(ch)
            if out and out[-1] == l ^ 1:
                out.pop()
            else:
                out.append(l)
        return cls(tuple(out))

    def __str__(self):
        return "".join(LETTER_NAMES[l] for l in self.letters) or "1"

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple(l ^ 1 for l in reversed(self.letters)))

    def power(self, k: int) -> "FreeWord":
        return FreeWord.parse(str(self) * k) if k else FreeWord(())

    def is_cyclically_reduced(self) -> bool:
        return len(self.letters) < 2 or self.letters[0] != self.letters[-1] ^ 1


@dataclass(frozen=True)
class CyclicClass:
    canonical: FreeWord
    length: int
    primitive: bool

    def to_json(self) -> dict:
        return {"word": str(self.canonical), "length": self.length, "primitive": self.primitive}


def _period(w: tuple[int, ...]) -> int:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[d:] + w[:d] == w:
            return d
    return n


def _is_least_rotation(w: tuple[int, ...]) -> bool:
    return all(w <= w[i:] + w[:i] for i in range(1, len(w)))


@lru_cache(maxsize=32)
def _classes_of_length(n: int) -> tuple[CyclicClass, ...]:
    out = []

    def extend(w: list[int]):
        if len(w) == n:
            t = tuple(w)
            if (n < 2 or t[0] != t[-1] ^ 1) and _is_least_rotation(t):
                out.append(CyclicClass(FreeWord(t), n, _period(t) == n))
            return
        for l in range(4):
            if w and l == w[-1] ^ 1:
                continue
            # the canonical rotation starts with its least letter
            if w and l < w[0]:
                continue
            w.append(l)
            extend(w)
            w.pop()

    extend([])
    return tuple(out)


def cyclic_classes(L: int, primitive_only: bool = False) -> list[CyclicClass]:
    """Conjugacy classes of F_2 of length 1..L, one canonical necklace each."""
    if L < 1:
        raise ValueError("L must be at least 1")
    check_cap("word_length", L)
    out = []
    for n in range(1, L + 1):
        out.extend(c for c in _classes_of_length(n) if c.primitive or not primitive_only)
    return out


def _mat_mul(X, Y):
    return ((X[0][0] * Y[0][0] + X[0][1] * Y[1][0], X[0][0] * Y[0][1] + X[0][1] * Y[1][1]),
            (X[1][0] * Y[0][0] + X[1][1] * Y[1][0], X[1][0] * Y[0][1] + X[1][1] * Y[1][1]))


def word_matrix(w: FreeWord) -> tuple[tuple[tuple[int, int], tuple[int, int]], int]:
    M = ((1, 0), (0, 1))
    for l in w.letters:
        M = _mat_mul(M, MATRICES[l])
    return M, M[0][0] + M[1][1]


def power_trace(t: int, m: int) -> int:
    """tr(M^m) for M in SL(2) with tr M = t: t_m = t t_{m-1} - t_{m-2}."""
    a, b = 2, t
    if m == 0:
        return 2
    for _ in range(m - 1):
        a, b = b, t * b - a
    return b


@dataclass
class Homomorphism:
    """F_2 -> target with a -> image_a, b -> image_b (element indices)."""

    target: ConcreteGroup
    image_a: int
    image_b: int

    def __post_init__(self):
        G = self.target
        for x in (self.image_a, self.image_b):
            if not 0 <= x < G.order:
                raise ValueError(f"image {x} is not an element of {G.name}")
        if subgroup_from(G, [self.image_a, self.image_b]).order != G.order:
            raise ValueError("phi is not surjective: images do not generate the target")
        inv = G.inv
        self._img = (self.image_a, int(inv[self.image_a]), self.image_b, int(inv[self.image_b]))

    def __call__(self, w: FreeWord) -> int:
        x = 0
        for l in w.letters:
            x = self.target.mul(x, self._img[l])
        return x

    def to_json(self) -> dict:
        return {"a": self.image_a, "b": self.image_b}


def default_homomorphism(G: ConcreteGroup) -> Homomorphism:
    """First generating pair (x, y) in index order, preferring the group's own
    two generators when there are two of them."""
    if len(G.gens) == 2:
        try:
            return Homomorphism(G, G.gens[0], G.gens[1])
        except ValueError:
            pass
    for x in range(G.order):
        for y in range(x, G.order):
            if subgroup_from(G, [x, y]).order == G.order:
                return Homomorphism(G, x, y)
    raise ValueError(f"{G.name} is not 2-generated")


@lru_cache(maxsize=32)
def homomorphism_meeting(G: ConcreteGroup, H: Subgroup, word: str = "ab") -> Homomorphism:
    """First surjection F_2 -> G sending ``word`` to a nontrivial element
    conjugate into H, so that the geodesic of ``word`` lifts with degree one
    and the comparison window below the floor is populated.

    For ``ab`` the search runs over phi(b) with phi(a) solved for; other words
    search all pairs in index order (small groups only)."""
    from .groups.cosets import conjugacy_orbit

    w = FreeWord.parse(word)
    seen, _ = conjugacy_orbit(G, H)
    targets = sorted({int(x) for key in seen for x in np.frombuffer(key, dtype=np.int64)} - {0})
    tset = set(targets)
    if word == "ab":
        for y in range(1, G.order):
            iy = int(G.inv[y])
            for h in targets:
                x = G.mul(h, iy)
                if subgroup_from(G, [x, y]).order == G.order:
                    return Homomorphism(G, x, y)
    else:
        check_cap("multiplication_table_order", G.order)
        inv = G.inv
        for x in range(1, G.order):
            for y in range(1, G.order):
                img = (x, int(inv[x]), y, int(inv[y]))
                z = 0
                for l in w.letters:
                    z = G.mul(z, img[l])
                if z in tset and subgroup_from(G, [x, y]).order == G.order:
                    return Homomorphism(G, x, y)
    raise ValueError(f"no surjection F_2 -> {G.name} sends {word} into a conjugate of {H.name}")


@lru_cache(maxsize=32)
def min_hyperbolic_traces_at(n: int) -> int | None:
    """Least |tr| >= 3 among classes of length n, or None."""
    ts = [abs(word_matrix(c.canonical)[1]) for c in _classes_of_length(n)]
    ts = [t for t in ts if t > 2]
    return min(ts) if ts else None


class GrowthBoundError(AssertionError):
    pass


def trace_lower_bound(length: int) -> int:
    """Lower bound 2*length on |tr| of hyperbolic classes of a given length >= 2.

    Attained by a(aB)^m at odd lengths; every run re-checks it exhaustively on
    all lengths it enumerates."""
    return 2 * length


def completeness_floor(L: int) -> int:
    """Least |tr| over all hyperbolic classes longer than L.

    Lengths L+1, L+2, ... are enumerated until the growth bound of the next
    length reaches the running minimum; the bound is checked at every
    enumerated length from 2 on.
    """
    floor = None
    n = 2
    while True:
        if n > L and floor is not None and trace_lower_bound(n) >= floor:
            return floor
        check_cap("word_length", n)
        m = min_hyperbolic_traces_at(n)
        if m is not None:
            if m < trace_lower_bound(n):
                raise GrowthBoundError(f"length {n} has |tr| = {m} below {trace_lower_bound(n)}")
            if n > L:
                floor = m if floor is None else min(floor, m)
        n += 1


def _counter_json(c: Counter) -> dict:
    return {str(k): int(c[k]) for k in sorted(c)}


@dataclass
class TraceSpectrum:
    """Absolute traces of closed geodesics of a cover.

    ``primitive`` holds one entry per primitive geodesic lifted from a base class
    of length <= L.  ``all`` adds the iterates of every primitive geodesic and
    is complete below ``completeness_floor``.  ``iterates`` holds, for every
    base class of length <= L with trace t, the values |T_j(t)| for
    j <= ``iterate_bound`` once per lift whose period divides j; this is the
    truncated view used when no floor applies.
    """

    primitive: Counter
    all: Counter
    L: int
    completeness_floor: int
    degree: int
    meta: dict = field(default_factory=dict)
    iterates: Counter = field(default_factory=Counter)
    iterate_bound: int = 0

    def view(self, which: str) -> Counter:
        return self.primitive if which == "primitive" else self.all

    def truncated_view(self, which: str) -> Counter:
        return self.primitive if which == "primitive" else self.iterates

    def to_json(self) -> dict:
        return {"L": self.L, "completeness_floor": self.completeness_floor, "degree": self.degree,
                "primitive": _counter_json(self.primitive), "all": _counter_json(self.all),
                "iterate_bound": self.iterate_bound,
                "iterate_entries": sum(self.iterates.values()), **self.meta}


def cover_trace_spectrum(G: ConcreteGroup, H: Subgroup, phi: Homomorphism, L: int) -> TraceSpectrum:
    if phi.target is not G:
        raise ValueError("phi does not map onto G")
    floor = completeness_floor(L)
    ct = coset_table(G, H)
    bound = G.exponent
    prim: Counter = Counter()
    iters: Counter = Counter()
    for c in cyclic_classes(L, primitive_only=True):
        _, t = word_matrix(c.canonical)
        if abs(t) <= 2:
            continue
        sizes = ct.orbit_sizes(phi(c.canonical))
        if sum(sizes) != ct.size:
            raise AssertionError("orbit sizes do not partition the cosets")
        tj = [2, t]
        for _ in range(max(bound, max(sizes)) - 1):
            tj.append(t * tj[-1] - tj[-2])
        for m in sizes:
            prim[abs(tj[m])] += 1
            for j in range(m, bound + 1, m):
                iters[abs(tj[j])] += 1
    full: Counter = Counter()
    for tau, mult in prim.items():
        k = 1
        while True:
            tk = abs(power_trace(tau, k))
            if tk >= floor:
                break
            full[tk] += mult
            k += 1
    return TraceSpectrum(prim, full, L, floor, ct.size,
                         {"group": G.content_hash, "subgroup": H.content_hash, "phi": phi.to_json()},
                         iters, bound)


MODES = ("multiset_all", "set_all", "set_primitive", "multiset_primitive")


class CutoffMismatch(ValueError):
    pass


@dataclass
class Comparison:
    equal: bool
    mode: str
    window: int | None
    first_divergence: str | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"equal": self.equal, "mode": self.mode, "window": self.window,
                "first_divergence": self.first_divergence, **self.details}


def compare_spectra(S1: TraceSpectrum, S2: TraceSpectrum, mode: str) -> Comparison:
    """Compare below min(completeness floors); report the least differing trace."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if S1.L != S2.L:
        raise CutoffMismatch(f"spectra computed with different cutoffs {S1.L} and {S2.L}")
    window = min(S1.completeness_floor, S2.completeness_floor)
    kind, view = mode.split("_")

    def diff(a: dict, b: dict) -> list[int]:
        if kind == "set":
            return sorted(set(a) ^ set(b))
        return sorted(t for t in set(a) | set(b) if a.get(t, 0) != b.get(t, 0))

    full_a, full_b = S1.view(view), S2.view(view)
    a = {t: m for t, m in full_a.items() if t < window}
    b = {t: m for t, m in full_b.items() if t < window}
    d = diff(a, b)
    # the truncated comparison covers every lift of a base class of length <= L
    if S1.iterate_bound != S2.iterate_bound:
        raise CutoffMismatch("spectra computed with different iterate bounds")
    trunc_a, trunc_b = S1.truncated_view(view), S2.truncated_view(view)
    d_trunc = diff(trunc_a, trunc_b)
    return Comparison(not d, mode, window, str(d[0]) if d else None,
                      {"degrees": [S1.degree, S2.degree], "entries_compared": [len(a), len(b)],
                       "truncated_equal": not d_trunc,
                       "truncated_first_divergence": str(d_trunc[0]) if d_trunc else None,
                       "truncated_entries": [sum(trunc_a.values()), sum(trunc_b.values())]})


# -- Schreier graphs ----------------------------------------------------------------

def _check_generating_multiset(G: ConcreteGroup, S) -> list[int]:
    S = [int(s) for s in S]
    cnt = Counter(S)
    for s, k in cnt.items():
        if not 0 <= s < G.order:
            raise ValueError(f"{s} is not an element of {G.name}")
        if cnt.get(int(G.inv[s]), 0) != k:
            raise ValueError("generating multiset is not closed under inverses")
    if subgroup_from(G, S).order != G.order:
        raise ValueError("S does not generate G")
    return S


def schreier_adjacency(G: ConcreteGroup, H: Subgroup, S) -> np.ndarray:
    """A[i, j] = #{s in S : (H g_i) s = H g_j} on right cosets."""
    S = _check_generating_multiset(G, S)
    ct = coset_table(G, H)
    A = np.zeros((ct.size, ct.size), dtype=np.int64)
    idx = np.arange(ct.size)
    for s in S:
        np.add.at(A, (idx, ct.action(s)), 1)
    if not (A.sum(axis=1) == len(S)).all() or not np.array_equal(A, A.T):
        raise AssertionError("Schreier graph is not a symmetric regular graph")
    return A


def schreier_spectrum_compare(G: ConcreteGroup, H: Subgroup, K: Subgroup, S, mode: str = "multiset") -> Comparison:
    if mode not in ("multiset", "set"):
        raise ValueError(f"unknown mode {mode!r}")
    p = integer_charpoly(schreier_adjacency(G, H, S))
    q = integer_charpoly(schreier_adjacency(G, K, S))
    if mode == "set":
        p, q = poly_radical(p), poly_radical(q)
    return Comparison(p == q, mode, None, None,
                      {"degrees": [H.index, K.index], "polys": [p.to_json(), q.to_json()]})


__all__ = ["FreeWord", "CyclicClass", "Homomorphism", "TraceSpectrum", "Comparison", "MODES",
           "cyclic_classes", "word_matrix", "power_trace", "completeness_floor", "trace_lower_bound",
           "cover_trace_spectrum", "compare_spectra", "schreier_adjacency",
           "schreier_spectrum_compare", "default_homomorphism", "homomorphism_meeting", "CutoffMismatch"]

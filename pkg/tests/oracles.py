"""Brute-force reference computations, independent of the package internals."""
from __future__ import annotations

from fractions import Fraction
from itertools import product

import sympy


def brute_classes(G):
    """Conjugacy classes via explicit g^-1 x g on carrier elements."""
    els = G.elements
    idx = {e.encode(): i for i, e in enumerate(els)}
    seen = [-1] * len(els)
    classes = []
    for i, x in enumerate(els):
        if seen[i] >= 0:
            continue
        cls = set()
        for g in els:
            cls.add(idx[(g.inverse() * x * g).encode()])
        for j in cls:
            seen[j] = len(classes)
        classes.append(sorted(cls))
    return classes, seen


def brute_counts(G, members):
    _, seen = brute_classes(G)
    counts = {}
    for h in members:
        counts[seen[h]] = counts.get(seen[h], 0) + 1
    return counts, seen


def brute_conjugate(G, H, K) -> bool:
    els = G.elements
    idx = {e.encode(): i for i, e in enumerate(els)}
    target = set(int(k) for k in K.members)
    for g in els:
        if {idx[(g.inverse() * els[h] * g).encode()] for h in H.members} == target:
            return True
    return False


def brute_core(G, H) -> set[int]:
    els = G.elements
    idx = {e.encode(): i for i, e in enumerate(els)}
    core = set(int(h) for h in H.members)
    for g in els:
        core &= {idx[(g.inverse() * els[h] * g).encode()] for h in H.members}
    return core


def sympy_charpoly(M) -> list[int]:
    x = sympy.Symbol("x")
    p = sympy.Matrix(M).charpoly(x)
    return [int(c) for c in reversed(p.all_coeffs())]


def brute_necklaces(n: int):
    """Canonical cyclically reduced words of length n over letters 0..3 (l^1 = inverse)."""
    out = set()
    for w in product(range(4), repeat=n):
        if any(w[i] == w[i + 1] ^ 1 for i in range(n - 1)):
            continue
        if n >= 2 and w[0] == w[-1] ^ 1:
            continue
        out.add(min(w[i:] + w[:i] for i in range(n)))
    return out


def rational_sign(coeffs, root: float) -> int:
    v = sum(float(c) * root**i for i, c in enumerate(coeffs))
    return (v > 0) - (v < 0)


def fraction_poly_eval(coeffs, x: Fraction) -> Fraction:
    return sum(Fraction(c) * x**i for i, c in enumerate(coeffs))

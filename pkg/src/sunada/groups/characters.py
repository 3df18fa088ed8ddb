"""Irreducible characters modulo a prime r = 1 (mod exp G), r > 2|G|.

The normalised characters w(C) = |C| chi(g_C) / chi(1) are the common
eigenvectors of the class-multiplication matrices; they are found by
splitting F_r^k with eigenspaces of pseudo-random combinations of those
matrices (seeded, so tables are reproducible), falling back to the
individual matrices.  Degrees and fixed-space dimensions are integers below
sqrt|G| < r and are lifted from their residues.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from ..algebra.finite_field import is_prime, prime_factors
from ..algebra.linalg import hessenberg_charpoly_mod, nullspace_mod, roots_mod, rref_mod
from ..config import check_cap, get_caps
from .classes import ConjugacyClassPartition, conjugacy_classes, inverse_class
from .core import ConcreteGroup, Subgroup

SPLIT_SEED = 0x5EED


class CharacterTableError(RuntimeError):
    pass


def dixon_prime(order: int, exponent: int) -> int:
    r = (2 * order // exponent + 1) * exponent + 1
    bound = get_caps().prime_search_bound
    while r <= bound:
        if r > 2 * order and is_prime(r):
            return r
        r += exponent
    raise CharacterTableError(f"no prime r = 1 mod {exponent} with 2|G| < r <= {bound}")


def _primitive_root(r: int) -> int:
    fs = prime_factors(r - 1)
    for g in range(2, r):
        if all(pow(g, (r - 1) // f, r) != 1 for f in fs):
            return g
    raise AssertionError


@dataclass
class CharacterTable:
    group: ConcreteGroup
    classes: ConjugacyClassPartition
    prime: int
    values: np.ndarray          # values[i, c] = chi_i(class c) mod r
    degrees: list[int]
    root_of_unity: int          # generator of the order-exp(G) roots of unity mod r
    exponent: int

    @property
    def count(self) -> int:
        return len(self.degrees)

    def inner_product(self, a: np.ndarray, b: np.ndarray) -> int:
        """<a, b> = (1/|G|) sum_g a(g) conj(b(g)) mod r, class functions as residues."""
        r = self.prime
        inv = inverse_class(self.group)
        s = int((self.classes.sizes * a % r * b[inv] % r).sum() % r)
        return s * pow(self.group.order, -1, r) % r

    def to_json(self) -> dict:
        return {"prime": self.prime, "exponent": self.exponent,
                "root_of_unity": self.root_of_unity, "degrees": self.degrees,
                "class_reps": self.classes.reps.tolist(),
                "class_sizes": self.classes.sizes.tolist(),
                "values": self.values.tolist()}


def class_matrices(G: ConcreteGroup, r: int) -> np.ndarray:
    """a[j, k, i] = #{x in C_j : x^-1 z_i in C_k} for class reps z_i (mod r)."""
    cc = conjugacy_classes(G)
    k = cc.count
    a = np.zeros((k, k, k), dtype=np.int64)
    cls = cc.class_of
    for i, z in enumerate(cc.reps):
        y = G.right_mult(int(z))[G.inv]          # x -> x^-1 z
        pair = cls * k + cls[y]
        a[:, :, i] = np.bincount(pair, minlength=k * k).reshape(k, k)
    return a % r


def _split(B: np.ndarray, A: np.ndarray, r: int) -> list[np.ndarray]:
    """Split the A-invariant column space of B into eigenspaces of A."""
    d = B.shape[1]
    R, piv = rref_mod(B.T, r)
    B = R.T.copy()                       # B[piv] = I
    C = ((A @ B) % r)[piv, :]
    lams = roots_mod(hessenberg_charpoly_mod(C, r), r)
    parts = []
    for lam in lams:
        U = nullspace_mod((C - lam * np.eye(d, dtype=np.int64)) % r, r)
        if U.shape[1]:
            parts.append((B @ U) % r)
    if sum(p.shape[1] for p in parts) != d:
        raise CharacterTableError("class matrix restriction is not diagonalisable mod r")
    return parts


def character_table(G: ConcreteGroup) -> CharacterTable:
    hit = G.__dict__.get("_character_table")
    if hit is not None:
        return hit
    check_cap("character_table_order", G.order)
    cc = conjugacy_classes(G)
    k, N = cc.count, G.order
    e = G.exponent
    r = dixon_prime(N, e)
    a = class_matrices(G, r)
    mats = [a[j] for j in range(k)]
    rng = random.Random(SPLIT_SEED)
    spaces = [np.eye(k, dtype=np.int64)]
    attempts = 0
    queue = list(range(1, k))
    while any(S.shape[1] > 1 for S in spaces):
        if attempts < 4:
            coeffs = [rng.randrange(r) for _ in range(k)]
            A = sum(c * M % r for c, M in zip(coeffs, mats)) % r
            attempts += 1
        elif queue:
            A = mats[queue.pop(0)]
        else:
            raise CharacterTableError("class matrices failed to split the class algebra")
        spaces = [part for S in spaces
                  for part in (_split(S, A, r) if S.shape[1] > 1 else [S])]
    if len(spaces) != k:
        raise CharacterTableError("wrong number of irreducible characters")
    inv = inverse_class(G)
    sizes = cc.sizes % r
    rows, degrees = [], []
    for S in spaces:
        w = S[:, 0] % r
        if w[0] == 0:
            raise CharacterTableError("eigenvector vanishes on the identity class")
        w = w * pow(int(w[0]), -1, r) % r
        s = int((w * w[inv] % r * np.array([pow(int(x), -1, r) for x in sizes])).sum() % r)
        d2 = N * pow(s, -1, r) % r
        d = math.isqrt(d2)
        if d * d != d2:
            raise CharacterTableError("degree does not lift to an integer")
        chi = w * d % r * np.array([pow(int(x), -1, r) for x in sizes]) % r
        rows.append(chi)
        degrees.append(d)
    order = sorted(range(k), key=lambda i: (not (rows[i] == 1).all(), degrees[i], rows[i].tolist()))
    values = np.array([rows[i] for i in order], dtype=np.int64)
    degrees = [degrees[i] for i in order]
    g = _primitive_root(r)
    table = CharacterTable(G, cc, r, values, degrees, pow(g, (r - 1) // e, r), e)
    _verify(table)
    G.__dict__["_character_table"] = table
    return table


def _verify(t: CharacterTable) -> None:
    N = t.group.order
    if sum(d * d for d in t.degrees) != N:
        raise CharacterTableError("sum of squared degrees differs from |G|")
    r = t.prime
    inv = inverse_class(t.group)
    gram = (t.values * t.classes.sizes % r) @ t.values[:, inv].T % r
    if not np.array_equal(gram, (N % r) * np.eye(t.count, dtype=np.int64)):
        raise CharacterTableError("row orthogonality fails mod r")


def fixed_space_dim(G: ConcreteGroup, chi: np.ndarray | int, H: Subgroup) -> int:
    """dim of the H-fixed space of the representation with character chi."""
    t = character_table(G)
    row = t.values[chi] if isinstance(chi, (int, np.integer)) else np.asarray(chi)
    r = t.prime
    cls = conjugacy_classes(G).class_of[H.members]
    s = int(row[cls].sum() % r)
    m = s * pow(H.order, -1, r) % r
    if m > int(row[0]):
        raise CharacterTableError("fixed-space dimension failed to lift")
    return m


def spade_profile(G: ConcreteGroup, H: Subgroup) -> list[int]:
    """Fixed-space dimension of every irreducible, in table row order."""
    t = character_table(G)
    r = t.prime
    cls = conjugacy_classes(G).class_of[H.members]
    counts = np.bincount(cls, minlength=t.classes.count)
    sums = (t.values * counts % r).sum(axis=1) % r
    dims = sums * pow(H.order, -1, r) % r
    if (dims > np.array(t.degrees)).any():
        raise CharacterTableError("fixed-space dimension failed to lift")
    return dims.astype(int).tolist()

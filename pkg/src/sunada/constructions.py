"""Explicit finite groups and subgroup families: Heisenberg groups over F_q
with twisted horizontal subgroups, affine groups F_p^n x| SL(n, F_p) with
subspace subgroups, and semidirect products A x| theta.  Small classical
groups (symmetric, dihedral, quaternion) are included for test corpora."""
from __future__ import annotations

import itertools
from math import prod

import numpy as np

from .algebra.finite_field import FiniteField, make_finite_field
from .algebra.linalg import rref_mod
from .config import check_cap
from .groups.carriers import (AbelianElement, AffineElement, FunctionPerm, HeisenbergElement,
                              MatrixElement, Perm, SemidirectElement)
from .groups.core import ConcreteGroup, Subgroup, generate_group


# -- classical small groups --------------------------------------------------

def symmetric_group(n: int) -> ConcreteGroup:
    if n == 1:
        return generate_group([], identity=Perm((0,)), name="S1")
    gens = [Perm.from_cycles(n, (1, 2)), Perm.from_cycles(n, tuple(range(1, n + 1)))]
    G = generate_group(gens, name=f"S{n}")
    G.meta.update(kind="symmetric", degree=n)
    return G


def dihedral_group(n: int) -> ConcreteGroup:
    """Symmetries of the n-gon, order 2n (D_4 has order 8)."""
    rot = Perm.from_cycles(n, tuple(range(1, n + 1)))
    ref = Perm(tuple((-i) % n for i in range(n)))
    G = generate_group([rot, ref], name=f"D{n}")
    G.meta.update(kind="dihedral", n=n)
    return G


def quaternion_group() -> ConcreteGroup:
    """Q_8 inside SL(2, F_3)."""
    F = make_finite_field(3, 1)
    i = MatrixElement.from_rows(F, [[0, 2], [1, 0]])
    j = MatrixElement.from_rows(F, [[1, 1], [1, 2]])
    G = generate_group([i, j], name="Q8")
    G.meta.update(kind="quaternion")
    return G


def cyclic_group(n: int) -> ConcreteGroup:
    g = AbelianElement((n,), (1 % n,))
    G = generate_group([g], identity=g.identity(), name=f"Z{n}")
    G.meta.update(kind="abelian", moduli=[n])
    return G


def abelian_group(moduli) -> ConcreteGroup:
    moduli = tuple(int(m) for m in moduli)
    gens = [AbelianElement(moduli, tuple(1 if i == j else 0 for j in range(len(moduli))))
            for i in range(len(moduli))]
    ident = AbelianElement(moduli, (0,) * len(moduli))
    G = generate_group(gens, identity=ident, name="x".join(f"Z{m}" for m in moduli) or "1")
    G.meta.update(kind="abelian", moduli=list(moduli))
    return G


def vector_group(p: int, n: int) -> ConcreteGroup:
    """Additive group F_p^n."""
    return abelian_group([p] * n)


# -- Heisenberg groups and twists -----------------------------------------------

def heisenberg_group(p: int, n: int) -> ConcreteGroup:
    """Unitriangular 3x3 matrices over F_q, q = p^n; order q^3."""
    F = make_finite_field(p, n)
    check_cap("group_order", F.q**3)
    basis = [p**i for i in range(n)]  # codes of 1, t, ..., t^(n-1)
    gens = [HeisenbergElement(F, b, 0, 0) for b in basis] + [HeisenbergElement(F, 0, b, 0) for b in basis]
    G = generate_group(gens, name=f"N3(F{F.q})")
    G.meta.update(kind="heisenberg", field=F, p=p, n=n)
    return G


def primitive_field_element(F: FiniteField) -> int:
    """Least code generating the multiplicative group of F."""
    for c in range(1, F.q):
        if all(F.pow(c, (F.q - 1) // r) != 1 for r in set(_prime_divisors(F.q - 1))):
            return c
    raise AssertionError("no primitive element")


def _prime_divisors(m: int) -> list[int]:
    out, d = [], 2
    while d * d <= m:
        while m % d == 0:
            out.append(d)
            m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def heisenberg_semilinear_extension(p: int, n: int) -> ConcreteGroup:
    """N_3(F_q) x| GammaL(1, F_q), where c in F_q^* and the Frobenius s act by
    (x, y, t) -> (c x^s, c y^s, c^2 t^s).

    Almost conjugate subgroups of N_3(F_q) stay almost conjugate in any
    overgroup.  For q = 4 this extension is generated by two elements, so it
    receives surjections from a free group of rank 2, which N_3(F_4) does not.
    """
    F = make_finite_field(p, n)
    N = heisenberg_group(p, n)
    c = primitive_field_element(F)
    scale = automorphism_from_map(
        N, lambda e: HeisenbergElement(F, F.mul(c, e.x), F.mul(c, e.y), F.mul(F.mul(c, c), e.t)))
    frob = automorphism_from_map(
        N, lambda e: HeisenbergElement(F, F.frobenius(e.x), F.frobenius(e.y), F.frobenius(e.t)))
    G = _extension(N, [scale, frob], name=f"N3(F{F.q})x|GammaL(1,{F.q})")
    G.meta.update(kind="heisenberg_ext", field=F, p=p, n=n, N=N)
    return G


def _heisenberg_field(G: ConcreteGroup) -> FiniteField:
    if G.meta.get("kind") not in ("heisenberg", "heisenberg_ext"):
        raise ValueError("group was not built by heisenberg_group")
    return G.meta["field"]


def heisenberg_element(G: ConcreteGroup, x: int, y: int, t: int) -> int:
    """Index of the unitriangular element with entries x, y, t."""
    F = _heisenberg_field(G)
    if G.meta["kind"] == "heisenberg":
        return G.index_of(HeisenbergElement(F, x, y, t))
    N = G.meta["N"]
    ident = FunctionPerm(tuple(range(N.order)))
    return G.index_of(SemidirectElement(N, N.index_of(HeisenbergElement(F, x, y, t)), ident))


def horizontal_subgroup(G: ConcreteGroup) -> Subgroup:
    F = _heisenberg_field(G)
    members = [heisenberg_element(G, x, 0, 0) for x in range(F.q)]
    return Subgroup(G, members, name="H")


def twisted_horizontal(G: ConcreteGroup, f) -> Subgroup:
    """{(x, 0, f(x)) : x in F_q} for an F_p-linear map f given as an n x n matrix."""
    F = _heisenberg_field(G)
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (F.n, F.n):
        raise ValueError(f"twist must be a {F.n}x{F.n} matrix over F_{F.p}")
    members = [heisenberg_element(G, x, 0, F.apply_linear(f, x)) for x in range(F.q)]
    return Subgroup(G, members, name="fH")


def multiplication_operator(F: FiniteField, c: int) -> np.ndarray:
    return F.mul_matrix(c)


def _mult_subspace_basis(F: FiniteField) -> np.ndarray:
    """Rows: flattened matrices of multiplication by t^i."""
    return np.array([F.mul_matrix(F.p**i).reshape(-1) for i in range(F.n)], dtype=np.int64)


def is_multiplication_operator(F: FiniteField, f) -> bool:
    """True iff the F_p-linear map f is x -> c x for some c in F_q."""
    f = np.asarray(f, dtype=np.int64) % F.p
    c = F.from_coeffs(f[:, 0])  # f(1) = c
    return np.array_equal(F.mul_matrix(c) % F.p, f)


def twist_splitting(p: int, n: int) -> list[np.ndarray]:
    """Basis of the complement of F_q inside Mat(n, F_p): standard matrices E_c
    for the non-pivot positions of the row-reduced multiplication basis."""
    F = make_finite_field(p, n)
    _, piv = rref_mod(_mult_subspace_basis(F), p)
    out = []
    for c in range(n * n):
        if c not in piv:
            E = np.zeros(n * n, dtype=np.int64)
            E[c] = 1
            out.append(E.reshape(n, n))
    return out


def twist_representatives(p: int, n: int) -> list[np.ndarray]:
    """One twist map per coset of F_q in Mat(n, F_p): p^(n(n-1)) matrices."""
    F = make_finite_field(p, n)
    check_cap("group_order", p ** (n * (n - 1)))
    basis = twist_splitting(p, n)
    reps = []
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        M = np.zeros((n, n), dtype=np.int64)
        for c, E in zip(coeffs, basis):
            M = M + c * E
        reps.append(M % p)
    assert len(reps) == p ** (n * (n - 1)) and F.q == p**n
    return reps


def all_twist_maps(p: int, n: int):
    """Every n x n matrix over F_p (all F_p-linear endomorphisms of F_q)."""
    for entries in itertools.product(range(p), repeat=n * n):
        yield np.array(entries, dtype=np.int64).reshape(n, n)


# -- affine groups -----------------------------------------------------------------

def sl_order(p: int, n: int) -> int:
    return p ** (n * (n - 1) // 2) * prod(p**i - 1 for i in range(2, n + 1))


def affine_group(p: int, n: int) -> ConcreteGroup:
    """F_p^n x| SL(n, F_p) with (v, M)(w, N) = (v + Mw, MN)."""
    check_cap("group_order", p**n * sl_order(p, n))
    ident = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
    gens = [AffineElement(p, n, tuple(1 if i == 0 else 0 for i in range(n)), ident)]
    for i in range(n):
        for j in range(n):
            if i != j:
                M = list(ident)
                M[i * n + j] = 1
                gens.append(AffineElement(p, n, (0,) * n, tuple(M)))
    G = generate_group(gens, name=f"Aff({p},{n})")
    if G.order != p**n * sl_order(p, n):
        raise AssertionError("affine group has the wrong order")
    G.meta.update(kind="affine", p=p, n=n)
    return G


def _affine_meta(G: ConcreteGroup):
    if G.meta.get("kind") != "affine":
        raise ValueError("group was not built by affine_group")
    return G.meta["p"], G.meta["n"]


def span(p: int, basis) -> list[tuple[int, ...]]:
    basis = [tuple(int(x) % p for x in v) for v in basis]
    if not basis:
        return []
    n = len(basis[0])
    vecs = set()
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        vecs.add(tuple(sum(c * v[i] for c, v in zip(coeffs, basis)) % p for i in range(n)))
    return sorted(vecs)


def subspace_subgroup(G: ConcreteGroup, basis) -> Subgroup:
    """Translations {(v, I) : v in span(basis)}."""
    p, n = _affine_meta(G)
    basis = [list(v) for v in basis]
    for v in basis:
        if len(v) != n:
            raise ValueError(f"vector {v} is not in F_{p}^{n}")
    if basis:
        _, piv = rref_mod(np.array(basis, dtype=np.int64), p)
        if len(piv) != len(basis):
            raise ValueError("basis vectors are linearly dependent")
    ident = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
    vecs = span(p, basis) or [(0,) * n]
    members = [G.index_of(AffineElement(p, n, v, ident)) for v in vecs]
    return Subgroup(G, members, name=f"W{len(basis)}")


def translation_subgroup(G: ConcreteGroup) -> Subgroup:
    p, n = _affine_meta(G)
    return subspace_subgroup(G, [[1 if i == j else 0 for i in range(n)] for j in range(n)])


# -- semidirect products ---------------------------------------------------------

def automorphism_from_map(A: ConcreteGroup, fn) -> FunctionPerm:
    """Index permutation of A induced by a map on carrier elements."""
    return FunctionPerm(tuple(A.index_of(fn(e)) for e in A.elements))


def linear_automorphism(A: ConcreteGroup, matrix) -> FunctionPerm:
    """Automorphism of F_p^n (built by vector_group) given by a matrix."""
    M = np.asarray(matrix, dtype=np.int64)

    def fn(e: AbelianElement):
        v = M @ np.array(e.values, dtype=np.int64)
        return AbelianElement(e.moduli, tuple(int(x) % m for x, m in zip(v, e.moduli)))

    return automorphism_from_map(A, fn)


def check_automorphism(A: ConcreteGroup, s: FunctionPerm) -> None:
    img = s.images
    if len(img) != A.order or sorted(img) != list(range(A.order)):
        raise ValueError("map is not a bijection of A")
    for g in A.gens:
        rg = A.right_gen[A.gens.index(g)]
        for x in range(A.order):
            if img[int(rg[x])] != A.mul(img[x], img[g]):
                raise ValueError("map is not a homomorphism of A")


def semidirect_product(A: ConcreteGroup, theta) -> ConcreteGroup:
    """A x| <theta> for an abelian A and automorphisms theta (index permutations)."""
    if not A.is_abelian():
        raise ValueError("A must be abelian")
    return _extension(A, theta, name=f"{A.name}x|Theta")


def _extension(A: ConcreteGroup, theta, name: str) -> ConcreteGroup:
    theta = list(theta)
    for s in theta:
        check_automorphism(A, s)
    ident_s = FunctionPerm(tuple(range(A.order)))
    Theta = generate_group(theta, identity=ident_s, name="Theta", check=False)
    check_cap("group_order", A.order * Theta.order)
    gens = [SemidirectElement(A, g, ident_s) for g in A.gens]
    gens += [SemidirectElement(A, 0, s) for s in theta]
    G = generate_group(gens, identity=SemidirectElement(A, 0, ident_s), name=name)
    if G.order != A.order * Theta.order:
        raise AssertionError("semidirect product has the wrong order")
    G.meta.update(kind="semidirect", A=A, theta_order=Theta.order)
    return G


def normal_base_subgroup(G: ConcreteGroup) -> Subgroup:
    """The copy of A inside A x| theta."""
    if G.meta.get("kind") != "semidirect":
        raise ValueError("group was not built by semidirect_product")
    A = G.meta["A"]
    ident_s = FunctionPerm(tuple(range(A.order)))
    return Subgroup(G, [G.index_of(SemidirectElement(A, a, ident_s)) for a in range(A.order)], name="A")

from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import sympy_charpoly
from sunada.algebra.finite_field import (FiniteField, is_irreducible_mod_p, least_irreducible,
                                         make_finite_field)
from sunada.algebra.linalg import (bareiss_det, berkowitz_charpoly, integer_charpoly,
                                   multimodular_charpoly, nullspace_mod, rref_mod)
from sunada.algebra.number_field import NumberField, sign_at_embedding
from sunada.algebra.polynomials import IntegerPolynomial, is_squarefree, poly_radical
from sunada.algebra.real_roots import count_real_roots, isolate_real_roots, sign_at_root
from sunada.config import CapExceeded, caps_override

FIELDS = [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (5, 2), (2, 4)]


@pytest.mark.parametrize("p,n,mod", [(2, 2, (1, 1, 1)), (3, 2, (1, 0, 1)), (3, 1, (0, 1)), (2, 3, (1, 1, 0, 1))])
def test_least_irreducible_modulus(p, n, mod):
    assert least_irreducible(p, n) == mod
    assert make_finite_field(p, n).modulus == mod


@pytest.mark.parametrize("p,n", FIELDS)
def test_irreducibility_against_sympy(p, n):
    x = sympy.Symbol("x")
    f = least_irreducible(p, n)
    assert sympy.Poly(list(reversed(f)), x, modulus=p).is_irreducible
    assert is_irreducible_mod_p(list(f), p)


@pytest.mark.parametrize("p,n", FIELDS)
def test_field_axioms_and_multiplication_oracle(p, n):
    F = make_finite_field(p, n)
    x = sympy.Symbol("x")
    mod = sympy.Poly(list(reversed(F.modulus)), x, modulus=p)
    rng = np.random.default_rng(p * 10 + n)
    for _ in range(60):
        a, b, c = (int(v) for v in rng.integers(0, F.q, 3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        pa = sympy.Poly(list(reversed(F.coeffs(a))), x, modulus=p)
        pb = sympy.Poly(list(reversed(F.coeffs(b))), x, modulus=p)
        prod = (pa * pb).rem(mod)
        coeffs = [int(v) % p for v in reversed(prod.all_coeffs())]
        assert F.mul(a, b) == F.from_coeffs(coeffs + [0] * (n - len(coeffs)))
        if a:
            assert F.mul(a, F.inv(a)) == 1
    # Frobenius is additive and multiplicative
    for a in range(min(F.q, 50)):
        assert F.frobenius(F.mul(a, a)) == F.mul(F.frobenius(a), F.frobenius(a))


@pytest.mark.parametrize("p,n", FIELDS)
def test_multiplication_matrix_is_linear_map(p, n):
    F = make_finite_field(p, n)
    for c in range(min(F.q, 20)):
        M = F.mul_matrix(c)
        for a in range(min(F.q, 20)):
            assert F.apply_linear(M, a) == F.mul(c, a)


def test_field_cap():
    with caps_override(field_size=16):
        with pytest.raises(CapExceeded):
            FiniteField(2, 5)


@st.composite
def int_matrices(draw, max_n=6, lo=-5, hi=5):
    n = draw(st.integers(1, max_n))
    return [[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(n)]


@given(int_matrices())
def test_berkowitz_matches_sympy(M):
    assert list(berkowitz_charpoly(M).coeffs) == sympy_charpoly(M)


@given(int_matrices(max_n=5))
def test_charpoly_constant_term_is_signed_determinant(M):
    n = len(M)
    assert berkowitz_charpoly(M).coeffs[0] == (-1) ** n * bareiss_det(M)
    assert bareiss_det(M) == int(sympy.Matrix(M).det())


def test_multimodular_matches_berkowitz():
    rng = np.random.default_rng(7)
    for n in (3, 10, 20, 30):
        M = rng.integers(-3, 4, size=(n, n)).tolist()
        assert multimodular_charpoly(M) == berkowitz_charpoly(M)
    M = rng.integers(0, 3, size=(40, 40))
    M = (M + M.T).tolist()
    assert integer_charpoly(M) == berkowitz_charpoly(M)


def test_charpoly_examples():
    # adjacency of the 3-cycle
    A = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    assert integer_charpoly(A).coeffs == (-2, -3, 0, 1)
    assert poly_radical(integer_charpoly(A)).coeffs == (-2, -1, 1)
    assert integer_charpoly([[5]]).coeffs == (-5, 1)


def test_charpoly_dimension_cap():
    with caps_override(matrix_dim=4):
        with pytest.raises(CapExceeded):
            integer_charpoly(np.eye(5, dtype=int).tolist())


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=6))
def test_radical_is_squarefree_and_shares_roots(coeffs):
    f = IntegerPolynomial(coeffs)
    if f.degree < 1:
        return
    r = poly_radical(f)
    assert is_squarefree(r)
    x = sympy.Symbol("x")
    pf = sympy.Poly(list(reversed(f.coeffs)), x)
    pr = sympy.Poly(list(reversed(r.coeffs)), x)
    assert set(sympy.roots(pf, multiple=False)) == set(sympy.roots(pr, multiple=False)) or \
        pf.degree() > 4


def test_rref_and_nullspace_mod():
    A = np.array([[1, 2, 0], [2, 4, 0], [0, 0, 1]])
    R, piv = rref_mod(A, 5)
    assert piv == [0, 2]
    N = nullspace_mod(A, 5)
    assert N.shape[1] == 1
    assert not ((A @ N) % 5).any()


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4))
def test_isolation_matches_numpy(roots):
    roots = sorted(set(roots))
    f = IntegerPolynomial([1])
    for r in roots:
        f = f * IntegerPolynomial([-r, 1])
    f = f * IntegerPolynomial([-2, 0, 1])  # adds +-sqrt 2
    emb = isolate_real_roots(f)
    approx = sorted([float(r) for r in roots] + [2**0.5, -(2**0.5)])
    assert len(emb) == len(approx)
    for e, r in zip(emb, approx):
        assert abs(e.approx() - r) < 1e-9


def test_count_real_roots_and_signs():
    f = IntegerPolynomial([-2, 0, 1])
    assert count_real_roots(f, Fraction(-2), Fraction(2)) == 2
    assert count_real_roots(f, Fraction(0), Fraction(2)) == 1
    lo, hi = isolate_real_roots(f)
    assert sign_at_root([0, 1], hi) == 1 and sign_at_root([0, 1], lo) == -1
    assert sign_at_root([-2, 0, 1], hi) == 0


def test_number_field_embeddings_descending():
    K = NumberField([-2, 0, 1])
    assert (K.r1, K.r2) == (2, 0)
    s2 = K.gen
    assert [sign_at_embedding(-s2, e) for e in K.real_embeddings] == [-1, 1]
    assert [sign_at_embedding(s2 - 2, e) for e in K.real_embeddings] == [-1, -1]
    assert NumberField([1, 0, 1]).r2 == 1
    assert NumberField([0, 1]).is_rationals


def test_number_field_rejects_reducible():
    with pytest.raises(ValueError):
        NumberField([-1, 0, 1])
    with pytest.raises(ValueError):
        NumberField([1, 2, 1])


@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3),
       st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_number_field_arithmetic(a, b):
    K = NumberField([-2, 0, 0, 1])  # cube root of 2
    x, y = K(a), K(b)
    assert (x + y) * (x - y) == x * x - y * y
    if not y.is_zero():
        assert (x / y) * y == x
    e = K.real_embeddings[0]
    for z in (x, y, x * y):
        if not z.is_zero():
            assert sign_at_embedding(z, e) == (1 if z.conjugate_value(e) > 0 else -1)

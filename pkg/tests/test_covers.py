import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_necklaces, sympy_charpoly
from sunada.constructions import affine_group, cyclic_group, subspace_subgroup, symmetric_group
from sunada.covers import (MODES, CutoffMismatch, FreeWord, GrowthBoundError, Homomorphism,
                           compare_spectra, completeness_floor, cover_trace_spectrum,
                           cyclic_classes, default_homomorphism, homomorphism_meeting,
                           min_hyperbolic_traces_at, power_trace, schreier_adjacency,
                           schreier_spectrum_compare, trace_lower_bound, word_matrix)
from sunada.groups import coset_table, subgroup_from, trivial_subgroup, whole_group
from sunada.groups.core import Subgroup


def matpow_trace(M, m):
    R = np.eye(2, dtype=object)
    A = np.array(M, dtype=object)
    for _ in range(m):
        R = R.dot(A)
    return int(R[0, 0] + R[1, 1])


def test_length_one_and_two_classes():
    one = cyclic_classes(1)
    assert sorted(str(c.canonical) for c in one) == ["A", "B", "a", "b"]
    assert all(c.primitive for c in one)
    two = [c for c in cyclic_classes(2) if c.length == 2]
    assert sorted(str(c.canonical) for c in two) == sorted(["aa", "AA", "bb", "BB", "ab", "aB", "Ab", "AB"])
    prim = [c for c in cyclic_classes(2, primitive_only=True) if c.length == 2]
    assert sorted(str(c.canonical) for c in prim) == sorted(["ab", "aB", "Ab", "AB"])


@pytest.mark.parametrize("n", range(1, 8))
def test_necklaces_match_brute_force(n):
    ours = {c.canonical.letters for c in cyclic_classes(n) if c.length == n}
    assert ours == brute_necklaces(n)


def test_cyclic_classes_rejects_zero():
    with pytest.raises(ValueError):
        cyclic_classes(0)


def test_word_parsing_and_reduction():
    assert str(FreeWord.parse("aAb")) == "b"
    assert str(FreeWord.parse("")) == "1"
    assert str(FreeWord.parse("aB").inverse()) == "bA"
    assert str(FreeWord.parse("ab").power(3)) == "ababab"
    with pytest.raises(ValueError):
        FreeWord.parse("ax")
    with pytest.raises(ValueError):
        FreeWord((0, 1))


def test_word_matrix_examples():
    assert word_matrix(FreeWord(())) == (((1, 0), (0, 1)), 2)
    assert word_matrix(FreeWord.parse("ab")) == (((5, 2), (2, 1)), 6)
    assert word_matrix(FreeWord.parse("a"))[1] == 2
    M, _ = word_matrix(FreeWord.parse("aA" "bB"))
    assert M == ((1, 0), (0, 1))


def test_power_trace_matches_direct_powering():
    rng = random.Random(7)
    for _ in range(500):
        s = "".join(rng.choice("aAbB") for _ in range(rng.randint(1, 10)))
        M, t = word_matrix(FreeWord.parse(s))
        for m in range(0, 11):
            assert power_trace(t, m) == matpow_trace(M, m)


def test_growth_bound_and_floor():
    for n in range(2, 12):
        assert min_hyperbolic_traces_at(n) >= trace_lower_bound(n)
    assert min_hyperbolic_traces_at(7) == 14  # a(aB)^3
    assert completeness_floor(8) == 18
    assert completeness_floor(8) == min_hyperbolic_traces_at(9)
    assert isinstance(GrowthBoundError("x"), AssertionError)


def test_z2_double_cover_example():
    G = cyclic_group(2)
    phi = Homomorphism(G, 1, 0)
    H = trivial_subgroup(G)
    x = phi(FreeWord.parse("ab"))
    assert coset_table(G, H).orbit_sizes(x) == [2]
    assert power_trace(6, 2) == 34
    S = cover_trace_spectrum(G, H, phi, 2)
    assert S.primitive[34] >= 1 and S.degree == 2


def test_degree_one_cover_is_base_spectrum():
    G = cyclic_group(3)
    phi = default_homomorphism(G)
    S = cover_trace_spectrum(G, whole_group(G), phi, 5)
    base = Counter(abs(word_matrix(c.canonical)[1]) for c in cyclic_classes(5, primitive_only=True))
    base = Counter({t: m for t, m in base.items() if t > 2})
    assert S.primitive == base
    assert min(S.primitive) >= 3


def test_non_generating_phi_rejected():
    G = symmetric_group(3)
    with pytest.raises(ValueError):
        Homomorphism(G, 0, 0)
    with pytest.raises(ValueError):
        Homomorphism(G, 0, 99)


def test_identical_spectra_equal_in_every_mode_and_cutoff_mismatch():
    G = symmetric_group(3)
    H = subgroup_from(G, [1])
    phi = default_homomorphism(G)
    S1 = cover_trace_spectrum(G, H, phi, 6)
    for mode in MODES:
        assert compare_spectra(S1, S1, mode).equal
    with pytest.raises(CutoffMismatch):
        compare_spectra(S1, cover_trace_spectrum(G, H, phi, 5), "set_all")
    with pytest.raises(ValueError):
        compare_spectra(S1, S1, "bogus")


def test_orbit_partition_and_primitivity_preservation():
    G = affine_group(3, 2)
    H = subspace_subgroup(G, [[1, 0]])
    phi = default_homomorphism(G)
    ct = coset_table(G, H)
    rng = random.Random(3)
    classes = cyclic_classes(6, primitive_only=True)
    for c in rng.sample(classes, 40):
        x = phi(c.canonical)
        act = ct.action(x)
        assert sum(ct.orbit_sizes(x)) == ct.size
        for start in rng.sample(range(ct.size), 5):
            # orbit size m: no proper power x^j with j < m fixes the coset
            m, pos = 1, int(act[start])
            while pos != start:
                pos, m = int(act[pos]), m + 1
            for j in range(1, m):
                assert int(ct.action(G.power(x, j))[start]) != start


@given(st.text(alphabet="aAbB", min_size=1, max_size=6), st.text(alphabet="aAbB", min_size=1, max_size=6))
def test_cyclic_subgroups_of_non_commuting_words_meet_trivially(s, t):
    u, v = FreeWord.parse(s), FreeWord.parse(t)
    if not len(u) or not len(v):
        return
    if FreeWord.parse(str(u) + str(v)) == FreeWord.parse(str(v) + str(u)):
        return
    pu = {FreeWord.parse(str(u) * i) for i in range(1, 7)} | {FreeWord.parse(str(u.inverse()) * i) for i in range(1, 7)}
    pv = {FreeWord.parse(str(v) * i) for i in range(1, 7)} | {FreeWord.parse(str(v.inverse()) * i) for i in range(1, 7)}
    assert not (pu & pv)


def test_schreier_examples():
    G = cyclic_group(2)
    assert schreier_adjacency(G, trivial_subgroup(G), [1, 1]).tolist() == [[0, 2], [2, 0]]
    S3 = symmetric_group(3)
    S = [g for g in S3.gens] + [int(S3.inv[g]) for g in S3.gens]
    assert schreier_adjacency(S3, whole_group(S3), S).tolist() == [[len(S)]]
    A = affine_group(3, 2)
    V = subspace_subgroup(A, [[1, 0]])
    gens = A.gens[:2]
    SA = list(gens) + [int(A.inv[g]) for g in gens]
    if subgroup_from(A, SA).order != A.order:
        SA = list(A.gens) + [int(A.inv[g]) for g in A.gens]
    M = schreier_adjacency(A, V, SA)
    assert M.shape == (72, 72) and (M.sum(axis=1) == len(SA)).all()


def test_schreier_errors():
    G = symmetric_group(3)
    g = [x for x in range(G.order) if G.element_order(x) == 3][0]
    with pytest.raises(ValueError):
        schreier_adjacency(G, trivial_subgroup(G), [g])  # not symmetric
    with pytest.raises(ValueError):
        schreier_adjacency(G, trivial_subgroup(G), [g, int(G.inv[g])])  # does not generate


def test_schreier_charpoly_matches_sympy_and_self_compare():
    G = symmetric_group(4)
    H = subgroup_from(G, [1])
    S = list(G.gens) + [int(G.inv[g]) for g in G.gens]
    A = schreier_adjacency(G, H, S)
    from sunada.algebra.linalg import integer_charpoly
    assert list(integer_charpoly(A).coeffs) == sympy_charpoly(A.tolist())
    for mode in ("multiset", "set"):
        assert schreier_spectrum_compare(G, H, H, S, mode).equal
    with pytest.raises(ValueError):
        schreier_spectrum_compare(G, H, H, S, "bogus")

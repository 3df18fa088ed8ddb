import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_classes, brute_conjugate, brute_core, brute_counts
from sunada.config import CapExceeded, caps_override
from sunada.constructions import (dihedral_group, heisenberg_group, quaternion_group,
                                  symmetric_group)
from sunada.groups import (Perm, are_subgroups_conjugate, class_intersection_counts,
                           conjugacy_classes, coset_table, normal_core, subgroup_from)
from sunada.groups.characters import character_table, fixed_space_dim, spade_profile
from sunada.groups.core import Subgroup, all_subgroups, generate_group, trivial_subgroup, whole_group

SMALL = [symmetric_group(3), dihedral_group(4), quaternion_group(), symmetric_group(4),
         heisenberg_group(2, 1), heisenberg_group(3, 1)]


def perm(G, n, *cycles):
    return G.index_of(Perm.from_cycles(n, *cycles))


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_multiplication_matches_carrier(G):
    els = G.elements
    for a in range(G.order):
        for b in range(0, G.order, 3):
            assert G.mul(a, b) == G.index_of(els[a] * els[b])
    assert G.index_of(els[0].identity()) == 0
    G.check_associativity(samples=200)


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_classes_match_brute_force(G):
    cc = conjugacy_classes(G)
    classes, _ = brute_classes(G)
    assert sorted(map(tuple, classes)) == sorted(tuple(cc.members(c).tolist()) for c in range(cc.count))
    for c in range(cc.count):
        w, rep = cc.witness[c], cc.reps[c]
        for x in cc.members(c)[:5]:
            # the witness conjugates the representative to the member
            g = int(cc.witness[x])
            assert G.mul_many(int(G.inv[g]), int(rep), g) == x


def test_known_orders_and_class_counts():
    S6 = symmetric_group(6)
    assert (S6.order, conjugacy_classes(S6).count) == (720, 11)
    assert [symmetric_group(n).order for n in (3, 4, 5)] == [6, 24, 120]
    assert dihedral_group(4).order == 8 and quaternion_group().order == 8
    assert conjugacy_classes(quaternion_group()).count == 5


def test_element_lookup_error():
    G = symmetric_group(3)
    with pytest.raises(KeyError):
        G.index_of(Perm.from_cycles(4, (1, 2)))


def test_group_order_cap():
    with caps_override(group_order=50):
        with pytest.raises(CapExceeded):
            symmetric_group(5)


def test_subgroup_rejects_non_closed():
    G = symmetric_group(3)
    with pytest.raises(ValueError):
        Subgroup(G, [0, perm(G, 3, (1, 2, 3))])


@pytest.mark.parametrize("G", SMALL[:5], ids=lambda G: G.name)
def test_conjugacy_and_core_match_brute_force(G):
    subs = all_subgroups(G)
    for H in subs:
        assert set(normal_core(G, H).members.tolist()) == brute_core(G, H)
        ct = coset_table(G, H)
        assert ct.size == G.order // H.order
        for x in range(0, G.order, 5):
            assert sum(ct.orbit_sizes(x)) == ct.size
    for H in subs:
        for K in subs:
            if H.order == K.order:
                ok, w = are_subgroups_conjugate(G, H, K)
                assert ok == brute_conjugate(G, H, K)
                if ok:
                    assert np.array_equal(H.conjugate(w).members, K.members)


@pytest.mark.parametrize("G", SMALL[:5], ids=lambda G: G.name)
def test_intersection_counts_match_brute_force(G):
    for H in all_subgroups(G):
        counts, seen = brute_counts(G, H.members)
        fast = class_intersection_counts(G, H.members)
        cc = conjugacy_classes(G)
        for c in range(cc.count):
            brute_id = seen[int(cc.reps[c])]
            assert fast[c] == counts.get(brute_id, 0)
        assert fast.sum() == H.order


KNOWN_DEGREES = {"S3": [1, 1, 2], "D4": [1, 1, 1, 1, 2], "Q8": [1, 1, 1, 1, 2],
                 "S4": [1, 1, 2, 3, 3], "S6": [1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16]}


@pytest.mark.parametrize("name,G", [("S3", symmetric_group(3)), ("D4", dihedral_group(4)),
                                    ("Q8", quaternion_group()), ("S4", symmetric_group(4)),
                                    ("S6", symmetric_group(6))])
def test_character_table_degrees_and_orthogonality(name, G):
    t = character_table(G)
    assert sorted(t.degrees) == KNOWN_DEGREES[name]
    assert t.degrees[0] == 1 and (t.values[0] == 1).all()
    assert sum(d * d for d in t.degrees) == G.order
    for i in range(t.count):
        for j in range(t.count):
            assert t.inner_product(t.values[i], t.values[j]) == (1 if i == j else 0)


def test_s3_character_values():
    G = symmetric_group(3)
    t = character_table(G)
    cc = conjugacy_classes(G)
    r = t.prime
    sign_row = [row for row, d in zip(t.values, t.degrees) if d == 1 and (row != 1).any()][0]
    t_idx = cc.class_of[perm(G, 3, (1, 2))]
    assert int(sign_row[t_idx]) == r - 1  # -1 mod r


def test_fixed_space_dims():
    G = symmetric_group(3)
    t = character_table(G)
    assert spade_profile(G, trivial_subgroup(G)) == list(t.degrees)
    assert spade_profile(G, whole_group(G)) == [1] + [0] * (t.count - 1)
    K = subgroup_from(G, [perm(G, 3, (1, 2, 3))])
    assert fixed_space_dim(G, 0, K) == 1
    assert sum(fixed_space_dim(G, i, K) * t.degrees[i] for i in range(t.count)) == G.order // K.order


@given(st.integers(0, 23), st.integers(0, 23))
def test_subgroup_generation_is_closed(a, b):
    G = SMALL[3]
    H = subgroup_from(G, [a, b])
    Subgroup(G, H.members)  # verifies closure
    assert G.order % H.order == 0


def test_generate_group_from_matrices_is_deterministic():
    G1, G2 = symmetric_group(5), symmetric_group(5)
    assert G1.content_hash == G2.content_hash
    assert G1.exponent == 60

import json
import random

import pytest

from sunada.certifiers import (Certificate, certify, certify_almost_conjugate,
                               certify_elementwise_conjugate, certify_fixed_point_equivalent,
                               certify_primitive, recheck)
from sunada.constructions import (affine_group, dihedral_group, heisenberg_group,
                                  quaternion_group, subspace_subgroup, symmetric_group,
                                  translation_subgroup, twist_representatives, twisted_horizontal)
from sunada.groups import Perm, are_subgroups_conjugate, subgroup_from
from sunada.groups.characters import spade_profile
from sunada.groups.core import all_subgroups


def sub(G, n, *gens):
    return subgroup_from(G, [G.index_of(Perm.from_cycles(n, *g)) for g in gens])


def s6_pair():
    G = symmetric_group(6)
    H = sub(G, 6, [(1, 2), (3, 4)], [(1, 3), (2, 4)])
    K = sub(G, 6, [(1, 2), (3, 4)], [(1, 2), (5, 6)])
    return G, H, K


def test_identical_subgroups_certify_everything():
    G = symmetric_group(4)
    H = sub(G, 4, [(1, 2, 3)])
    for rel in ("almost_conjugate", "elementwise_conjugate", "fixed_point_equivalent"):
        assert certify(rel, G, H, H).verdict


def test_s6_gassmann_pair():
    G, H, K = s6_pair()
    c = certify_almost_conjugate(G, H, K)
    assert c.verdict and len(c.evidence["counts_H"]) == 11
    assert not are_subgroups_conjugate(G, H, K)[0]
    assert spade_profile(G, H) == spade_profile(G, K)


def test_s3_transposition_vs_rotation():
    G = symmetric_group(3)
    H, K = sub(G, 3, [(1, 2)]), sub(G, 3, [(1, 2, 3)])
    assert not certify_elementwise_conjugate(G, H, K).verdict
    assert not certify_fixed_point_equivalent(G, H, K).verdict


def test_heisenberg_twists_are_almost_conjugate():
    G = heisenberg_group(2, 2)
    subs = [twisted_horizontal(G, f) for f in twist_representatives(2, 2)]
    profiles = [spade_profile(G, H) for H in subs]
    for H in subs:
        assert certify_almost_conjugate(G, subs[0], H).verdict
        assert certify_fixed_point_equivalent(G, subs[0], H).verdict
    assert all(p == profiles[0] for p in profiles)


def test_affine_examples():
    G = affine_group(3, 2)
    V, W = subspace_subgroup(G, [[1, 0]]), translation_subgroup(G)
    assert certify_elementwise_conjugate(G, V, W).verdict
    assert certify_primitive(G, V).verdict
    c = certify_primitive(G, W)
    assert not c.verdict and c.evidence["core_order"] == 9


def test_primitive_fails_on_mixed_orders():
    G = symmetric_group(4)
    H = sub(G, 4, [(1, 2, 3, 4)])  # orders 2 and 4
    c = certify_primitive(G, H)
    assert not c.verdict
    assert [o for o, _ in c.evidence["order_histogram"]] == [2, 4]


CORPUS = [symmetric_group(3), dihedral_group(4), quaternion_group(), symmetric_group(4),
          heisenberg_group(2, 1)]


@pytest.mark.parametrize("G", CORPUS, ids=lambda G: G.name)
def test_implications_and_rechecks(G):
    subs = all_subgroups(G)
    for H in subs:
        for K in subs:
            ac = certify_almost_conjugate(G, H, K)
            ec = certify_elementwise_conjugate(G, H, K)
            fpe = certify_fixed_point_equivalent(G, H, K)
            if ac.verdict:
                assert ec.verdict and fpe.verdict and H.order == K.order
            for c in (ac, ec, fpe):
                assert recheck(c) == c.verdict
                assert recheck(json.loads(json.dumps(c.to_json()))) == c.verdict


def test_fpe_and_ec_strictly_weaker():
    G = affine_group(2, 3)
    V = subspace_subgroup(G, [[1, 0, 0]])
    W = subspace_subgroup(G, [[1, 0, 0], [0, 1, 0]])
    assert certify_fixed_point_equivalent(G, V, W).verdict
    assert certify_elementwise_conjugate(G, V, W).verdict
    assert not certify_almost_conjugate(G, V, W).verdict


def test_certificate_json_roundtrip():
    G, H, K = s6_pair()
    c = certify_almost_conjugate(G, H, K)
    d = c.to_json()
    assert d["group_hash"] == G.content_hash
    assert Certificate.from_json(d).evidence == c.evidence


def test_tampered_evidence_changes_recheck():
    G, H, K = s6_pair()
    d = certify_almost_conjugate(G, H, K).to_json()
    d["evidence"]["counts_K"][1] += 1
    assert recheck(d) is False


def test_cross_group_subgroups_rejected():
    G, H, _ = s6_pair()
    G2 = symmetric_group(3)
    with pytest.raises(ValueError):
        certify_almost_conjugate(G2, H, H)

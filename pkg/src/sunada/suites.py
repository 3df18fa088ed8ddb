"""End-to-end verification suites for the Heisenberg twists and affine groups."""
from __future__ import annotations

import numpy as np

from .certifiers import (certify_almost_conjugate, certify_elementwise_conjugate,
                         certify_fixed_point_equivalent, certify_primitive, recheck)
from .constructions import (affine_group, all_twist_maps, heisenberg_group, subspace_subgroup,
                            twist_representatives, twisted_horizontal)
from .groups.classes import class_intersection_counts
from .groups.cosets import are_subgroups_conjugate, conjugacy_orbit


def _labels(G, subs) -> list[bytes]:
    """Canonical conjugacy label of each subgroup, one orbit walk per class."""
    cache: dict[bytes, bytes] = {}
    out = []
    for H in subs:
        key = H.members.tobytes()
        if key not in cache:
            seen, _ = conjugacy_orbit(G, H)
            label = min(seen)
            for k in seen:
                cache[k] = label
        out.append(cache[key])
    return out


def twist_lemma_suite(p: int, n: int) -> dict:
    """For every pair (f, g) of F_p-linear endomorphisms of F_q: the twisted
    horizontal subgroups are almost conjugate, and conjugate iff f - g is a
    multiplication operator.  The number of conjugacy classes must be p^(n(n-1))."""
    G = heisenberg_group(p, n)
    F = G.meta["field"]
    maps = list(all_twist_maps(p, n))
    subs = [twisted_horizontal(G, f) for f in maps]

    counts = np.array([class_intersection_counts(G, H.members) for H in subs])
    all_ac = bool((counts == counts[0]).all())

    labels = _labels(G, subs)
    mult = np.array([F.mul_matrix(c) % p for c in range(F.q)])
    stack = np.array(maps) % p
    mismatches = 0
    pairs = 0
    for i in range(len(maps)):
        diff = (stack[i] - stack) % p
        c = np.array([F.from_coeffs(d[:, 0]) for d in diff])
        is_mult = (mult[c] == diff).all(axis=(1, 2))
        conj = np.array([labels[i] == labels[j] for j in range(len(maps))])
        mismatches += int((is_mult != conj).sum())
        pairs += len(maps)

    reps = twist_representatives(p, n)
    rep_subs = [twisted_horizontal(G, f) for f in reps]
    rep_labels = _labels(G, rep_subs)
    reps_distinct = len(set(rep_labels)) == len(reps)
    # spot-check the label route against an explicit conjugating witness
    witness_ok = True
    for j, H in enumerate(subs[:8]):
        same = labels[0] == labels[j]
        ok, w = are_subgroups_conjugate(G, subs[0], H)
        witness_ok &= ok == same

    expected = p ** (n * (n - 1))
    classes = len(set(labels))
    confirmed = all_ac and mismatches == 0 and classes == expected and reps_distinct and witness_ok
    return {"p": p, "n": n, "group_order": G.order, "group_hash": G.content_hash,
            "twist_maps": len(maps), "pairs_checked": pairs, "all_pairs_almost_conjugate": all_ac,
            "conjugacy_vs_multiplication_mismatches": mismatches,
            "conjugacy_classes": classes, "expected_classes": expected,
            "representatives_pairwise_nonconjugate": reps_distinct,
            "witness_spot_check": witness_ok, "confirmed": confirmed}


def default_affine_pairs(n: int) -> list[tuple[list[list[int]], list[list[int]]]]:
    e = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    pairs = [([e[0]], e[:n])]  # line vs full translation subgroup
    if n >= 3:
        pairs.insert(0, ([e[0]], e[:2]))  # line vs plane
    return pairs


def affine_suite(p: int, n: int, pairs=None) -> dict:
    """EC, FPE (proper subspaces), primitivity and non-AC (unequal orders)
    for subspace pairs of F_p^n x| SL(n, F_p)."""
    G = affine_group(p, n)
    pairs = pairs if pairs is not None else default_affine_pairs(n)
    rows = []
    confirmed = True
    for V_basis, W_basis in pairs:
        V, W = subspace_subgroup(G, V_basis), subspace_subgroup(G, W_basis)
        ec = certify_elementwise_conjugate(G, V, W)
        fpe = certify_fixed_point_equivalent(G, V, W)
        ac = certify_almost_conjugate(G, V, W)
        prim = [certify_primitive(G, S) for S in (V, W)]
        proper = [len(b) < n for b in (V_basis, W_basis)]
        expect = {"elementwise_conjugate": True,
                  "fixed_point_equivalent": True if all(proper) else None,
                  "almost_conjugate": False if V.order != W.order else None,
                  "primitive": [True if pr else False for pr in proper]}
        got = {"elementwise_conjugate": ec.verdict, "fixed_point_equivalent": fpe.verdict,
               "almost_conjugate": ac.verdict, "primitive": [c.verdict for c in prim]}
        ok = all(expect[k] is None or expect[k] == got[k] for k in expect)
        ok &= all(recheck(c) == c.verdict for c in (ec, fpe, ac, *prim))
        confirmed &= ok
        rows.append({"V": V_basis, "W": W_basis, "orders": [V.order, W.order],
                     "indices": [V.index, W.index], "expected": expect, "verdicts": got,
                     "certificates": [c.to_json() for c in (ec, fpe, ac, *prim)], "confirmed": ok})
    return {"p": p, "n": n, "group_order": G.order, "group_hash": G.content_hash,
            "pairs": rows, "confirmed": confirmed}

"""Right coset tables Hg with right-multiplication action, normal cores and
subgroup conjugacy."""
from __future__ import annotations

from functools import cached_property

import numpy as np

from .classes import class_intersection_counts
from .core import ConcreteGroup, Subgroup


class CosetTable:
    """Right cosets Hg, labelled by their least element index."""

    def __init__(self, G: ConcreteGroup, H: Subgroup):
        if H.parent is not G:
            raise ValueError("H is not a subgroup of G")
        self.group, self.subgroup = G, H
        T = G.table
        if T is not None:
            rep_of = T[H.members, :].min(axis=0).astype(np.int64)
        else:
            rep_of = np.full(G.order, G.order, dtype=np.int64)
            for h in H.members:
                rep_of = np.minimum(rep_of, G.left_mult(int(h)))
        self.reps, self.coset_of = np.unique(rep_of, return_inverse=True)
        self.coset_of = self.coset_of.astype(np.int64)
        if self.reps.size * H.order != G.order:
            raise AssertionError("coset count does not match the index")

    @property
    def size(self) -> int:
        return int(self.reps.size)

    def action(self, x: int) -> np.ndarray:
        """Permutation c -> c.x of the cosets."""
        G = self.group
        T = G.table
        if T is not None:
            return self.coset_of[T[self.reps, x]]
        return self.coset_of[G.right_mult(x)[self.reps]]

    def orbit_sizes(self, x: int) -> list[int]:
        """Cycle lengths of x acting on the cosets, sorted."""
        perm = self.action(x)
        seen = np.zeros(perm.size, dtype=bool)
        out = []
        for c in range(perm.size):
            if seen[c]:
                continue
            n, d = 0, c
            while not seen[d]:
                seen[d] = True
                d = perm[d]
                n += 1
            out.append(n)
        return sorted(out)

    @cached_property
    def all_actions(self) -> np.ndarray:
        """A[x, c] = coset of (rep_c * x), for every group element x."""
        G = self.group
        T = G.table
        if T is not None:
            return self.coset_of[T[self.reps, :]].T.copy()
        return np.stack([self.action(x) for x in range(G.order)])

    def to_json(self) -> dict:
        return {"subgroup": self.subgroup.content_hash, "cosets": self.reps.tolist()}


def coset_table(G: ConcreteGroup, H: Subgroup) -> CosetTable:
    cache = H.__dict__.setdefault("_coset_table", None)
    if cache is None:
        cache = CosetTable(G, H)
        H.__dict__["_coset_table"] = cache
    return cache


def normal_core(G: ConcreteGroup, H: Subgroup) -> Subgroup:
    """Intersection of all conjugates of H = kernel of the action on H\\G."""
    ct = coset_table(G, H)
    ident = np.arange(ct.size)
    T = G.table
    if T is not None:
        acts = ct.coset_of[T[ct.reps][:, H.members]]  # cosets x |H|
        keep = (acts == ident[:, None]).all(axis=0)
        members = H.members[keep]
    else:
        members = [h for h in H.members if np.array_equal(ct.action(int(h)), ident)]
    core = Subgroup(G, members, check=False, name=f"core({H.name})")
    if not core.is_normal():
        raise AssertionError("normal core is not normal")
    return core


def conjugacy_orbit(G: ConcreteGroup, H: Subgroup, stop_at: Subgroup | None = None):
    """BFS over conjugates g^-1 H g using generator conjugations.

    Returns (conjugates keyed by member bytes -> witness g, found witness or None).
    Each conjugate is visited once, so g effectively runs over one element per
    right coset of the normalizer.
    """
    target = stop_at.members.tobytes() if stop_at is not None else None
    start = H.members
    seen = {start.tobytes(): 0}
    if target is not None and target in seen:
        return seen, 0
    frontier = [(start, 0)]
    conj = G.gen_conjugations
    while frontier:
        nxt = []
        for members, w in frontier:
            for s, perm in enumerate(conj):
                m = np.sort(perm[members])
                key = m.tobytes()
                if key in seen:
                    continue
                w2 = int(G.right_gen[s][w])
                seen[key] = w2
                if key == target:
                    return seen, w2
                nxt.append((m, w2))
        frontier = nxt
    return seen, None


def are_subgroups_conjugate(G: ConcreteGroup, H: Subgroup, K: Subgroup) -> tuple[bool, int | None]:
    """(True, g) with g^-1 H g = K, or (False, None)."""
    if H.order != K.order:
        return False, None
    if not np.array_equal(class_intersection_counts(G, H.members),
                          class_intersection_counts(G, K.members)):
        return False, None
    _, w = conjugacy_orbit(G, H, stop_at=K)
    if w is None:
        return False, None
    if not np.array_equal(H.conjugate(w).members, K.members):
        raise AssertionError("conjugacy witness failed re-check")
    return True, w


def conjugacy_label(G: ConcreteGroup, H: Subgroup) -> bytes:
    """Canonical label of the conjugacy class of H (least member array)."""
    seen, _ = conjugacy_orbit(G, H)
    return min(seen)


def normalizer(G: ConcreteGroup, H: Subgroup) -> Subgroup:
    mask = H.mask
    members = [g for g in range(G.order) if mask[G.conj_action(g)[H.members]].all()]
    return Subgroup(G, members, check=False, name=f"N({H.name})")

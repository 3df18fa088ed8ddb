"""Conjugacy classes as orbits of the generator conjugation permutations."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConcreteGroup


@dataclass(frozen=True)
class ConjugacyClassPartition:
    class_of: np.ndarray     # element index -> class id
    reps: np.ndarray         # class id -> representative (least index)
    sizes: np.ndarray
    witness: np.ndarray      # witness[x] = w with w^-1 * rep * w = x

    @property
    def count(self) -> int:
        return int(self.reps.size)

    def members(self, c: int) -> np.ndarray:
        return np.nonzero(self.class_of == c)[0]

    def to_json(self) -> dict:
        return {"count": self.count, "reps": self.reps.tolist(), "sizes": self.sizes.tolist(),
                "class_of": self.class_of.tolist()}


def _compute(G: ConcreteGroup) -> ConjugacyClassPartition:
    N = G.order
    conj = G.gen_conjugations
    class_of = np.full(N, -1, dtype=np.int64)
    witness = np.zeros(N, dtype=np.int64)
    reps, sizes = [], []
    for x in range(N):
        if class_of[x] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        class_of[x] = c
        frontier = np.array([x], dtype=np.int64)
        size = 1
        while frontier.size:
            nxt = []
            for s, perm in enumerate(conj):
                y = perm[frontier]
                new_y, first = np.unique(y, return_index=True)
                keep = class_of[new_y] < 0
                new_y, src = new_y[keep], frontier[first[keep]]
                class_of[new_y] = c
                witness[new_y] = G.right_gen[s][witness[src]]
                size += new_y.size
                nxt.append(new_y)
            frontier = np.concatenate(nxt)
        sizes.append(size)
    return ConjugacyClassPartition(class_of, np.array(reps, dtype=np.int64),
                                   np.array(sizes, dtype=np.int64), witness)




def conjugacy_classes(G: ConcreteGroup) -> ConjugacyClassPartition:
    hit = G.__dict__.get("_classes")
    if hit is None:
        hit = _compute(G)
        G.__dict__["_classes"] = hit
    return hit


def class_intersection_counts(G: ConcreteGroup, members: np.ndarray) -> np.ndarray:
    """|H ∩ [g]| for every class [g], in class-id order."""
    cc = conjugacy_classes(G)
    return np.bincount(cc.class_of[members], minlength=cc.count)


def inverse_class(G: ConcreteGroup) -> np.ndarray:
    cc = conjugacy_classes(G)
    return cc.class_of[G.inv[cc.reps]]

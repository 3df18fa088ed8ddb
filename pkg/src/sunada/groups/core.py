"""Fully enumerated finite groups indexed 0..N-1 (identity at 0).

Multiplication is derived from the right-regular action of the generators,
which is recorded during the breadth-first closure.  Any product ``g * h``
can be evaluated by walking the BFS word of ``h``; when ``N`` is below the
``multiplication_table_order`` cap the full Cayley table is materialised with
layer-by-layer numpy gathers.
"""
from __future__ import annotations

import hashlib
import random
from collections import deque
from functools import cached_property

import numpy as np

from ..config import CapExceeded, check_cap, get_caps


class ConcreteGroup:
    def __init__(self, elements: list, index: dict, gen_idx: list[int],
                 right_gen: list[np.ndarray], parent: np.ndarray, via: np.ndarray,
                 depth: np.ndarray, name: str = "G"):
        self.elements = elements
        self._index = index
        self.gens = list(gen_idx)
        self.right_gen = right_gen       # right_gen[s][x] = x * gens[s]
        self.parent = parent             # BFS tree: x = parent[x] * gens[via[x]]
        self.via = via
        self.depth = depth
        self.name = name
        self.order = len(elements)
        self.inv = np.array([index[e.inverse().encode()] for e in elements], dtype=np.int64)
        self._layers = None
        self._left_cache: dict[int, np.ndarray] = {}
        self.meta: dict = {}

    def __repr__(self):
        return f"<ConcreteGroup {self.name} order={self.order}>"

    def __len__(self):
        return self.order

    # -- lookup --------------------------------------------------------------
    def index_of(self, element) -> int:
        try:
            return self._index[element.encode()]
        except KeyError:
            raise KeyError(f"{element!r} is not an element of {self.name}") from None

    def __contains__(self, element) -> bool:
        return element.encode() in self._index

    def element(self, i: int):
        return self.elements[i]

    def encoding(self, i: int) -> bytes:
        return self.elements[i].encode()

    @cached_property
    def content_hash(self) -> str:
        h = hashlib.sha256()
        for e in self.elements:
            b = e.encode()
            h.update(len(b).to_bytes(4, "big"))
            h.update(b)
        return h.hexdigest()

    # -- multiplication --------------------------------------------------------
    def _layer_plan(self):
        if self._layers is None:
            plan = []
            order = np.argsort(self.depth, kind="stable")
            depths = self.depth[order]
            for d in range(1, int(depths.max(initial=0)) + 1):
                layer = order[depths == d]
                for s in range(len(self.gens)):
                    idx = layer[self.via[layer] == s]
                    if idx.size:
                        plan.append((s, idx, self.parent[idx]))
            self._layers = plan
        return self._layers

    @cached_property
    def table(self) -> np.ndarray | None:
        """Cayley table T[i, j] = i * j, or None above the table cap."""
        N = self.order
        if N > get_caps().multiplication_table_order:
            return None
        dtype = np.int32
        T = np.empty((N, N), dtype=dtype)
        T[:, 0] = np.arange(N, dtype=dtype)
        for s, idx, par in self._layer_plan():
            T[:, idx] = self.right_gen[s][T[:, par]]
        return T

    def right_mult(self, g: int) -> np.ndarray:
        """Array x -> x * g."""
        T = self.table
        if T is not None:
            return T[:, g].astype(np.int64)
        word = self.word(g)
        out = np.arange(self.order, dtype=np.int64)
        for s in word:
            out = self.right_gen[s][out]
        return out

    def left_mult(self, g: int) -> np.ndarray:
        """Array x -> g * x."""
        T = self.table
        if T is not None:
            return T[g, :].astype(np.int64)
        if g in self._left_cache:
            return self._left_cache[g]
        row = np.empty(self.order, dtype=np.int64)
        row[0] = g
        for s, idx, par in self._layer_plan():
            row[idx] = self.right_gen[s][row[par]]
        if len(self._left_cache) < 64:
            self._left_cache[g] = row
        return row

    def conj_action(self, g: int) -> np.ndarray:
        """Array x -> g^-1 * x * g."""
        return self.right_mult(g)[self.left_mult(int(self.inv[g]))]

    @cached_property
    def gen_conjugations(self) -> list[np.ndarray]:
        return [self.conj_action(g) for g in self.gens]

    def word(self, g: int) -> list[int]:
        """Generator indices s_1..s_k with g = gens[s_1] * ... * gens[s_k]."""
        out = []
        while g != 0:
            out.append(int(self.via[g]))
            g = int(self.parent[g])
        return out[::-1]

    def mul(self, a: int, b: int) -> int:
        T = self.table
        if T is not None:
            return int(T[a, b])
        x = a
        for s in self.word(b):
            x = int(self.right_gen[s][x])
        return x

    def mul_many(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = self.mul(out, x)
        return out

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        out, base = 0, g
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_order(self, g: int) -> int:
        x, m = g, 1
        while x != 0:
            x = self.mul(x, g)
            m += 1
        return m

    @cached_property
    def element_orders(self) -> np.ndarray:
        N = self.order
        orders = np.zeros(N, dtype=np.int64)
        for g in range(N):
            if orders[g]:
                continue
            # walk the cyclic subgroup once; powers g^k have order m / gcd(k, m)
            powers = [0]
            x = g
            while x != 0:
                powers.append(x)
                x = self.mul(x, g)
            m = len(powers)
            for k, y in enumerate(powers):
                if not orders[y]:
                    orders[y] = m // np.gcd(k, m)
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    def is_abelian(self) -> bool:
        gens = self.gens
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def check_associativity(self, samples: int = 1000, seed: int = 0) -> None:
        rng = random.Random(seed)
        N = self.order
        for _ in range(samples):
            a, b, c = (rng.randrange(N) for _ in range(3))
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise AssertionError(f"associativity fails at {(a, b, c)}")

    def to_json(self, with_elements: bool = False) -> dict:
        out = {"name": self.name, "order": self.order, "hash": self.content_hash,
               "generators": self.gens}
        if with_elements:
            out["elements"] = [e.encode().hex() for e in self.elements]
        return out


def generate_group(gens, identity=None, cap: int | None = None, name: str = "G",
                   check: bool = True) -> ConcreteGroup:
    """Breadth-first closure of ``gens``; element order is BFS discovery order."""
    gens = list(gens)
    if identity is None:
        if not gens:
            raise ValueError("need generators or an identity element")
        identity = gens[0].identity()
    carrier = identity.carrier
    for g in gens:
        if g.carrier != carrier:
            raise ValueError(f"inconsistent carrier: {g.carrier} vs {carrier}")
    limit = cap if cap is not None else get_caps().group_order
    elements = [identity]
    index = {identity.encode(): 0}
    parent, via, depth = [0], [0], [0]
    nxt: list[list[int]] = [[] for _ in gens]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        x = elements[i]
        for s, g in enumerate(gens):
            y = x * g
            key = y.encode()
            j = index.get(key)
            if j is None:
                j = len(elements)
                if j >= limit:
                    raise CapExceeded(f"group order exceeds cap {limit}")
                index[key] = j
                elements.append(y)
                parent.append(i)
                via.append(s)
                depth.append(depth[i] + 1)
                queue.append(j)
            nxt[s].append(j)
    # rows were appended in BFS order, which is the element order
    right_gen = [np.array(r, dtype=np.int64) for r in nxt]
    gen_idx = [index[g.encode()] for g in gens]
    G = ConcreteGroup(elements, index, gen_idx, right_gen,
                      np.array(parent, dtype=np.int64), np.array(via, dtype=np.int64),
                      np.array(depth, dtype=np.int64), name=name)
    if check:
        G.check_associativity()
        for g in range(min(G.order, 64)):
            if G.mul(0, g) != g or G.mul(g, 0) != g:
                raise AssertionError("identity law fails")
    return G


class Subgroup:
    """Sorted member indices of a subgroup of ``parent`` (closure verified)."""

    def __init__(self, parent: ConcreteGroup, members, check: bool = True, name: str = "H"):
        m = np.unique(np.asarray(list(members) if not isinstance(members, np.ndarray) else members,
                                 dtype=np.int64))
        self.parent = parent
        self.members = m
        self.name = name
        if check:
            self._verify()

    def _verify(self):
        G, m = self.parent, self.members
        if m.size == 0 or m[0] != 0:
            raise ValueError("subgroup must contain the identity")
        if m[-1] >= G.order:
            raise ValueError("member index out of range")
        mask = self.mask
        if not mask[G.inv[m]].all():
            raise ValueError("subset is not closed under inverses")
        T = G.table
        if T is not None and m.size * m.size <= 4_000_000:
            if not mask[T[np.ix_(m, m)]].all():
                raise ValueError("subset is not closed under multiplication")
        else:
            for h in m:
                if not mask[G.right_mult(int(h))[m]].all():
                    raise ValueError("subset is not closed under multiplication")
        if G.order % m.size:
            raise AssertionError("Lagrange check failed")

    @property
    def order(self) -> int:
        return int(self.members.size)

    def __len__(self):
        return self.order

    @cached_property
    def mask(self) -> np.ndarray:
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[self.members] = True
        return mask

    def __contains__(self, g: int) -> bool:
        return bool(self.mask[g])

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and \
            np.array_equal(self.members, other.members)

    def __hash__(self):
        return hash((id(self.parent), self.members.tobytes()))

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @cached_property
    def content_hash(self) -> str:
        h = hashlib.sha256(self.parent.content_hash.encode())
        h.update(self.members.astype(np.int64).tobytes())
        return h.hexdigest()

    def conjugate(self, g: int) -> "Subgroup":
        """g^-1 H g."""
        c = self.parent.conj_action(g)
        return Subgroup(self.parent, c[self.members], check=False)

    def is_normal(self) -> bool:
        mask = self.mask
        return all(mask[c[self.members]].all() for c in self.parent.gen_conjugations)

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "hash": self.content_hash,
                "members": self.members.tolist()}

    def __repr__(self):
        return f"<Subgroup {self.name} order={self.order} of {self.parent.name}>"


def subgroup_from(G: ConcreteGroup, seeds, name: str = "H") -> Subgroup:
    """Smallest subgroup containing the seed indices."""
    seeds = [int(s) for s in seeds]
    for s in seeds:
        if not 0 <= s < G.order:
            raise ValueError(f"seed {s} is not an element of {G.name}")
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    frontier = np.array([0], dtype=np.int64)
    perms = [G.right_mult(s) for s in set(seeds)]
    while frontier.size:
        new = []
        for perm in perms:
            y = np.unique(perm[frontier])
            y = y[~mask[y]]
            mask[y] = True
            new.append(y)
        frontier = np.unique(np.concatenate(new)) if new else np.array([], dtype=np.int64)
    H = Subgroup(G, np.nonzero(mask)[0], check=False, name=name)
    if G.order % H.order:
        raise AssertionError("Lagrange check failed")
    return H


def trivial_subgroup(G: ConcreteGroup) -> Subgroup:
    return Subgroup(G, [0], check=False, name="1")


def whole_group(G: ConcreteGroup) -> Subgroup:
    return Subgroup(G, np.arange(G.order), check=False, name=G.name)


def element_order(G: ConcreteGroup, g: int) -> int:
    return G.element_order(g)


def commutator_subgroup(G: ConcreteGroup) -> Subgroup:
    """Brute force: subgroup generated by all commutators."""
    comms = set()
    for a in range(G.order):
        ia = int(G.inv[a])
        for b in range(G.order):
            comms.add(G.mul_many(ia, int(G.inv[b]), a, b))
    return subgroup_from(G, sorted(comms), name="[G,G]")


def all_subgroups(G: ConcreteGroup, limit: int = 10_000) -> list[Subgroup]:
    """Every subgroup, by closing the cyclic subgroups under joins (small groups)."""
    check_cap("multiplication_table_order", G.order)
    found: dict[bytes, Subgroup] = {}
    frontier = []
    for g in range(G.order):
        H = subgroup_from(G, [g])
        key = H.members.tobytes()
        if key not in found:
            found[key] = H
            frontier.append(H)
    cyclic = list(found.values())
    while frontier:
        nxt = []
        for H in frontier:
            for Z in cyclic:
                if Z.mask[H.members].all() or H.mask[Z.members].all():
                    continue
                J = subgroup_from(G, np.concatenate([H.members, Z.members]))
                key = J.members.tobytes()
                if key not in found:
                    found[key] = J
                    nxt.append(J)
                    if len(found) > limit:
                        raise CapExceeded(f"more than {limit} subgroups")
        frontier = nxt
    return sorted(found.values(), key=lambda H: (H.order, H.members.tolist()))

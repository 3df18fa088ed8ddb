"""Certificates for the four subgroup-pair relations.

Each certificate carries evidence from which :func:`recheck` re-derives the
verdict without touching the group again.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups.characters import character_table, spade_profile
from .groups.classes import class_intersection_counts, conjugacy_classes
from .groups.core import ConcreteGroup, Subgroup
from .groups.cosets import conjugacy_orbit, normal_core

RELATIONS = ("almost_conjugate", "elementwise_conjugate", "fixed_point_equivalent", "primitive")

# union-form cross-check for elementwise conjugacy runs below this order
UNION_CHECK_ORDER = 2000


@dataclass
class Certificate:
    relation: str
    verdict: bool
    evidence: dict
    group: str
    subgroups: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"relation": self.relation, "verdict": self.verdict, "evidence": self.evidence,
                "group_hash": self.group, "subgroup_hashes": list(self.subgroups)}

    @classmethod
    def from_json(cls, d: dict) -> "Certificate":
        return cls(d["relation"], bool(d["verdict"]), d["evidence"], d["group_hash"],
                   list(d.get("subgroup_hashes", [])))


def _check_pair(G: ConcreteGroup, *subs: Subgroup) -> None:
    for S in subs:
        if S.parent is not G:
            raise ValueError(f"{S.name} is not a subgroup of {G.name}")


def certify_almost_conjugate(G: ConcreteGroup, H: Subgroup, K: Subgroup) -> Certificate:
    _check_pair(G, H, K)
    ch = class_intersection_counts(G, H.members).tolist()
    ck = class_intersection_counts(G, K.members).tolist()
    return Certificate("almost_conjugate", ch == ck, {"counts_H": ch, "counts_K": ck},
                       G.content_hash, [H.content_hash, K.content_hash])


def _union_of_conjugates(G: ConcreteGroup, K: Subgroup) -> np.ndarray:
    seen, _ = conjugacy_orbit(G, K)
    mask = np.zeros(G.order, dtype=bool)
    for key in seen:
        mask[np.frombuffer(key, dtype=np.int64)] = True
    return mask


def certify_elementwise_conjugate(G: ConcreteGroup, H: Subgroup, K: Subgroup,
                                  cross_check: bool | None = None) -> Certificate:
    _check_pair(G, H, K)
    mh = (class_intersection_counts(G, H.members) > 0).tolist()
    mk = (class_intersection_counts(G, K.members) > 0).tolist()
    verdict = mh == mk
    if cross_check is None:
        cross_check = G.order <= UNION_CHECK_ORDER
    if cross_check:
        # union form: H inside the union of the conjugates of K, and conversely
        union = _union_of_conjugates(G, K)[H.members].all() and \
            _union_of_conjugates(G, H)[K.members].all()
        if bool(union) != verdict:
            raise AssertionError("per-class and union forms of elementwise conjugacy disagree")
    return Certificate("elementwise_conjugate", verdict, {"meets_H": mh, "meets_K": mk},
                       G.content_hash, [H.content_hash, K.content_hash])


def certify_fixed_point_equivalent(G: ConcreteGroup, H: Subgroup, K: Subgroup) -> Certificate:
    """Nontrivial fixed vectors are tested on irreducibles only: a representation
    has an H-fixed vector iff one of its irreducible constituents does."""
    _check_pair(G, H, K)
    t = character_table(G)
    dh = spade_profile(G, H)
    dk = spade_profile(G, K)
    verdict = all((a > 0) == (b > 0) for a, b in zip(dh, dk))
    return Certificate("fixed_point_equivalent", verdict,
                       {"dims_H": dh, "dims_K": dk, "degrees": list(t.degrees)},
                       G.content_hash, [H.content_hash, K.content_hash])


def certify_primitive(G: ConcreteGroup, H: Subgroup) -> Certificate:
    _check_pair(G, H)
    orders = G.element_orders[H.members[1:]] if H.order > 1 else np.array([], dtype=np.int64)
    hist = sorted((int(o), int(c)) for o, c in zip(*np.unique(orders, return_counts=True)))
    core = normal_core(G, H)
    ev = {"order_histogram": [[o, c] for o, c in hist], "core_order": core.order,
          "core_members": core.members.tolist()}
    return Certificate("primitive", _primitive_verdict(ev), ev, G.content_hash, [H.content_hash])


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _primitive_verdict(ev: dict) -> bool:
    orders = [o for o, _ in ev["order_histogram"]]
    same_prime = len(orders) == 1 and _is_prime(orders[0])
    return same_prime and ev["core_order"] == 1


def recheck(cert: Certificate | dict) -> bool:
    """Re-derive the verdict from the evidence alone."""
    if isinstance(cert, dict):
        cert = Certificate.from_json(cert)
    ev = cert.evidence
    if cert.relation == "almost_conjugate":
        return list(ev["counts_H"]) == list(ev["counts_K"])
    if cert.relation == "elementwise_conjugate":
        return list(ev["meets_H"]) == list(ev["meets_K"])
    if cert.relation == "fixed_point_equivalent":
        return all((a > 0) == (b > 0) for a, b in zip(ev["dims_H"], ev["dims_K"]))
    if cert.relation == "primitive":
        return _primitive_verdict(ev)
    raise ValueError(f"unknown relation {cert.relation!r}")


def certify(relation: str, G: ConcreteGroup, H: Subgroup, K: Subgroup | None = None) -> Certificate:
    if relation == "primitive":
        return certify_primitive(G, H)
    if K is None:
        raise ValueError(f"{relation} needs two subgroups")
    fn = {"almost_conjugate": certify_almost_conjugate,
          "elementwise_conjugate": certify_elementwise_conjugate,
          "fixed_point_equivalent": certify_fixed_point_equivalent}.get(relation)
    if fn is None:
        raise ValueError(f"unknown relation {relation!r}")
    return fn(G, H, K)


__all__ = ["Certificate", "RELATIONS", "certify", "certify_almost_conjugate",
           "certify_elementwise_conjugate", "certify_fixed_point_equivalent",
           "certify_primitive", "recheck", "spade_profile", "conjugacy_classes"]

"""JSON jobs and deterministic reports.

A job is either flat, ``{"kind": "covers", ...}``, or nested,
``{"covers": {...}}``.  Reports are serialized with sorted keys; integers
outside the IEEE double range are written as decimal strings.
"""
from __future__ import annotations

import hashlib
import json
from typing import Annotated, Any, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from . import __version__
from . import constructions as C
from .arithmetic_forms import (ModelForm, QuaternionAlgebraDescriptor, classify_cocompactness,
                               is_admissible, make_cm_extension, make_number_field,
                               quaternion_totally_definite, search_admissible_diagonal)
from .certifiers import certify, recheck
from .covers import (MODES, Homomorphism, compare_spectra, cover_trace_spectrum,
                     default_homomorphism, homomorphism_meeting, schreier_spectrum_compare)
from .groups.carriers import Perm
from .groups.characters import character_table
from .groups.classes import conjugacy_classes
from .groups.core import Subgroup, subgroup_from, trivial_subgroup, whole_group
from .hyperbolic import ProjectivePoint, hyperbolic_distance
from .suites import affine_suite, twist_lemma_suite

EXIT_CONFIRMED, EXIT_ERROR, EXIT_REFUTED = 0, 1, 2


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


# -- group and subgroup selectors ---------------------------------------------

class GroupSpec(_Model):
    type: Literal["heisenberg", "heisenberg_ext", "affine", "symmetric", "dihedral",
                  "quaternion", "cyclic", "abelian", "permutation", "semidirect"]
    p: int | None = None
    n: int | None = None
    moduli: list[int] | None = None
    degree: int | None = None
    gens: list[list[list[int]]] | None = None  # permutation generators as 1-based cycles
    theta: list[list[list[int]]] | None = None  # matrices acting on F_p^n (semidirect)


class SubgroupSpec(_Model):
    twist: list[list[int]] | None = None
    subspace: list[list[int]] | None = None
    horizontal: bool | None = None
    perms: list[list[list[int]]] | None = None
    elements: list[int] | None = None
    trivial: bool | None = None
    whole: bool | None = None


class _JobBase(_Model):
    seed: int | None = None
    expect: dict[str, Any] | None = None


class GroupJob(_JobBase):
    kind: Literal["group"]
    group: GroupSpec
    character_table: bool = False


class CertifyJob(_JobBase):
    kind: Literal["certify"]
    group: GroupSpec
    subgroups: Annotated[list[SubgroupSpec], Field(min_length=2, max_length=2)]
    relations: list[Literal["almost_conjugate", "elementwise_conjugate",
                            "fixed_point_equivalent", "primitive"]] = \
        ["almost_conjugate", "elementwise_conjugate", "fixed_point_equivalent", "primitive"]


class HeisenbergSuiteJob(_JobBase):
    kind: Literal["heisenberg_suite"]
    p: int
    n: int


class AffineSuiteJob(_JobBase):
    kind: Literal["affine_suite"]
    p: int
    n: int
    pairs: list[tuple[list[list[int]], list[list[int]]]] | None = None


class PhiSpec(_Model):
    a: int
    b: int


class CoversJob(_JobBase):
    kind: Literal["covers"]
    group: GroupSpec
    subgroups: Annotated[list[SubgroupSpec], Field(min_length=2, max_length=2)]
    phi: PhiSpec | Literal["auto", "default", "meeting"] = "auto"
    L: Annotated[int, Field(ge=1)] = 8
    modes: list[Literal["multiset_all", "set_all", "set_primitive", "multiset_primitive"]] = list(MODES)


class SchreierJob(_JobBase):
    kind: Literal["schreier"]
    group: GroupSpec
    subgroups: Annotated[list[SubgroupSpec], Field(min_length=2, max_length=2)]
    S: list[int] | Literal["generators"] = "generators"
    modes: list[Literal["multiset", "set"]] = ["multiset", "set"]


class FieldSpec(_Model):
    minpoly: list[int]


class FormsJob(_JobBase):
    kind: Literal["forms"]
    field: FieldSpec = FieldSpec(minpoly=[0, 1])
    X: Literal["R", "C", "H"] = "R"
    n: Annotated[int, Field(ge=1)] = 2
    action: Literal["search_admissible", "classify", "admissible", "quaternion", "cm_extension"]
    height: int = 3
    entries: list[list[int]] | None = None  # power-basis coordinates per diagonal entry
    alpha: list[int] | None = None
    beta: list[int] | None = None
    d: int | None = None


class DistanceJob(_JobBase):
    kind: Literal["distance"]
    X: Literal["R", "C", "H"] = "R"
    x: list[Any]
    y: list[Any]


Job = Annotated[Union[GroupJob, CertifyJob, HeisenbergSuiteJob, AffineSuiteJob, CoversJob,
                      SchreierJob, FormsJob, DistanceJob], Field(discriminator="kind")]
KINDS = ("group", "certify", "heisenberg_suite", "affine_suite", "covers", "schreier", "forms", "distance")
_adapter = TypeAdapter(Job)


class JobError(ValueError):
    """Structured parse failure: ``errors`` lists {path, message} entries."""

    def __init__(self, errors: list[dict]):
        self.errors = errors
        super().__init__("; ".join(f"{e['path']}: {e['message']}" for e in errors))


def parse_job(text: str | dict):
    if isinstance(text, str):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise JobError([{"path": "", "message": f"invalid JSON: {exc.msg}"}]) from None
    else:
        doc = text
    if not isinstance(doc, dict):
        raise JobError([{"path": "", "message": "job must be a JSON object"}])
    if "kind" not in doc:
        keys = [k for k in doc if k not in ("seed", "expect")]
        if len(keys) == 1 and keys[0] in KINDS and isinstance(doc[keys[0]], dict):
            doc = {**doc[keys[0]], **{k: doc[k] for k in ("seed", "expect") if k in doc}, "kind": keys[0]}
        else:
            raise JobError([{"path": "kind", "message": f"unknown or missing kind; expected one of {list(KINDS)}"}])
    if doc.get("kind") not in KINDS:
        raise JobError([{"path": "kind", "message": f"unknown kind {doc.get('kind')!r}"}])
    try:
        return _adapter.validate_python(doc)
    except ValidationError as exc:
        errs = []
        for e in exc.errors():
            loc = [str(x) for x in e["loc"]]
            if loc and loc[0] == doc["kind"]:
                loc = loc[1:]
            errs.append({"path": ".".join(loc), "message": e["msg"]})
        raise JobError(errs) from None


# -- building objects ----------------------------------------------------------------

def _need(spec: GroupSpec, *names):
    for n in names:
        if getattr(spec, n) is None:
            raise ValueError(f"group type {spec.type} needs field {n!r}")


def build_group(spec: GroupSpec):
    t = spec.type
    if t in ("heisenberg", "heisenberg_ext", "affine"):
        _need(spec, "p", "n")
        fn = {"heisenberg": C.heisenberg_group, "heisenberg_ext": C.heisenberg_semilinear_extension,
              "affine": C.affine_group}[t]
        return fn(spec.p, spec.n)
    if t == "symmetric":
        _need(spec, "n")
        return C.symmetric_group(spec.n)
    if t == "dihedral":
        _need(spec, "n")
        return C.dihedral_group(spec.n)
    if t == "quaternion":
        return C.quaternion_group()
    if t == "cyclic":
        _need(spec, "n")
        return C.cyclic_group(spec.n)
    if t == "abelian":
        _need(spec, "moduli")
        return C.abelian_group(spec.moduli)
    if t == "permutation":
        _need(spec, "degree", "gens")
        from .groups.core import generate_group
        G = generate_group([Perm.from_cycles(spec.degree, *[tuple(c) for c in g]) for g in spec.gens],
                           identity=Perm(tuple(range(spec.degree))), name="P")
        G.meta.update(kind="permutation", degree=spec.degree)
        return G
    if t == "semidirect":
        _need(spec, "p", "n", "theta")
        A = C.vector_group(spec.p, spec.n)
        return C.semidirect_product(A, [C.linear_automorphism(A, m) for m in spec.theta])
    raise ValueError(f"unknown group type {t!r}")


def build_subgroup(G, spec: SubgroupSpec) -> Subgroup:
    chosen = [k for k, v in spec.model_dump().items() if v is not None]
    if len(chosen) != 1:
        raise ValueError(f"a subgroup selector needs exactly one field, got {chosen}")
    k = chosen[0]
    if k == "twist":
        return C.twisted_horizontal(G, spec.twist)
    if k == "subspace":
        return C.subspace_subgroup(G, spec.subspace)
    if k == "horizontal":
        return C.horizontal_subgroup(G)
    if k == "trivial":
        return trivial_subgroup(G)
    if k == "whole":
        return whole_group(G)
    if k == "elements":
        return subgroup_from(G, spec.elements)
    degree = G.meta.get("degree")
    if degree is None:
        raise ValueError("perms selectors need a permutation group")
    return subgroup_from(G, [G.index_of(Perm.from_cycles(degree, *[tuple(c) for c in g])) for g in spec.perms])


# -- running -------------------------------------------------------------------------

def _check_expectations(results: dict, expect: dict | None) -> list[dict]:
    out = []
    for key, want in (expect or {}).items():
        cur: Any = results
        for part in key.split("."):
            cur = cur.get(part) if isinstance(cur, dict) else None
        out.append({"key": key, "expected": want, "actual": cur, "confirmed": cur == want})
    return out


def _pair(j):
    G = build_group(j.group)
    H, K = (build_subgroup(G, s) for s in j.subgroups)
    return G, H, K


def _run(j) -> tuple[dict, dict, bool]:
    """(results, hashes, confirmed-by-construction)."""
    kind = j.kind
    if kind == "group":
        G = build_group(j.group)
        cc = conjugacy_classes(G)
        res = {"order": G.order, "classes": cc.count, "exponent": G.exponent,
               "class_sizes": cc.sizes.tolist(), "abelian": G.is_abelian()}
        if j.character_table:
            res["character_degrees"] = list(character_table(G).degrees)
        return res, {"group": G.content_hash}, True
    if kind == "certify":
        G, H, K = _pair(j)
        certs = {}
        ok = True
        for rel in j.relations:
            if rel == "primitive":
                cs = [certify("primitive", G, S) for S in (H, K)]
                certs["primitive"] = [c.to_json() for c in cs]
                ok &= all(recheck(c) == c.verdict for c in cs)
            else:
                c = certify(rel, G, H, K)
                certs[rel] = c.to_json()
                ok &= recheck(c) == c.verdict
        verdicts = {k: ([c["verdict"] for c in v] if isinstance(v, list) else v["verdict"])
                    for k, v in certs.items()}
        return ({"verdicts": verdicts, "certificates": certs, "recheck": ok, "orders": [H.order, K.order]},
                {"group": G.content_hash, "H": H.content_hash, "K": K.content_hash}, ok)
    if kind == "heisenberg_suite":
        r = twist_lemma_suite(j.p, j.n)
        return r, {"group": r["group_hash"]}, r["confirmed"]
    if kind == "affine_suite":
        r = affine_suite(j.p, j.n, j.pairs)
        return r, {"group": r["group_hash"]}, r["confirmed"]
    if kind == "covers":
        G, H, K = _pair(j)
        if j.phi == "default":
            phi = default_homomorphism(G)
        elif j.phi == "meeting":
            phi = homomorphism_meeting(G, H)
        elif j.phi == "auto":
            try:
                phi = homomorphism_meeting(G, H)
            except ValueError:
                phi = default_homomorphism(G)
        else:
            phi = Homomorphism(G, j.phi.a, j.phi.b)
        s1, s2 = cover_trace_spectrum(G, H, phi, j.L), cover_trace_spectrum(G, K, phi, j.L)
        comps = {m: compare_spectra(s1, s2, m).to_json() for m in j.modes}
        return ({"phi": phi.to_json(), "spectra": [s1.to_json(), s2.to_json()], "comparisons": comps,
                 "equal": {m: c["equal"] for m, c in comps.items()}},
                {"group": G.content_hash, "H": H.content_hash, "K": K.content_hash}, True)
    if kind == "schreier":
        G, H, K = _pair(j)
        if j.S == "generators":
            S = sorted(set(G.gens) | {int(G.inv[g]) for g in G.gens})
            # keep the multiset symmetric: involutions appear once, others with their inverse
        else:
            S = list(j.S)
        comps = {m: schreier_spectrum_compare(G, H, K, S, m).to_json() for m in j.modes}
        return ({"S": S, "comparisons": comps, "equal": {m: c["equal"] for m, c in comps.items()}},
                {"group": G.content_hash, "H": H.content_hash, "K": K.content_hash}, True)
    if kind == "forms":
        F = make_number_field(j.field.minpoly)
        hashes = {"field": hashlib.sha256(json.dumps(F.minpoly.to_json()).encode()).hexdigest()}
        if j.action == "search_admissible":
            r = search_admissible_diagonal(F, j.n, j.height)
            res = r.to_json()
            if r.found:
                res["admissibility"] = is_admissible(r.form).to_json()
            return res, hashes, True
        if j.action == "cm_extension":
            if j.d is None:
                raise ValueError("cm_extension needs d")
            E = make_cm_extension(F, j.d)
            return {"field": E.to_json(), "base": F.minpoly.to_json(), "d": j.d}, hashes, True
        if j.action == "quaternion":
            if j.alpha is None or j.beta is None:
                raise ValueError("quaternion needs alpha and beta")
            ok, rep = quaternion_totally_definite(QuaternionAlgebraDescriptor(F, F(j.alpha), F(j.beta)))
            return {"totally_definite": ok, "embeddings": rep}, hashes, True
        B = None
        if j.entries is not None:
            B = ModelForm(F, [F(e) for e in j.entries])
            if B.n != j.n:
                raise ValueError(f"form has {len(j.entries)} entries, expected n + 1 = {j.n + 1}")
        if j.action == "admissible":
            if B is None:
                raise ValueError("admissible needs entries")
            return is_admissible(B).to_json(), hashes, True
        return classify_cocompactness(j.X, F, j.n, B).to_json(), hashes, True
    if kind == "distance":
        x, y = ProjectivePoint.make(j.x, j.X), ProjectivePoint.make(j.y, j.X)
        return {"distance": hyperbolic_distance(x, y, j.X)}, {}, True
    raise ValueError(f"unknown kind {kind!r}")


def _sanitize(obj):
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        v = int(obj)
        return v if abs(v) < 2**53 else str(v)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, bytes):
        return obj.hex()
    return obj


def job_hash(job) -> str:
    doc = job.model_dump(mode="json", exclude_none=True)
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()


def run_job(job, seed: int | None = None) -> dict:
    """Execute a parsed job; the report includes ``exit_code``."""
    echo = job.model_dump(mode="json", exclude_none=True)
    if seed is not None and job.seed is None:
        echo["seed"] = seed
    report: dict = {"tool": {"name": "sunada", "version": __version__}, "job": echo,
                    "job_hash": job_hash(job)}
    try:
        results, hashes, ok = _run(job)
    except Exception as exc:  # carried into the report
        report.update(status="error", exit_code=EXIT_ERROR,
                      error={"type": type(exc).__name__, "message": str(exc)})
        return _sanitize(report)
    checks = _check_expectations(results, job.expect)
    confirmed = ok and all(c["confirmed"] for c in checks)
    report.update(results=results, hashes=hashes, expectations=checks,
                  status="confirmed" if confirmed else "refuted",
                  exit_code=EXIT_CONFIRMED if confirmed else EXIT_REFUTED)
    return _sanitize(report)


def dumps_report(report: dict) -> str:
    return json.dumps(_sanitize(report), sort_keys=True, indent=2) + "\n"

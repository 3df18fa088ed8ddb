"""Model forms over totally real fields, admissibility, CM extensions,
quaternion algebras and the cocompactness rule table.

Everything here is exact: signs at real embeddings come from Sturm isolation,
isotropy witnesses are integer vectors, and anisotropy certificates are
residue counts modulo small prime powers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm

import numpy as np
import sympy

from .algebra.number_field import NumberField, NumberFieldElement, sign_at_embedding
from .algebra.polynomials import IntegerPolynomial
from .config import get_caps


def make_number_field(minpoly) -> NumberField:
    return NumberField(minpoly)


def rationals() -> NumberField:
    return NumberField([0, 1])


def _squarefree(d: int) -> bool:
    return d > 0 and all(e == 1 for e in sympy.factorint(d).values())


def make_cm_extension(F: NumberField, d: int, max_shift: int = 20) -> NumberField:
    """E = F(sqrt(-d)) through the primitive element t + k sqrt(-d).

    The minimal polynomial is Res_y(f(y), (x - y)^2 + d k^2); the first k that
    gives an irreducible polynomial of degree 2 deg F is used.
    """
    if not F.is_totally_real:
        raise ValueError("base field must be totally real")
    if not _squarefree(int(d)):
        raise ValueError(f"d = {d} is not a positive square-free integer")
    x, y = sympy.symbols("x y")
    f = sum(int(c) * y**i for i, c in enumerate(F.minpoly.coeffs))
    for k in range(1, max_shift + 1):
        h = sympy.Poly(sympy.resultant(f, (x - y) ** 2 + d * k * k, y), x)
        coeffs = [int(c) for c in reversed(h.all_coeffs())]
        if h.degree() != 2 * F.degree or not h.is_irreducible:
            continue
        E = NumberField(coeffs)
        if E.r1 != 0:
            raise AssertionError("composite field has a real embedding")
        E.cm_base, E.cm_d = F, int(d)
        return E
    raise ValueError(f"no primitive element t + k sqrt(-{d}) with k <= {max_shift}")


@dataclass
class ModelForm:
    """diag(entries) over a totally real field, distinguished embedding index."""

    field: NumberField
    entries: list[NumberFieldElement]
    distinguished: int = 0

    def __post_init__(self):
        self.entries = [e if isinstance(e, NumberFieldElement) else self.field(e) for e in self.entries]
        if len(self.entries) < 2:
            raise ValueError("a model form needs at least two entries")
        for e in self.entries:
            if e.field != self.field:
                raise ValueError("entry lies in a different field")
            if e.is_zero():
                raise ValueError("model form entries must be nonzero")
        if not 0 <= self.distinguished < self.field.r1:
            raise ValueError("distinguished embedding index out of range")
        n = self.n
        if signature_at_embedding(self, self.distinguished) != (n, 1):
            raise ValueError(f"signature at the distinguished embedding is not ({n}, 1)")

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def to_json(self) -> dict:
        return {"field": self.field.minpoly.to_json(), "entries": [e.to_json() for e in self.entries],
                "distinguished": self.distinguished}


def standard_form(n: int, F: NumberField | None = None) -> ModelForm:
    """I_{n,1} = diag(1, ..., 1, -1)."""
    F = F or rationals()
    return ModelForm(F, [F.one()] * n + [-F.one()])


def signature_at_embedding(B: ModelForm, j: int) -> tuple[int, int]:
    if not 0 <= j < B.field.r1:
        raise ValueError(f"embedding index {j} out of range")
    e = B.field.real_embeddings[j]
    signs = [sign_at_embedding(a, e) for a in B.entries]
    if 0 in signs:
        raise AssertionError("nonzero entry vanished at a real embedding")
    return signs.count(1), signs.count(-1)


@dataclass
class AdmissibilityReport:
    admissible: bool
    signatures: list[tuple[int, int]]

    def __bool__(self):
        return self.admissible

    def to_json(self) -> dict:
        return {"admissible": self.admissible, "signatures": [list(s) for s in self.signatures]}


def is_admissible(B: ModelForm) -> AdmissibilityReport:
    F = B.field
    if not F.is_totally_real:
        raise ValueError("admissibility needs a totally real field")
    n = B.n
    sigs = [signature_at_embedding(B, j) for j in range(F.r1)]
    ok = all(s == ((n, 1) if j == B.distinguished else (n + 1, 0)) for j, s in enumerate(sigs))
    return AdmissibilityReport(ok, sigs)


def integral_elements(F: NumberField, height: int):
    """Z[t]-elements with coordinates of max-abs <= height, ordered by
    (max-abs, L1 norm, coordinates lexicographically)."""
    d = F.degree
    vecs = [v for v in itertools.product(range(-height, height + 1), repeat=d) if any(v)]
    vecs.sort(key=lambda v: (max(map(abs, v)), sum(map(abs, v)), v))
    for v in vecs:
        yield v, F(list(v))


@dataclass
class SearchResult:
    form: ModelForm | None
    height: int
    examined: int

    @property
    def found(self) -> bool:
        return self.form is not None

    def to_json(self) -> dict:
        return {"found": self.found, "height": self.height, "examined": self.examined,
                "form": self.form.to_json() if self.form else None}


def search_admissible_diagonal(F: NumberField, n: int, height: int) -> SearchResult:
    """diag(a, ..., a, c) with a the first totally positive element and c the
    first element negative at the distinguished embedding and positive at all
    others, both in the documented enumeration order.  Exhaustion of the height
    bound is reported as not found, which is not a nonexistence proof."""
    if not F.is_totally_real:
        raise ValueError("field must be totally real")
    embs = F.real_embeddings
    pos = neg = None
    examined = 0
    for v, a in integral_elements(F, height):
        examined += 1
        s = [sign_at_embedding(a, e) for e in embs]
        if pos is None and all(x == 1 for x in s):
            pos = a
        if neg is None and s[0] == -1 and all(x == 1 for x in s[1:]):
            neg = a
        if pos is not None and neg is not None:
            B = ModelForm(F, [pos] * n + [neg])
            if not is_admissible(B):
                raise AssertionError("search produced an inadmissible form")
            return SearchResult(B, height, examined)
    return SearchResult(None, height, examined)


@dataclass
class QuaternionAlgebraDescriptor:
    """(alpha, beta / F): x^2 = alpha, y^2 = beta, xy = -yx."""

    base: NumberField
    alpha: NumberFieldElement
    beta: NumberFieldElement

    def __post_init__(self):
        F = self.base
        self.alpha = self.alpha if isinstance(self.alpha, NumberFieldElement) else F(self.alpha)
        self.beta = self.beta if isinstance(self.beta, NumberFieldElement) else F(self.beta)
        if self.alpha.is_zero() or self.beta.is_zero():
            raise ValueError("alpha and beta must be nonzero")


def quaternion_totally_definite(A: QuaternionAlgebraDescriptor) -> tuple[bool, list[dict]]:
    """(a, b / R) is the division algebra H iff a < 0 and b < 0."""
    if not A.base.is_totally_real:
        raise ValueError("base field must be totally real")
    report = []
    for j, e in enumerate(A.base.real_embeddings):
        sa, sb = sign_at_embedding(A.alpha, e), sign_at_embedding(A.beta, e)
        report.append({"embedding": j, "alpha_sign": sa, "beta_sign": sb,
                       "algebra": "H" if sa < 0 and sb < 0 else "Mat(2,R)"})
    return all(r["algebra"] == "H" for r in report), report


# -- cocompactness -------------------------------------------------------------

@dataclass
class CocompactnessVerdict:
    verdict: str  # cocompact | noncocompact | indeterminate
    rule: str
    witness: list[int] | None = None
    certificate: dict | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "rule": self.rule, "witness": self.witness,
                "certificate": self.certificate, **self.details}


def _integer_diagonal(B: ModelForm) -> list[int]:
    vals = [e.coords[0] for e in B.entries]
    den = lcm(*[Fraction(v).denominator for v in vals])
    ints = [int(v * den) for v in vals]
    g = gcd(*ints)
    return [v // g for v in ints]


def form_value(diag: list[int], v) -> int:
    return sum(a * x * x for a, x in zip(diag, v))


def _square_counts(a: int, m: int, step: int) -> np.ndarray:
    out = np.zeros(m, dtype=object)
    for x in range(0, m, step):
        out[a * x * x % m] += 1
    return out


def _zero_count(diag: list[int], m: int, step: int) -> int:
    """#{v mod m with every v_i a multiple of step : sum a_i v_i^2 = 0 mod m}."""
    dist = np.zeros(m, dtype=object)
    dist[0] = 1
    for a in diag:
        c = _square_counts(a, m, step)
        new = np.zeros(m, dtype=object)
        for r in np.nonzero(dist)[0]:
            for s in np.nonzero(c)[0]:
                new[(r + s) % m] += dist[r] * c[s]
        dist = new
    return int(dist[0])


def obstruction_moduli(diag: list[int]) -> list[tuple[int, int]]:
    """(modulus, prime) pairs scanned for local obstructions."""
    mods = [(8, 2), (16, 2)]
    for p in sympy.primerange(3, 51):
        if any(a % p == 0 for a in diag):
            mods.append((p * p, int(p)))
    return mods


def modular_obstruction(diag: list[int]) -> dict | None:
    """A modulus p^k with no solution of sum a_i v_i^2 = 0 mod p^k having some
    v_i prime to p.  Any nonzero rational zero scales to a primitive integer
    zero, which would reduce to such a solution, so this certifies anisotropy."""
    for m, p in obstruction_moduli(diag):
        total = _zero_count(diag, m, 1)
        imprimitive = _zero_count(diag, m, p)
        if total == imprimitive:
            return {"modulus": m, "prime": p, "solutions": total, "all_divisible_by_p": imprimitive}
    return None


def isotropy_search(diag: list[int], height: int) -> list[int] | None:
    """First nonzero integer zero of the form with the free coordinates of
    max-abs <= height (the last coordinate is solved for)."""
    *head, last = diag
    k = len(head)
    for h in range(0, height + 1):
        for v in itertools.product(range(-h, h + 1), repeat=k):
            if h and max(map(abs, v)) != h:
                continue
            s = form_value(head, v)
            if s % last:
                continue
            z2 = -s // last
            if z2 < 0:
                continue
            z = isqrt(z2)
            if z * z == z2 and (z or any(v)):
                w = list(v) + [z]
                if form_value(diag, w) != 0:
                    raise AssertionError("isotropy witness failed re-evaluation")
                return w
    return None


def classify_cocompactness(X: str, F: NumberField, n: int, B: ModelForm | None = None) -> CocompactnessVerdict:
    if X not in ("R", "C", "H"):
        raise ValueError(f"X must be one of R, C, H, not {X!r}")
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if B is not None and B.n != n:
        raise ValueError(f"form has dimension {B.n}, expected {n}")
    if not F.is_rationals:
        if not F.is_totally_real:
            raise ValueError("F must be totally real")
        if B is None:
            raise ValueError("an admissible form is required when F != Q")
        if B.field != F:
            raise ValueError("form is defined over a different field")
        rep = is_admissible(B)
        if not rep:
            raise ValueError(f"form is not admissible: signatures {rep.signatures}")
        return CocompactnessVerdict("cocompact", "F != Q totally real with admissible B: cocompact",
                                    details={"signatures": [list(s) for s in rep.signatures]})
    if X == "H":
        return CocompactnessVerdict("noncocompact", "F = Q, X = H: noncocompact for all B")
    if X == "C" and n > 1:
        return CocompactnessVerdict("noncocompact", "F = Q, X = C, n > 1: noncocompact for all B")
    if X == "R" and n > 3:
        return CocompactnessVerdict("noncocompact", "F = Q, X = R, n > 3: noncocompact for all B")
    if X == "C":
        return CocompactnessVerdict("indeterminate", "F = Q, X = C, n = 1: hermitian isotropy not decided")
    if B is None:
        B = standard_form(n)
    diag = _integer_diagonal(B)
    obs = modular_obstruction(diag)
    if obs is not None:
        return CocompactnessVerdict("cocompact", "F = Q, X = R, n <= 3: anisotropic by modular obstruction",
                                    certificate=obs, details={"diagonal": diag})
    caps = get_caps()
    height = int(min(caps.isotropy_height, caps.isotropy_budget ** (1 / n)))
    w = isotropy_search(diag, height)
    if w is not None:
        return CocompactnessVerdict("noncocompact", "F = Q, X = R, n <= 3: isotropic, witness found",
                                    witness=w, details={"diagonal": diag})
    return CocompactnessVerdict("indeterminate", "F = Q, X = R, n <= 3: no witness or obstruction within bounds",
                                details={"diagonal": diag, "height": height})


# -- form preservation -----------------------------------------------------------

def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, NumberFieldElement, np.integer))


def preserves_form(A, B) -> bool:
    """A* B A == B (exactly for integer / rational / field entries, to 1e-10 for
    floating real or complex entries).  B may be a diagonal list or a matrix."""
    rows = [list(r) for r in A]
    m = len(rows)
    if any(len(r) != m for r in rows):
        raise ValueError("A must be square")
    Bm = [list(r) for r in B] if isinstance(B[0], (list, tuple, np.ndarray)) else \
        [[B[i] if i == j else 0 for j in range(len(B))] for i in range(len(B))]
    if len(Bm) != m:
        raise ValueError("dimension mismatch between A and B")
    exact = all(_is_exact(x) for r in rows for x in r) and all(_is_exact(x) for r in Bm for x in r)
    if exact:
        # real symmetric case: transpose is the adjoint
        BA = [[sum((Bm[i][k] * rows[k][j] for k in range(m)), 0) for j in range(m)] for i in range(m)]
        lhs = [[sum((rows[k][i] * BA[k][j] for k in range(m)), 0) for j in range(m)] for i in range(m)]
        return all(lhs[i][j] == Bm[i][j] for i in range(m) for j in range(m))
    Af = np.array(rows, dtype=complex)
    Bf = np.array(Bm, dtype=complex)
    return bool(np.allclose(Af.conj().T @ Bf @ Af, Bf, rtol=0, atol=1e-10))

"""Sturm sequences, real root isolation and exact signs at real roots.

Everything here is rational arithmetic; no floating point enters a decision.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polynomials import IntegerPolynomial, is_squarefree, poly_radical


def _to_int_poly(coeffs) -> IntegerPolynomial:
    """Positive rational multiple of a Fraction coefficient list, as a primitive Z-poly."""
    coeffs = [Fraction(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    p = IntegerPolynomial(int(c * den) for c in coeffs)
    if p.is_zero():
        return p
    cont = p.content()
    return IntegerPolynomial(c // cont for c in p.coeffs)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def sturm_sequence(f: IntegerPolynomial) -> list[IntegerPolynomial]:
    """f, f', -rem(f, f'), ... each rescaled by a positive constant."""
    seq = [f, f.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        _, rem = seq[-2].divmod_rational(seq[-1])
        if not rem:
            break
        seq.append(-_to_int_poly(rem))
    return [s for s in seq if not s.is_zero()]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: list[IntegerPolynomial], x) -> int:
    signs = [s for s in (_sign(p(x)) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(f: IntegerPolynomial, lo, hi, seq=None) -> int:
    """Distinct real roots of f in the half-open interval (lo, hi]."""
    seq = seq or sturm_sequence(f)
    return sign_variations(seq, Fraction(lo)) - sign_variations(seq, Fraction(hi))


def root_bound(f: IntegerPolynomial) -> Fraction:
    """Cauchy bound: every complex root has |z| < 1 + max|c_i / c_n|."""
    lead = abs(f.lead)
    return 1 + max((Fraction(abs(c), lead) for c in f.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RealEmbedding:
    """A real root of ``poly`` isolated in [lo, hi] (lo == hi for a rational root)."""

    poly: IntegerPolynomial
    index: int
    lo: Fraction
    hi: Fraction

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def approx(self) -> float:
        e = self.refine(Fraction(1, 10**15))
        return float((e.lo + e.hi) / 2)

    def bisect(self) -> "RealEmbedding":
        if self.is_exact:
            return self
        f = self.poly
        mid = (self.lo + self.hi) / 2
        fm = f(mid)
        if fm == 0:
            return RealEmbedding(f, self.index, mid, mid)
        if _sign(f(self.lo)) != _sign(fm):
            return RealEmbedding(f, self.index, self.lo, mid)
        return RealEmbedding(f, self.index, mid, self.hi)

    def refine(self, width) -> "RealEmbedding":
        e = self
        while e.hi - e.lo > width:
            e = e.bisect()
        return e

    def to_json(self) -> dict:
        return {"index": self.index, "lo": str(self.lo), "hi": str(self.hi),
                "approx": self.approx()}


def isolate_real_roots(f: IntegerPolynomial) -> list[RealEmbedding]:
    """Disjoint isolating intervals, one per real root, in increasing order."""
    if f.degree < 1:
        raise ValueError("polynomial must be nonconstant")
    if not is_squarefree(f):
        raise ValueError("polynomial is not squarefree")
    seq = sturm_sequence(f)
    B = root_bound(f)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-B, B)]
    # f(-B), f(B) are nonzero because B is a strict bound
    while stack:
        lo, hi = stack.pop()
        n = count_real_roots(f, lo, hi, seq)
        if n == 0:
            continue
        if n == 1:
            out.append(_clean_endpoints(f, seq, lo, hi))
            continue
        mid = (lo + hi) / 2
        if f(mid) == 0:
            out.append((mid, mid))
            # split off a small punctured neighbourhood around the exact root
            eps = (hi - lo) / 4
            while count_real_roots(f, mid - eps, mid + eps, seq) > 1:
                eps /= 2
            stack.append((lo, mid - eps))
            stack.append((mid + eps, hi))
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    out.sort()
    return [RealEmbedding(f, i, lo, hi) for i, (lo, hi) in enumerate(out)]


def _clean_endpoints(f, seq, lo, hi):
    """Shrink (lo, hi] holding one root so that f is nonzero at both ends."""
    if f(hi) == 0:
        return hi, hi
    while f(lo) == 0:
        mid = (lo + hi) / 2
        if f(mid) == 0:
            return mid, mid
        if count_real_roots(f, lo, mid, seq) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def sign_at_root(g_coeffs, e: RealEmbedding) -> int:
    """Exact sign of g(root) for a rational-coefficient polynomial g."""
    g = _to_int_poly(g_coeffs)  # positive multiple, same sign
    if g.is_zero():
        return 0
    if e.is_exact:
        return _sign(g(e.lo))
    if g.degree == 0:
        return _sign(g.coeffs[0])
    rad = poly_radical(g)
    if _shares_root(e, rad):
        return 0
    seq = sturm_sequence(rad)
    while True:
        if e.is_exact:
            return _sign(g(e.lo))
        glo = g(e.lo)
        if glo != 0 and count_real_roots(rad, e.lo, e.hi, seq) == 0:
            return _sign(glo)
        e = e.bisect()


def _shares_root(e: RealEmbedding, g: IntegerPolynomial) -> bool:
    from .polynomials import poly_gcd

    h = poly_gcd(e.poly, g)
    if h.degree < 1:
        return False
    # the root of f in (lo, hi] is a root of h iff h changes sign / vanishes there
    if h(e.hi) == 0:
        return True
    return count_real_roots(h, e.lo, e.hi) == 1

"""Exact integer and mod-p linear algebra.

Characteristic polynomials of small matrices use Berkowitz's division-free
recursion over Z.  Larger ones are computed modulo enough primes below 2^26 to
exceed an a-priori coefficient bound and lifted by CRT; the bound makes the
result exact, not probabilistic.
"""
from __future__ import annotations

from math import comb

import numpy as np

from ..config import check_cap
from .finite_field import is_prime
from .polynomials import IntegerPolynomial

BERKOWITZ_MAX_DIM = 24
_PRIME_TOP = 1 << 26


def _as_int_rows(M) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in (M.tolist() if isinstance(M, np.ndarray) else M)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    return rows


def berkowitz_charpoly(M) -> IntegerPolynomial:
    """det(xI - M) by Berkowitz's algorithm (no divisions)."""
    A = _as_int_rows(M)
    n = len(A)
    if n == 0:
        return IntegerPolynomial([1])
    # vector of coefficients, descending powers, of the running charpoly
    poly = [1, -A[0][0]]
    for k in range(1, n):
        R = A[k][:k]                       # row k, columns < k
        C = [A[i][k] for i in range(k)]    # column k, rows < k
        Asub = [row[:k] for row in A[:k]]
        # Toeplitz column: 1, -a_kk, -R C, -R A C, -R A^2 C, ...
        col = [1, -A[k][k]]
        v = C
        for _ in range(k):
            col.append(-sum(r * x for r, x in zip(R, v)))
            v = [sum(Asub[i][j] * v[j] for j in range(k)) for i in range(k)]
        new = [0] * (k + 2)
        for i in range(k + 2):
            s = 0
            for j in range(min(i, k) + 1):
                if i - j < len(col):
                    s += col[i - j] * poly[j]
            new[i] = s
        poly = new
    return IntegerPolynomial(reversed(poly))


def bareiss_det(M) -> int:
    """Fraction-free Gaussian elimination determinant."""
    A = _as_int_rows(M)
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def primes_below(top: int):
    p = top - 1
    while p > 2:
        if is_prime(p):
            yield p
        p -= 1


def hessenberg_charpoly_mod(M: np.ndarray, p: int) -> np.ndarray:
    """Ascending coefficients of det(xI - M) mod p (p < 2^26, dim <= 1024)."""
    H = np.array(M, dtype=np.int64) % p
    n = H.shape[0]
    for j in range(n - 2):
        nz = np.nonzero(H[j + 1:, j])[0]
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            H[[i, j + 1], :] = H[[j + 1, i], :]
            H[:, [i, j + 1]] = H[:, [j + 1, i]]
        inv = pow(int(H[j + 1, j]), -1, p)
        u = (H[j + 2:, j] * inv) % p
        if not u.any():
            continue
        # columns left of j are already zero below the subdiagonal
        H[j + 2:, j:] = (H[j + 2:, j:] - np.outer(u, H[j + 1, j:]) % p) % p
        H[:, j + 1] = (H[:, j + 1] + (H[:, j + 2:] @ u) % p) % p
    # Hessenberg recursion; P[m] holds p_m ascending, length n+1
    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    P[0, 0] = 1
    # prods[i-1] = prod_{j=i+1..m} h_{j,j-1} (1-based), extended as m grows
    prods = np.zeros(0, dtype=np.int64)
    for m in range(1, n + 1):
        prev = P[m - 1]
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = prev[:-1]
        cur = (cur - H[m - 1, m - 1] * prev) % p
        if m > 1:
            # c_i = h_{i,m} * prod_{j=i+1..m} h_{j,j-1}   (1-based i = 1..m-1)
            sub = int(H[m - 1, m - 2])
            prods = np.append(prods * sub % p, sub)
            coeffs = H[: m - 1, m - 1] * prods % p
            cur[:m] = (cur[:m] - (coeffs @ P[: m - 1, :m]) % p) % p
        P[m] = cur
    return P[n]


def _crt_symmetric(residues: list[np.ndarray], primes: list[int]) -> list[int]:
    modulus = 1
    acc = [0] * len(residues[0])
    for r, p in zip(residues, primes):
        inv = pow(modulus % p, -1, p)
        for i, x in enumerate(r.tolist()):
            t = (x - acc[i]) * inv % p
            acc[i] += modulus * t
        modulus *= p
    half = modulus // 2
    return [a - modulus if a > half else a for a in acc]


def charpoly_coefficient_bound(A: list[list[int]]) -> int:
    n = len(A)
    rho = max((sum(abs(x) for x in row) for row in A), default=0)
    return max(comb(n, k) * rho**k for k in range(n + 1))


def multimodular_charpoly(M) -> IntegerPolynomial:
    A = _as_int_rows(M)
    n = len(A)
    bound = 2 * charpoly_coefficient_bound(A) + 1
    arr = np.array(A, dtype=object)
    residues, primes, prod = [], [], 1
    for p in primes_below(_PRIME_TOP):
        Mp = np.array((arr % p).tolist(), dtype=np.int64).reshape(n, n)
        residues.append(hessenberg_charpoly_mod(Mp, p))
        primes.append(p)
        prod *= p
        if prod > bound:
            break
    return IntegerPolynomial(_crt_symmetric(residues, primes))


def integer_charpoly(M) -> IntegerPolynomial:
    """det(xI - M) for a square integer matrix, exactly."""
    A = _as_int_rows(M)
    n = len(A)
    check_cap("matrix_dim", n)
    if n <= BERKOWITZ_MAX_DIM:
        return berkowitz_charpoly(A)
    return multimodular_charpoly(A)


# -- mod-p helpers used by the character-table code --------------------------

def rref_mod(A: np.ndarray, p: int):
    """Row echelon form mod p; returns (R, pivot_columns)."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[i, r]] = R[[r, i]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if others.size:
            R[others] = (R[others] - np.outer(R[others, c], R[r]) % p) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def nullspace_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of {v : A v = 0} mod p as the columns of the returned matrix."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    R, pivots = rref_mod(A, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-R[row, f]) % p
    return basis


def roots_mod(coeffs: np.ndarray, p: int) -> list[int]:
    """All roots in F_p of an ascending-coefficient polynomial (exhaustive)."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(np.asarray(coeffs, dtype=np.int64).tolist()):
        acc = (acc * xs + c) % p
    return np.nonzero(acc == 0)[0].tolist()

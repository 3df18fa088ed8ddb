"""Projective model of hyperbolic space over R, C and H.

Points are B-negative lines for B = I_{n,1}; scalars act on the right.
Quaternions are length-4 float arrays (w, i, j, k); reals and complexes are
embedded as (a, 0, 0, 0) and (a, b, 0, 0).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

QUOTIENT_TOLERANCE = 1e-12


def qmul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                     a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                     a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                     a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2])


def qconj(q: np.ndarray) -> np.ndarray:
    return np.array([q[0], -q[1], -q[2], -q[3]])


def as_quaternion(x) -> np.ndarray:
    if isinstance(x, np.ndarray) and x.shape == (4,):
        return x.astype(float)
    if isinstance(x, (list, tuple)) and len(x) == 4:
        return np.array(x, dtype=float)
    z = complex(x)
    return np.array([z.real, z.imag, 0.0, 0.0])


def _allowed(X: str, q: np.ndarray) -> bool:
    if X == "R":
        return not q[1:].any()
    if X == "C":
        return not q[2:].any()
    return True


def form_value(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """B(x, y) = y* I_{n,1} x as a quaternion."""
    acc = np.zeros(4)
    last = len(x) - 1
    for i in range(len(x)):
        term = qmul(qconj(y[i]), x[i])
        acc = acc - term if i == last else acc + term
    return acc


@dataclass
class ProjectivePoint:
    coords: np.ndarray  # shape (n+1, 4)
    X: str

    @classmethod
    def make(cls, coords, X: str = "R") -> "ProjectivePoint":
        if X not in ("R", "C", "H"):
            raise ValueError(f"X must be R, C or H, not {X!r}")
        q = np.array([as_quaternion(c) for c in coords])
        if len(q) < 2:
            raise ValueError("need at least two coordinates")
        for c in q:
            if not _allowed(X, c):
                raise ValueError(f"coordinate {c} is not in {X}")
        v = form_value(q, q)
        if not v[0] < 0:
            raise ValueError("point is not B-negative")
        return cls(q, X)

    @property
    def norm(self) -> float:
        return float(form_value(self.coords, self.coords)[0])

    def scaled(self, lam) -> "ProjectivePoint":
        lam = as_quaternion(lam)
        return ProjectivePoint(np.array([qmul(c, lam) for c in self.coords]), self.X)


def distance_quotient(x: ProjectivePoint, y: ProjectivePoint) -> float:
    bxy = form_value(x.coords, y.coords)
    byx = form_value(y.coords, x.coords)
    num = qmul(bxy, byx)
    return float(num[0] / (x.norm * y.norm))


def hyperbolic_distance(x: ProjectivePoint, y: ProjectivePoint, X: str | None = None) -> float:
    """d with cosh^2 d = B(x,y) B(y,x) / (B(x,x) B(y,y))."""
    if len(x.coords) != len(y.coords):
        raise ValueError("points live in different dimensions")
    if X is not None and (x.X != X or y.X != X) and not (X == "H"):
        raise ValueError("points are not over the requested division algebra")
    q = distance_quotient(x, y)
    if q < 1 - QUOTIENT_TOLERANCE:
        raise ValueError(f"distance quotient {q} below 1")
    return float(np.arccosh(np.sqrt(max(q, 1.0))))


def real_distance(x, y) -> float:
    """Same metric evaluated with plain real arithmetic."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)

    def b(u, v):
        return float(u[:-1] @ v[:-1] - u[-1] * v[-1])

    bxx, byy = b(x, x), b(y, y)
    if bxx >= 0 or byy >= 0:
        raise ValueError("point is not B-negative")
    q = b(x, y) ** 2 / (bxx * byy)
    if q < 1 - QUOTIENT_TOLERANCE:
        raise ValueError(f"distance quotient {q} below 1")
    return float(np.arccosh(np.sqrt(max(q, 1.0))))


def apply_matrix(A, x: ProjectivePoint) -> ProjectivePoint:
    """Left action by a real matrix."""
    A = np.asarray(A, dtype=float)
    out = np.zeros_like(x.coords)
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            out[i] += A[i, j] * x.coords[j]
    return ProjectivePoint(out, x.X)

"""Exact rational linear algebra: ranks, kernels, subspace intersections and
signatures of symmetric forms.

Matrices are 2-D numpy arrays with ``fractions.Fraction`` entries (dtype
object).  Every verdict-facing computation here is tolerance-free; floating
point never enters this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

__all__ = [
    "RationalMatrix",
    "Subspace",
    "fmat",
    "fvec",
    "rank",
    "kernel",
    "intersect",
    "signature",
    "rref",
    "CoordinateSolver",
    "rank_at_least_modp",
    "is_rational_square",
    "rational_sqrt",
    "primitive_vector",
]

# A RationalMatrix is simply an object-dtype numpy array of Fractions; the
# alias documents intent in signatures.
RationalMatrix = np.ndarray


def fmat(rows) -> RationalMatrix:
    """Build a rational matrix from any nested iterable of numbers."""
    rows = [list(r) for r in rows]
    m, n = len(rows), len(rows[0]) if rows else 0
    out = np.empty((m, n), dtype=object)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValueError("ragged rows")
        for j, x in enumerate(r):
            out[i, j] = Fraction(x)
    return out


def fvec(entries) -> np.ndarray:
    out = np.empty(len(entries), dtype=object)
    for i, x in enumerate(entries):
        out[i] = Fraction(x)
    return out


def _as_frac_array(m) -> RationalMatrix:
    if isinstance(m, np.ndarray) and m.dtype == object:
        return m
    return fmat(m)


def _integerize_rows(A: RationalMatrix):
    """Scale each row to integers (per-row lcm), returning Python-int rows."""
    out = []
    for row in A:
        l = 1
        for x in row:
            d = Fraction(x).denominator
            l = l * d // gcd(l, d)
        out.append([int(Fraction(x) * l) for x in row])
    return out


def rank(m) -> int:
    """Exact rank over the rationals (fraction-free Bareiss elimination)."""
    A = _integerize_rows(_as_frac_array(m))
    if not A or not A[0]:
        return 0
    A = np.array(A, dtype=object)
    rows, cols = A.shape
    r = 0
    prev = 1
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if A[i, c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        below = A[r + 1 :]
        if len(below):
            # Bareiss step: exact integer division keeps entries as minors
            updated = (A[r, c] * below - np.outer(below[:, c], A[r])) // prev
            A[r + 1 :] = updated
        prev = A[r, c]
        r += 1
        if r == rows:
            break
    return r


def rank_at_least_modp(m, target: int, p: int = 999999937) -> bool:
    """Certify rank(m) >= target via elimination mod a large prime.

    A full-rank witness mod p is a valid exact certificate (minors that are
    nonzero mod p are nonzero over Q); a shortfall proves nothing.
    """
    A = _integerize_rows(_as_frac_array(m))
    if not A:
        return target <= 0
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if M[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        if r + 1 < rows:
            f = M[r + 1 :, c : c + 1]
            M[r + 1 :] = (M[r + 1 :] - f * M[r]) % p
        r += 1
        if r >= target or r == rows:
            break
    return r >= target


def rref(m):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    A = _as_frac_array(m).copy()
    rows, cols = A.shape
    piv_cols = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if A[i, c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] / A[r, c]
        for i in range(rows):
            if i != r and A[i, c] != 0:
                A[i] = A[i] - A[i, c] * A[r]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    return A, piv_cols


def kernel(m) -> list[np.ndarray]:
    """Basis of the right kernel {x : m x = 0}, exact."""
    A = _as_frac_array(m)
    rows, cols = A.shape
    R, piv_cols = rref(A)
    free = [c for c in range(cols) if c not in piv_cols]
    out = []
    for fc in free:
        v = np.empty(cols, dtype=object)
        for j in range(cols):
            v[j] = Fraction(0)
        v[fc] = Fraction(1)
        for i, pc in enumerate(piv_cols):
            v[pc] = -R[i, fc]
        out.append(v)
    return out


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim given by an independent basis (rows)."""

    ambient_dim: int
    basis: tuple  # tuple of object-dtype vectors

    @staticmethod
    def from_rows(rows, ambient_dim: int | None = None) -> "Subspace":
        rows = [fvec(r) for r in rows]
        if ambient_dim is None:
            if not rows:
                raise ValueError("ambient_dim required for empty basis")
            ambient_dim = len(rows[0])
        if rows:
            mat = np.array([list(r) for r in rows], dtype=object)
            if rank(mat) != len(rows):
                # keep an independent subset, deterministic (first-seen pivots)
                R, piv = rref(mat.T)
                rows = [rows[i] for i in piv]
        return Subspace(ambient_dim, tuple(rows))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> RationalMatrix:
        if not self.basis:
            return np.empty((0, self.ambient_dim), dtype=object)
        return np.array([list(r) for r in self.basis], dtype=object)

    def contains(self, vec) -> bool:
        v = fvec(vec)
        if self.dim == 0:
            return all(x == 0 for x in v)
        stacked = np.vstack([self.matrix(), v.reshape(1, -1)])
        return rank(stacked) == self.dim


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(
            f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}"
        )
    if a.dim == 0 or b.dim == 0:
        return Subspace(a.ambient_dim, ())
    # x = c.A = d.B  =>  [A^T | -B^T] (c,d)^T = 0
    M = np.hstack([a.matrix().T, -b.matrix().T])
    vecs = []
    for k in kernel(M):
        coeffs = k[: a.dim]
        x = np.zeros(a.ambient_dim, dtype=object)
        for ci, row in zip(coeffs, a.basis):
            if ci != 0:
                x = x + ci * row
        vecs.append(primitive_vector(x))
    return Subspace.from_rows(vecs, a.ambient_dim) if vecs else Subspace(a.ambient_dim, ())


def signature(form) -> tuple[int, int, int]:
    """Sylvester signature (positive, negative, null) of a symmetric rational
    matrix, by exact congruence diagonalization."""
    A = _as_frac_array(form)
    n = A.shape[0]
    if A.shape[0] != A.shape[1] or not (A == A.T).all():
        raise ValueError("form must be symmetric")
    A = [[Fraction(x) for x in row] for row in A]
    plus = minus = null = 0
    size = n
    while size > 0:
        d = next((i for i in range(size) if A[i][i] != 0), None)
        if d is None:
            od = None
            for i in range(size):
                for j in range(i + 1, size):
                    if A[i][j] != 0:
                        od = (i, j)
                        break
                if od:
                    break
            if od is None:
                null += size
                break
            i, j = od
            # fold row/col j into i so the diagonal picks up 2*A[i][j]
            for k in range(size):
                A[i][k] = A[i][k] + A[j][k]
            for k in range(size):
                A[k][i] = A[k][i] + A[k][j]
            d = i
        pv = A[d][d]
        if pv > 0:
            plus += 1
        else:
            minus += 1
        rest = [i for i in range(size) if i != d]
        A = [
            [A[i][j] for j in rest]
            if A[i][d] == 0
            else [A[i][j] - A[i][d] * A[d][j] / pv for j in rest]
            for i in rest
        ]
        size -= 1
    return plus, minus, null


class CoordinateSolver:
    """Solve for coordinates in a fixed independent basis of row vectors.

    Precomputes an RREF transform once; each solve is a small matrix-vector
    product plus an exact membership check.
    """

    def __init__(self, basis_rows: RationalMatrix):
        B = _as_frac_array(basis_rows)
        d, n = B.shape
        # track the row transform C with R = C @ B in RREF
        A = B.copy()
        C = np.empty((d, d), dtype=object)
        for i in range(d):
            for j in range(d):
                C[i, j] = Fraction(1) if i == j else Fraction(0)
        piv = []
        r = 0
        for c in range(n):
            pr = next((i for i in range(r, d) if A[i, c] != 0), None)
            if pr is None:
                continue
            if pr != r:
                A[[r, pr]] = A[[pr, r]]
                C[[r, pr]] = C[[pr, r]]
            pv = A[r, c]
            A[r] = A[r] / pv
            C[r] = C[r] / pv
            for i in range(d):
                if i != r and A[i, c] != 0:
                    f = A[i, c]
                    A[i] = A[i] - f * A[r]
                    C[i] = C[i] - f * C[r]
            piv.append(c)
            r += 1
            if r == d:
                break
        if r != d:
            raise ValueError("basis rows are dependent")
        self.basis = B
        self.transform = C
        self.pivots = piv
        self.dim = d
        self.ambient = n

    def coords(self, vec, check: bool = True) -> np.ndarray:
        v = vec if isinstance(vec, np.ndarray) else fvec(vec)
        y = np.array([v[c] for c in self.pivots], dtype=object)
        x = y @ self.transform
        if check:
            recon = x @ self.basis
            if not all(a == b for a, b in zip(recon, v)):
                raise ValueError("vector not in span")
        return x

    def try_coords(self, vec):
        try:
            return self.coords(vec, check=True)
        except ValueError:
            return None


def primitive_vector(vec) -> np.ndarray:
    """Clear denominators, divide by content, normalize leading sign."""
    v = [Fraction(x) for x in vec]
    l = 1
    for x in v:
        l = l * x.denominator // gcd(l, x.denominator)
    ints = [int(x * l) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return fvec(ints)


def is_rational_square(x) -> bool:
    x = Fraction(x)
    if x < 0:
        return False
    return (
        isqrt(x.numerator) ** 2 == x.numerator
        and isqrt(x.denominator) ** 2 == x.denominator
    )


def rational_sqrt(x) -> Fraction:
    x = Fraction(x)
    if not is_rational_square(x):
        raise ValueError(f"{x} is not a rational square")
    return Fraction(isqrt(x.numerator), isqrt(x.denominator))

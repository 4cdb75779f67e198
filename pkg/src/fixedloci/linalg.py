"""Exact integer and rational linear algebra.

Hermite and Smith normal forms with unimodular transforms, integer kernels,
cokernels with a chosen section, and rational Gaussian elimination.  All
arithmetic uses arbitrary-precision ints and fractions.Fraction; there is no
floating point anywhere in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimMismatch, NotInjective, TorsionCokernel


# ---------------------------------------------------------------------------
# vectors (plain tuples)

def dot(u, v):
    if len(u) != len(v):
        raise DimMismatch("vector dims %d vs %d" % (len(u), len(v)))
    return sum(a * b for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u):
    return tuple(-a for a in u)


def vec_scale(c, u):
    return tuple(c * a for a in u)


def primitive(v):
    """Scale an integer vector down so the gcd of its entries is 1.

    The zero vector is returned unchanged and the direction is preserved.
    """
    g = 0
    for a in v:
        g = math.gcd(g, a)
    if g <= 1:
        return tuple(int(a) for a in v)
    return tuple(int(a) // g for a in v)


def rational_primitive(v):
    """Primitive integer vector on the ray through a rational vector."""
    den = 1
    for a in v:
        a = Fraction(a)
        den = den * a.denominator // math.gcd(den, a.denominator)
    ints = tuple(int(Fraction(a) * den) for a in v)
    return primitive(ints)


def is_zero_vec(v):
    return all(a == 0 for a in v)


# ---------------------------------------------------------------------------
# integer matrices

@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix; ncols is explicit so 0-row matrices work."""

    entries: tuple
    ncols: int

    @staticmethod
    def from_rows(rows, ncols=None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows:
            n = len(rows[0])
            if any(len(r) != n for r in rows):
                raise DimMismatch("ragged rows")
            if ncols is None:
                ncols = n
            elif ncols != n:
                raise DimMismatch("ncols=%d but rows have length %d" % (ncols, n))
        elif ncols is None:
            raise ValueError("ncols required for a matrix with no rows")
        return IntMatrix(rows, ncols)

    @staticmethod
    def identity(n):
        return IntMatrix(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @staticmethod
    def zero(m, n):
        return IntMatrix(tuple(tuple(0 for _ in range(n)) for _ in range(m)), n)

    @property
    def nrows(self):
        return len(self.entries)

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self):
        return IntMatrix(tuple(self.col(j) for j in range(self.ncols)), self.nrows)

    def mul(self, other):
        if self.ncols != other.nrows:
            raise DimMismatch("matmul %dx%d by %dx%d" % (self.nrows, self.ncols, other.nrows, other.ncols))
        cols = [other.col(j) for j in range(other.ncols)]
        return IntMatrix(
            tuple(tuple(dot(r, c) for c in cols) for r in self.entries), other.ncols
        )

    def apply(self, v):
        if len(v) != self.ncols:
            raise DimMismatch("apply %dx%d to vector of length %d" % (self.nrows, self.ncols, len(v)))
        return tuple(dot(r, v) for r in self.entries)

    def is_zero(self):
        return all(is_zero_vec(r) for r in self.entries)

    def submatrix_rows(self, indices):
        return IntMatrix(tuple(self.entries[i] for i in indices), self.ncols)

    def submatrix_cols(self, indices):
        return IntMatrix(tuple(tuple(r[j] for j in indices) for r in self.entries), len(indices))


# ---------------------------------------------------------------------------
# normal forms

def hnf(A: IntMatrix):
    """Row Hermite normal form.

    Returns (H, U) with U*A = H, U unimodular, H in row echelon form with
    positive pivots and the entries above each pivot reduced into [0, pivot).
    """
    m, n = A.nrows, A.ncols
    H = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_sub(i, j, q):
        H[i] = [a - q * b for a, b in zip(H[i], H[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    r = 0
    for c in range(n):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(H[i][c]), i))
            if i0 != r:
                H[r], H[i0] = H[i0], H[r]
                U[r], U[i0] = U[i0], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    row_sub(i, r, q)
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if r < m and H[r][c] != 0:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
                U[r] = [-a for a in U[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    row_sub(i, r, q)
            r += 1
    return IntMatrix.from_rows(H, n), IntMatrix.from_rows(U, m)


def smith(A: IntMatrix):
    """Smith normal form with transforms: returns (D, U, V), U*A*V = D.

    D is diagonal with nonnegative entries d_1 | d_2 | ...; U and V are
    unimodular.
    """
    m, n = A.nrows, A.ncols
    H = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_sub(i, j, q):
        H[i] = [a - q * b for a, b in zip(H[i], H[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_sub(i, j, q):
        for row in H:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def block_pivots(t):
        return [(abs(H[i][j]), i, j) for i in range(t, m) for j in range(t, n) if H[i][j] != 0]

    for t in range(min(m, n)):
        piv = block_pivots(t)
        if not piv:
            break
        while True:
            _, pi, pj = min(piv)
            if pi != t:
                H[t], H[pi] = H[pi], H[t]
                U[t], U[pi] = U[pi], U[t]
            if pj != t:
                for row in H:
                    row[t], row[pj] = row[pj], row[t]
                for row in V:
                    row[t], row[pj] = row[pj], row[t]
            clean = True
            for i in range(t + 1, m):
                if H[i][t]:
                    row_sub(i, t, H[i][t] // H[t][t])
                    if H[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if H[t][j]:
                    col_sub(j, t, H[t][j] // H[t][t])
                    if H[t][j]:
                        clean = False
            if clean:
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if H[i][j] % H[t][t] != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_sub(t, bad, -1)
            piv = block_pivots(t)
        if H[t][t] < 0:
            H[t] = [-a for a in H[t]]
            U[t] = [-a for a in U[t]]
    return IntMatrix.from_rows(H, n), IntMatrix.from_rows(U, m), IntMatrix.from_rows(V, n)


def rank(A: IntMatrix):
    H, _ = hnf(A)
    return sum(1 for r in H.entries if not is_zero_vec(r))


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel {x : A x = 0}, as rows (saturated lattice)."""
    H, U = hnf(A.transpose())
    rows = [U.entries[i] for i in range(H.nrows) if is_zero_vec(H.entries[i])]
    return IntMatrix.from_rows(rows, A.ncols)


# ---------------------------------------------------------------------------
# rational elimination

def solve_rational(rows, b):
    """One exact solution of (rows) x = b over Q, or None if inconsistent.

    rows: sequence of coefficient rows, b: right-hand side.  Free variables
    are set to 0.
    """
    m = len(rows)
    n = len(rows[0]) if m else len(b) * 0
    aug = [[Fraction(x) for x in rows[i]] + [Fraction(b[i])] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [a * inv for a in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * bb for a, bb in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][n]
    return tuple(x)


def rational_inverse(rows):
    """Exact inverse of a square rational matrix, or None if singular."""
    n = len(rows)
    aug = [[Fraction(x) for x in rows[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            return None
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [a * inv for a in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * bb for a, bb in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def det_rational(rows):
    """Exact determinant of a square rational matrix."""
    n = len(rows)
    M = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    inv = rational_inverse(U.entries)
    if inv is None:
        raise ValueError("matrix is singular")
    rows = []
    for r in inv:
        if any(x.denominator != 1 for x in r):
            raise ValueError("matrix is not unimodular")
        rows.append(tuple(int(x) for x in r))
    return IntMatrix.from_rows(rows, U.nrows)


# ---------------------------------------------------------------------------
# cokernel of an injective lattice map, with section

def cokernel_with_section(a: IntMatrix):
    """Cokernel projection and section for an injective lattice map.

    a is an m x r integer matrix, the map Z^r -> Z^m.  Returns (pi, c) where
    pi is (m-r) x m with pi*a = 0 and pi surjective (as a lattice map), and
    c is m x (m-r) with pi*c = identity.

    Raises NotInjective when a has a kernel and TorsionCokernel when the
    quotient lattice has torsion (the free-action setup then fails).
    """
    m, r = a.nrows, a.ncols
    D, U, _ = smith(a)
    diag = [D.entries[i][i] for i in range(min(m, r))]
    rk = sum(1 for d in diag if d != 0)
    if rk < r:
        raise NotInjective("lattice map has rank %d < %d" % (rk, r))
    if any(d != 1 for d in diag[:r]):
        raise TorsionCokernel("cokernel has invariant factors %s" % (diag,))
    pi = U.submatrix_rows(range(r, m))
    Uinv = unimodular_inverse(U)
    c = Uinv.submatrix_cols(range(r, m))
    return pi, c


def saturated_lattice_basis(vectors, dim) -> IntMatrix:
    """Canonical basis of span_Q(vectors) intersected with Z^dim, as HNF rows."""
    vecs = [v for v in vectors if not is_zero_vec(v)]
    if not vecs:
        return IntMatrix.from_rows([], dim)
    M = IntMatrix.from_rows(vecs, dim)
    orth = kernel_basis(M)
    sat = kernel_basis(orth) if orth.nrows else IntMatrix.identity(dim)
    H, _ = hnf(sat)
    rows = [r for r in H.entries if not is_zero_vec(r)]
    return IntMatrix.from_rows(rows, dim)

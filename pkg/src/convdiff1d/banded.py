"""Band-storage matrices and LU with partial pivoting.

Storage follows the LAPACK general-band layout: entry ``A[i, j]`` of a matrix
with ``kl`` sub- and ``ku`` super-diagonals sits at ``ab[ku + i - j, j]``.  The
factorization works on an extended copy with ``kl`` extra rows on top, since
row interchanges widen the upper bandwidth of ``U`` to ``kl + ku``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class BandError(IndexError):
    """Access to an entry outside the stored band."""


class SingularMatrixError(np.linalg.LinAlgError):
    def __init__(self, index: int):
        super().__init__(f"matrix is singular: zero pivot in column {index}")
        self.index = index


class BandedMatrix:
    """Square matrix with ``kl`` sub-diagonals and ``ku`` super-diagonals.

    >>> A = BandedMatrix(3, 1, 1)
    >>> A[0, 0] = 2.0
    >>> A[0, 2] = 1.0
    Traceback (most recent call last):
        ...
    convdiff1d.banded.BandError: entry (0, 2) is outside the band (kl=1, ku=1)
    """

    def __init__(self, n: int, kl: int, ku: int):
        if n < 1:
            raise ValueError("dimension must be positive")
        if not (0 <= kl < n and 0 <= ku < n):
            raise ValueError(f"bandwidths must satisfy 0 <= kl, ku < n (n={n}, kl={kl}, ku={ku})")
        self.n = int(n)
        self.kl = int(kl)
        self.ku = int(ku)
        self.ab = np.zeros((kl + ku + 1, n))

    @property
    def shape(self):
        return (self.n, self.n)

    def _slot(self, i, j):
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise BandError(f"entry ({i}, {j}) is outside the {self.n}x{self.n} matrix")
        if not -self.ku <= i - j <= self.kl:
            raise BandError(f"entry ({i}, {j}) is outside the band (kl={self.kl}, ku={self.ku})")
        return self.ku + i - j, j

    def __getitem__(self, ij):
        return self.ab[self._slot(*ij)]

    def __setitem__(self, ij, value):
        self.ab[self._slot(*ij)] = value

    def add(self, i, j, value):
        self.ab[self._slot(i, j)] += value

    def set_diagonal(self, offset: int, values, start: int = 0):
        """Write ``values`` into diagonal ``offset`` (``j - i``) from row ``start`` on."""
        values = np.asarray(values, dtype=float)
        rows = start + np.arange(values.size)
        cols = rows + offset
        if values.size == 0:
            return
        if rows[0] < 0 or rows[-1] >= self.n or cols[0] < 0 or cols[-1] >= self.n:
            raise BandError(f"diagonal {offset} from row {start} leaves the matrix")
        if not -self.ku <= -offset <= self.kl:
            raise BandError(f"diagonal {offset} is outside the band (kl={self.kl}, ku={self.ku})")
        self.ab[self.ku - offset, cols] = values

    def get_diagonal(self, offset: int) -> np.ndarray:
        if not -self.ku <= -offset <= self.kl:
            raise BandError(f"diagonal {offset} is outside the band (kl={self.kl}, ku={self.ku})")
        if offset >= 0:
            return self.ab[self.ku - offset, offset:].copy()
        return self.ab[self.ku - offset, : self.n + offset].copy()

    def set_row(self, i: int, values: dict):
        """Replace row ``i`` by the ``{column: value}`` entries, zeroing the rest."""
        lo, hi = max(0, i - self.kl), min(self.n - 1, i + self.ku)
        for j in range(lo, hi + 1):
            self[i, j] = 0.0
        for j, v in values.items():
            self[i, j] = v

    def row(self, i: int) -> dict:
        lo, hi = max(0, i - self.kl), min(self.n - 1, i + self.ku)
        return {j: self[i, j] for j in range(lo, hi + 1)}

    def to_dense(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for d in range(-self.ku, self.kl + 1):
            diag = self.get_diagonal(-d)
            if d >= 0:
                idx = np.arange(self.n - d)
                A[idx + d, idx] = diag
            else:
                idx = np.arange(self.n + d)
                A[idx, idx - d] = diag
        return A

    @classmethod
    def from_dense(cls, A, kl: int, ku: int, atol: float = 0.0) -> "BandedMatrix":
        A = np.asarray(A, dtype=float)
        n = A.shape[0]
        if A.shape != (n, n):
            raise ValueError("matrix must be square")
        i, j = np.nonzero(np.abs(A) > atol)
        if i.size and ((i - j).max() > kl or (j - i).max() > ku):
            raise BandError(f"matrix has entries outside the band (kl={kl}, ku={ku})")
        M = cls(n, kl, ku)
        for d in range(-ku, kl + 1):
            if d >= 0:
                idx = np.arange(n - d)
                M.set_diagonal(-d, A[idx + d, idx], start=d)
            else:
                idx = np.arange(n + d)
                M.set_diagonal(-d, A[idx, idx - d], start=0)
        return M

    @classmethod
    def from_sparse(cls, S, kl: int, ku: int) -> "BandedMatrix":
        """Copy a ``scipy.sparse`` matrix; explicit zeros outside the band are ignored."""
        coo = S.tocoo()
        n = coo.shape[0]
        if coo.shape != (n, n):
            raise ValueError("matrix must be square")
        keep = coo.data != 0.0
        i, j, v = coo.row[keep], coo.col[keep], coo.data[keep]
        if i.size and ((i - j).max() > kl or (j - i).max() > ku):
            raise BandError(f"matrix has entries outside the band (kl={kl}, ku={ku})")
        M = cls(n, kl, ku)
        np.add.at(M.ab, (ku + i - j, j), v)
        return M

    def matvec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"vector length {x.shape} does not match n={self.n}")
        y = np.zeros(self.n)
        for d in range(-self.ku, self.kl + 1):
            # diagonal with i - j = d
            if d >= 0:
                y[d:] += self.ab[self.ku + d, : self.n - d] * x[: self.n - d]
            else:
                y[: self.n + d] += self.ab[self.ku + d, -d:] * x[-d:]
        return y

    def __matmul__(self, x):
        return self.matvec(x)

    def norm1(self) -> float:
        return float(np.abs(self.ab).sum(axis=0).max())

    def copy(self) -> "BandedMatrix":
        M = BandedMatrix(self.n, self.kl, self.ku)
        M.ab = self.ab.copy()
        return M

    def __repr__(self):
        return f"BandedMatrix(n={self.n}, kl={self.kl}, ku={self.ku})"


@dataclass(frozen=True)
class LUFactors:
    """Output of :func:`lu_factor`.

    ``lu`` holds ``U`` (upper bandwidth ``kl + ku``) and the multipliers of
    ``L`` below the diagonal; ``piv[j]`` is the row swapped with ``j`` at step
    ``j``.
    """

    n: int
    kl: int
    ku: int
    lu: np.ndarray
    piv: np.ndarray

    @property
    def kv(self) -> int:
        return self.kl + self.ku

    def u_dense(self) -> np.ndarray:
        U = np.zeros((self.n, self.n))
        for j in range(self.n):
            for i in range(max(0, j - self.kv), j + 1):
                U[i, j] = self.lu[self.kv + i - j, j]
        return U

    def pl_dense(self):
        """Dense ``(P, L)`` with ``P @ A == L @ U``; for small test instances only."""
        n, kv = self.n, self.kv
        perm = np.arange(n)
        L = np.eye(n)
        for j in range(n):
            p = self.piv[j]
            if p != j:
                perm[[j, p]] = perm[[p, j]]
                L[[j, p], :j] = L[[p, j], :j]
            km = min(self.kl, n - 1 - j)
            L[j + 1 : j + km + 1, j] = self.lu[kv + 1 : kv + km + 1, j]
        P = np.eye(n)[perm]
        return P, L


def lu_factor(A: BandedMatrix) -> LUFactors:
    """LU factorization with row partial pivoting, band storage preserved.

    Raises
    ------
    SingularMatrixError
        When a pivot column is exactly zero.
    """
    n, kl, ku = A.n, A.kl, A.ku
    kv = kl + ku
    lu = np.zeros((2 * kl + ku + 1, n))
    lu[kl:, :] = A.ab
    piv = np.arange(n)

    for j in range(n):
        km = min(kl, n - 1 - j)
        ju = min(j + kv, n - 1)
        col = lu[kv : kv + km + 1, j]
        p = int(np.argmax(np.abs(col)))
        if col[p] == 0.0:
            raise SingularMatrixError(j)
        if p:
            cols = np.arange(j, ju + 1)
            r1, r2 = kv - (cols - j), kv + p - (cols - j)
            tmp = lu[r1, cols].copy()
            lu[r1, cols] = lu[r2, cols]
            lu[r2, cols] = tmp
            piv[j] = j + p
        if km == 0:
            continue
        lu[kv + 1 : kv + km + 1, j] /= lu[kv, j]
        if ju > j:
            mult = lu[kv + 1 : kv + km + 1, j]
            rows = np.arange(1, km + 1)[:, None]
            offs = np.arange(1, ju - j + 1)[None, :]
            cols = j + offs
            pivot_row = lu[kv - offs, cols]
            lu[kv + rows - offs, cols] -= mult[:, None] * pivot_row
    return LUFactors(n, kl, ku, lu, piv)


def solve(F: LUFactors, rhs) -> np.ndarray:
    """Solve ``A x = rhs`` with the factors of ``A``."""
    b = np.array(rhs, dtype=float)
    if b.shape != (F.n,):
        raise ValueError(f"rhs length {b.shape} does not match n={F.n}")
    n, kl, kv, lu = F.n, F.kl, F.kv, F.lu
    for j in range(n):
        p = F.piv[j]
        if p != j:
            b[j], b[p] = b[p], b[j]
        km = min(kl, n - 1 - j)
        if km:
            b[j + 1 : j + km + 1] -= lu[kv + 1 : kv + km + 1, j] * b[j]
    for j in range(n - 1, -1, -1):
        hi = min(n - 1, j + kv)
        if hi > j:
            cols = np.arange(j + 1, hi + 1)
            b[j] -= lu[kv + j - cols, cols] @ b[j + 1 : hi + 1]
        b[j] /= lu[kv, j]
    return b


def solve_transpose(F: LUFactors, rhs) -> np.ndarray:
    """Solve ``A^T x = rhs`` with the factors of ``A``."""
    b = np.array(rhs, dtype=float)
    if b.shape != (F.n,):
        raise ValueError(f"rhs length {b.shape} does not match n={F.n}")
    n, kl, kv, lu = F.n, F.kl, F.kv, F.lu
    # U^T y = b
    for c in range(n):
        lo = max(0, c - kv)
        if lo < c:
            rows = np.arange(lo, c)
            b[c] -= lu[kv + rows - c, c] @ b[lo:c]
        b[c] /= lu[kv, c]
    # then the transposed unit-lower sweeps, last step first
    for j in range(n - 1, -1, -1):
        km = min(kl, n - 1 - j)
        if km:
            b[j] -= lu[kv + 1 : kv + km + 1, j] @ b[j + 1 : j + km + 1]
        p = F.piv[j]
        if p != j:
            b[j], b[p] = b[p], b[j]
    return b


DENSE_ORACLE_MAX_N = 2000


def dense_solve_oracle(A_dense, rhs) -> np.ndarray:
    """Gaussian elimination with partial pivoting on full storage.

    Test oracle for the banded path; it shares no code with it.
    """
    A = np.array(A_dense, dtype=float)
    b = np.array(rhs, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n) or b.shape != (n,):
        raise ValueError("dense oracle needs a square matrix and a matching vector")
    if n > DENSE_ORACLE_MAX_N:
        raise ValueError(f"dense oracle limited to n <= {DENSE_ORACLE_MAX_N}, got {n}")
    for k in range(n):
        p = k + int(np.argmax(np.abs(A[k:, k])))
        if A[p, k] == 0.0:
            raise SingularMatrixError(k)
        if p != k:
            A[[k, p]] = A[[p, k]]
            b[[k, p]] = b[[p, k]]
        m = A[k + 1 :, k] / A[k, k]
        A[k + 1 :, k:] -= np.outer(m, A[k, k:])
        b[k + 1 :] -= m * b[k]
    x = np.zeros(n)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - A[k, k + 1 :] @ x[k + 1 :]) / A[k, k]
    return x


def condition_estimate_1norm(F: LUFactors, A: BandedMatrix, max_iter: int = 5) -> float:
    """Estimate ``||A||_1 * ||A^-1||_1`` (Hager's method, Higham's safeguard).

    The power-type iteration only needs solves with ``A`` and ``A^T``; the
    result is a lower bound for the true 1-norm condition number that is
    usually within a small factor of it.
    """
    n = F.n
    x = np.full(n, 1.0 / n)
    est = 0.0
    last_j = -1
    for _ in range(max_iter):
        y = solve(F, x)
        est_new = float(np.abs(y).sum())
        if est_new <= est and last_j >= 0:
            break
        est = est_new
        xi = np.where(y >= 0.0, 1.0, -1.0)
        z = solve_transpose(F, xi)
        j = int(np.argmax(np.abs(z)))
        if np.abs(z).max() <= z @ x or j == last_j:
            break
        x = np.zeros(n)
        x[j] = 1.0
        last_j = j
    # alternating vector catches cases where the iteration stalls
    if n > 1:
        alt = (-1.0) ** np.arange(n) * (1.0 + np.arange(n) / (n - 1))
        est = max(est, 2.0 * float(np.abs(solve(F, alt)).sum()) / (3.0 * n))
    return A.norm1() * est

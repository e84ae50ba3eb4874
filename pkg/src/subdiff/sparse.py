"""Minimal CSR matrices and an SPD solver (Jacobi-preconditioned CG).

Serves the per-step solves of the time stepper: matrices here are symmetric
positive definite, small (a few thousand rows), and share one sparsity
pattern, so plain CG with a diagonal preconditioner and warm starts is a
better fit than a factorizing solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import SolverFailureError


@dataclass(frozen=True)
class SparseMatrix:
    """Square CSR matrix. Rows must be nonempty (FE matrices carry diagonals)."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray

    def __post_init__(self):
        if self.indptr.shape != (self.n + 1,):
            raise ValueError("indptr length must be n+1")
        if np.any(np.diff(self.indptr) < 1):
            raise ValueError("empty rows are not supported")
        for arr in (self.indptr, self.indices, self.data):
            arr.setflags(write=False)

    @property
    def nnz(self) -> int:
        return int(self.indptr[-1])

    def diagonal(self) -> np.ndarray:
        d = np.zeros(self.n)
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        on_diag = rows == self.indices
        d[rows[on_diag]] = self.data[on_diag]
        return d

    def to_dense(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        A[rows, self.indices] = self.data
        return A

    def max_asymmetry(self) -> float:
        """max |A_ij - A_ji| relative to max |A_ij|."""
        At = self.transpose()
        scale = np.abs(self.data).max() if self.nnz else 1.0
        # patterns may differ in principle; compare densified halves lazily
        if (At.indptr.shape == self.indptr.shape
                and np.array_equal(At.indptr, self.indptr)
                and np.array_equal(At.indices, self.indices)):
            return float(np.abs(At.data - self.data).max() / scale)
        return float(np.abs(self.to_dense() - At.to_dense()).max() / scale)

    def transpose(self) -> "SparseMatrix":
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        return csr_from_coo(self.n, self.indices, rows, self.data)


def csr_from_coo(n: int, rows, cols, vals) -> SparseMatrix:
    """Build CSR from COO triplets, summing duplicates deterministically."""
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    vals = np.asarray(vals, dtype=float)
    order = np.lexsort((cols, rows))  # stable: ties keep input order
    rows, cols, vals = rows[order], cols[order], vals[order]
    new = np.ones(rows.size, dtype=bool)
    new[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
    starts = np.nonzero(new)[0]
    data = np.add.reduceat(vals, starts)
    r = rows[starts]
    c = cols[starts]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, r + 1, 1)
    np.cumsum(indptr, out=indptr)
    return SparseMatrix(n=n, indptr=indptr, indices=c, data=data)


def matvec(A: SparseMatrix, x: np.ndarray) -> np.ndarray:
    """y = A x with a fixed per-row summation order."""
    x = np.asarray(x, dtype=float)
    if x.shape != (A.n,):
        raise ValueError(f"dimension mismatch: matrix {A.n}, vector {x.shape}")
    prod = A.data * x[A.indices]
    return np.add.reduceat(prod, A.indptr[:-1])


def add_scaled(A: SparseMatrix, B: SparseMatrix, a: float, b: float) -> SparseMatrix:
    """a*A + b*B for matrices sharing one sparsity pattern."""
    if not (np.array_equal(A.indptr, B.indptr) and np.array_equal(A.indices, B.indices)):
        raise ValueError("add_scaled requires identical sparsity patterns")
    return SparseMatrix(n=A.n, indptr=A.indptr, indices=A.indices,
                        data=a * A.data + b * B.data)


def write_matrix_market(A: SparseMatrix, path) -> None:
    """Dump in MatrixMarket coordinate format (1-based, general)."""
    with open(path, "w") as fh:
        fh.write("%%MatrixMarket matrix coordinate real general\n")
        fh.write(f"{A.n} {A.n} {A.nnz}\n")
        rows = np.repeat(np.arange(A.n), np.diff(A.indptr))
        for r, c, v in zip(rows, A.indices, A.data):
            fh.write(f"{r + 1} {c + 1} {float(v)!r}\n")


@dataclass(frozen=True)
class LinearSolver:
    """SPD solver bound to one matrix.

    method "cg": Jacobi-preconditioned conjugate gradients (default).
    method "dense_cholesky": dense factorization, for small systems.
    """

    matrix: SparseMatrix
    method: str = "cg"
    rtol: float = 1e-12
    max_iter: int = 0  # 0: pick 10 n + 1000
    _chol: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        asym = self.matrix.max_asymmetry()
        if asym > 1e-12:
            raise ValueError(f"matrix is not symmetric (relative asymmetry {asym:.2e})")
        if self.method not in ("cg", "dense_cholesky"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "dense_cholesky":
            object.__setattr__(self, "_chol", np.linalg.cholesky(self.matrix.to_dense()))

    def solve(self, rhs: np.ndarray, x0: np.ndarray | None = None) -> np.ndarray:
        rhs = np.asarray(rhs, dtype=float)
        if rhs.shape != (self.matrix.n,):
            raise ValueError("rhs length does not match matrix dimension")
        if not np.all(np.isfinite(rhs)):
            raise ValueError("rhs contains non-finite entries")
        if self.method == "dense_cholesky":
            return _cholesky_solve(self._chol, rhs)
        maxit = self.max_iter if self.max_iter > 0 else 10 * self.matrix.n + 1000
        x, residuals = cg_solve(self.matrix, rhs, x0=x0, rtol=self.rtol, max_iter=maxit)
        return x


def cg_solve(A: SparseMatrix, b: np.ndarray, x0=None, rtol: float = 1e-12,
             max_iter: int = 10000) -> tuple[np.ndarray, list[float]]:
    """Jacobi-preconditioned CG. Returns (x, per-iteration residual norms).

    Stops when the true residual satisfies ||Ax-b|| <= rtol ||b||; raises
    SolverFailureError past max_iter.
    """
    bnorm = float(np.linalg.norm(b))
    if bnorm == 0.0:
        return np.zeros_like(b), [0.0]
    x = np.zeros_like(b) if x0 is None else np.array(x0, dtype=float)
    dinv = 1.0 / A.diagonal()
    r = b - matvec(A, x)
    residuals = [float(np.linalg.norm(r))]
    tol_abs = rtol * bnorm
    it = 0
    while it < max_iter:
        if residuals[-1] <= tol_abs:
            # recursion may drift from the true residual; confirm before exiting
            true_r = b - matvec(A, x)
            tn = float(np.linalg.norm(true_r))
            if tn <= tol_abs:
                return x, residuals
            r = true_r
            residuals[-1] = tn
        z = dinv * r
        rz = float(r @ z)
        if it == 0:
            p = z
        else:
            p = z + (rz / rz_prev) * p
        Ap = matvec(A, p)
        alpha = rz / float(p @ Ap)
        x = x + alpha * p
        r = r - alpha * Ap
        rz_prev = rz
        residuals.append(float(np.linalg.norm(r)))
        it += 1
    final = float(np.linalg.norm(b - matvec(A, x))) / bnorm
    raise SolverFailureError(
        f"CG did not converge in {max_iter} iterations (relative residual {final:.3e})",
        residual=final)


def _cholesky_solve(L: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = L.shape[0]
    y = np.empty(n)
    for i in range(n):
        y[i] = (b[i] - L[i, :i] @ y[:i]) / L[i, i]
    x = np.empty(n)
    for i in range(n - 1, -1, -1):
        x[i] = (y[i] - L[i + 1:, i] @ x[i + 1:]) / L[i, i]
    return x

"""Direct solvers for the tridiagonal and block-tridiagonal systems.

The time-marching schemes produce a constant left-hand operator, so both
solver families come in two forms: a one-shot solve and a reusable
factorization that is computed once per march and shared across all steps.
``dense_solve`` is a self-contained Gaussian elimination used as the
independent oracle in the test suite; it deliberately does not delegate to
LAPACK so that cross-checks against the production solvers exercise two
genuinely different elimination paths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg.lapack import dgttrf, dgttrs


class SingularMatrixError(ValueError):
    """Raised when elimination hits a zero (or numerically zero) pivot."""


def _as_float_vector(values, length: int, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.shape != (length,):
        raise ValueError(f"{what}: expected shape ({length},), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what}: entries must be finite")
    return arr


@dataclass(frozen=True)
class Tridiagonal:
    """Tridiagonal matrix of order n stored as three diagonals."""

    lower: np.ndarray  # length n-1
    diag: np.ndarray  # length n
    upper: np.ndarray  # length n-1

    def __post_init__(self):
        diag = np.array(np.asarray(self.diag, dtype=float))
        n = diag.size
        if n < 1:
            raise ValueError("order must be at least 1")
        object.__setattr__(self, "diag", _freeze(diag, (n,), "diag"))
        object.__setattr__(
            self, "lower", _freeze(np.array(self.lower, dtype=float), (n - 1,), "lower")
        )
        object.__setattr__(
            self, "upper", _freeze(np.array(self.upper, dtype=float), (n - 1,), "upper")
        )

    @classmethod
    def constant(cls, n: int, diag: float, off: float) -> "Tridiagonal":
        """Symmetric Toeplitz tridiagonal with constant diagonal and off-diagonal."""
        return cls(np.full(n - 1, off), np.full(n, diag), np.full(n - 1, off))

    @property
    def order(self) -> int:
        return self.diag.size

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = self.diag * x
        if self.order > 1:
            y[1:] += self.lower * x[:-1]
            y[:-1] += self.upper * x[1:]
        return y

    def to_dense(self) -> np.ndarray:
        n = self.order
        a = np.zeros((n, n))
        np.fill_diagonal(a, self.diag)
        if n > 1:
            a[np.arange(1, n), np.arange(n - 1)] = self.lower
            a[np.arange(n - 1), np.arange(1, n)] = self.upper
        return a

    def is_diagonally_dominant(self) -> bool:
        """Strict rowwise dominance |diag| > |lower| + |upper|."""
        n = self.order
        off = np.zeros(n)
        if n > 1:
            off[1:] += np.abs(self.lower)
            off[:-1] += np.abs(self.upper)
        return bool(np.all(np.abs(self.diag) > off))


def _freeze(arr: np.ndarray, shape, what: str) -> np.ndarray:
    if arr.shape != shape:
        raise ValueError(f"{what}: expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what}: entries must be finite")
    arr.setflags(write=False)
    return arr


def thomas_solve(m: Tridiagonal, rhs) -> np.ndarray:
    """Solve m x = rhs by the Thomas recursion (LU without pivoting).

    Intended for diagonally dominant systems, where the recursion is stable;
    a zero pivot raises SingularMatrixError naming the row.
    """
    n = m.order
    b = _as_float_vector(rhs, n, "rhs")
    d = np.empty(n)
    y = np.empty(n)
    d[0] = m.diag[0]
    if d[0] == 0.0:
        raise SingularMatrixError("zero pivot at row 0")
    y[0] = b[0]
    for i in range(1, n):
        w = m.lower[i - 1] / d[i - 1]
        d[i] = m.diag[i] - w * m.upper[i - 1]
        if d[i] == 0.0:
            raise SingularMatrixError(f"zero pivot at row {i}")
        y[i] = b[i] - w * y[i - 1]
    x = np.empty(n)
    x[n - 1] = y[n - 1] / d[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = (y[i] - m.upper[i] * x[i + 1]) / d[i]
    return x


class TridiagonalSolver:
    """Reusable LU factorization of a tridiagonal matrix.

    Backed by the LAPACK dgttrf/dgttrs pair so that a time march paying one
    solve per step runs at library speed; agrees with thomas_solve to
    roundoff on the diagonally dominant systems produced by the schemes.
    """

    def __init__(self, m: Tridiagonal):
        self._order = m.order
        if m.order < 3:
            # the LAPACK wrapper needs order >= 3; fall back to the plain
            # recursion (pivots checked now so construction reports them)
            thomas_solve(m, np.zeros(m.order))
            self._factors = None
            self._matrix = m
            return
        dl, d, du, du2, ipiv, info = dgttrf(m.lower, m.diag, m.upper)
        if info > 0:
            raise SingularMatrixError(f"zero pivot at row {info - 1}")
        if info < 0:
            raise ValueError(f"illegal argument {-info} to dgttrf")
        self._factors = (dl, d, du, du2, ipiv)
        self._matrix = None

    @property
    def order(self) -> int:
        return self._order

    def solve(self, rhs) -> np.ndarray:
        b = _as_float_vector(rhs, self._order, "rhs")
        if self._factors is None:
            return thomas_solve(self._matrix, b)
        x, info = dgttrs(*self._factors, b)
        if info != 0:
            raise SingularMatrixError(f"solve failed with info={info}")
        return x


@dataclass(frozen=True)
class BlockTridiagonal:
    """Block-Toeplitz block-tridiagonal matrix.

    The same diag_block repeats down the block diagonal and
    sign_off * off_block on both adjacent block diagonals, matching the
    structure of the 2D scheme's step operators.
    """

    diag_block: Tridiagonal
    off_block: Tridiagonal
    n_blocks: int
    sign_off: int

    def __post_init__(self):
        if self.diag_block.order != self.off_block.order:
            raise ValueError(
                "diag and off blocks must have the same order, got "
                f"{self.diag_block.order} and {self.off_block.order}"
            )
        if self.n_blocks < 1:
            raise ValueError(f"n_blocks must be positive, got {self.n_blocks}")
        if self.sign_off not in (+1, -1):
            raise ValueError(f"sign_off must be +1 or -1, got {self.sign_off}")

    @property
    def block_order(self) -> int:
        return self.diag_block.order

    @property
    def order(self) -> int:
        return self.n_blocks * self.block_order

    def matvec(self, x: np.ndarray) -> np.ndarray:
        n, m = self.block_order, self.n_blocks
        xb = _as_float_vector(x, n * m, "x").reshape(m, n)
        out = np.empty_like(xb)
        for j in range(m):
            y = self.diag_block.matvec(xb[j])
            if j > 0:
                y += self.sign_off * self.off_block.matvec(xb[j - 1])
            if j + 1 < m:
                y += self.sign_off * self.off_block.matvec(xb[j + 1])
            out[j] = y
        return out.ravel()

    def to_dense(self) -> np.ndarray:
        n, m = self.block_order, self.n_blocks
        a = np.zeros((n * m, n * m))
        d = self.diag_block.to_dense()
        e = self.sign_off * self.off_block.to_dense()
        for j in range(m):
            a[j * n : (j + 1) * n, j * n : (j + 1) * n] = d
            if j + 1 < m:
                a[j * n : (j + 1) * n, (j + 1) * n : (j + 2) * n] = e
                a[(j + 1) * n : (j + 2) * n, j * n : (j + 1) * n] = e
        return a


class BlockLUSolver:
    """Block LU factorization of a BlockTridiagonal, reusable across solves.

    Forward/backward block recursion with dense inverses of the eliminated
    diagonal blocks, precomputed once.
    """

    def __init__(self, m: BlockTridiagonal):
        self._n = m.block_order
        self._m = m.n_blocks
        d = m.diag_block.to_dense()
        e = m.sign_off * m.off_block.to_dense()
        self._e = e
        self._dinv = []
        self._e_dinv = []
        delta = d
        for j in range(self._m):
            try:
                inv = np.linalg.inv(delta)
            except np.linalg.LinAlgError as exc:
                raise SingularMatrixError(
                    f"singular diagonal block {j} after elimination"
                ) from exc
            if not np.all(np.isfinite(inv)):
                raise SingularMatrixError(
                    f"singular diagonal block {j} after elimination"
                )
            self._dinv.append(inv)
            self._e_dinv.append(e @ inv)
            if j + 1 < self._m:
                delta = d - self._e_dinv[j] @ e

    @property
    def order(self) -> int:
        return self._n * self._m

    def solve(self, rhs) -> np.ndarray:
        n, m = self._n, self._m
        b = _as_float_vector(rhs, n * m, "rhs").reshape(m, n)
        y = np.empty_like(b)
        y[0] = b[0]
        for j in range(1, m):
            y[j] = b[j] - self._e_dinv[j - 1] @ y[j - 1]
        x = np.empty_like(b)
        x[m - 1] = self._dinv[m - 1] @ y[m - 1]
        for j in range(m - 2, -1, -1):
            x[j] = self._dinv[j] @ (y[j] - self._e @ x[j + 1])
        return x.ravel()


def block_thomas_solve(m: BlockTridiagonal, rhs) -> np.ndarray:
    """One-shot block LU solve of m x = rhs."""
    return BlockLUSolver(m).solve(rhs)


def dense_solve(matrix, rhs) -> np.ndarray:
    """Gaussian elimination with partial pivoting (test oracle).

    Self-contained on purpose: cross-checks against thomas_solve and
    block_thomas_solve must not share an elimination code path with them.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    b = _as_float_vector(rhs, n, "rhs").copy()
    x = np.empty(n)
    scale = np.abs(a).max()
    tiny = n * np.finfo(float).eps * scale
    for col in range(n):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if np.abs(a[piv, col]) <= tiny:
            raise SingularMatrixError(f"singular to working precision at column {col}")
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            b[col], b[piv] = b[piv], b[col]
        mult = a[col + 1 :, col] / a[col, col]
        a[col + 1 :, col + 1 :] -= np.outer(mult, a[col, col + 1 :])
        b[col + 1 :] -= mult * b[col]
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1 :] @ x[row + 1 :]) / a[row, row]
    return x

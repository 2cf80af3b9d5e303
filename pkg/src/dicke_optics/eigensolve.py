"""Dense real-symmetric eigensolver.

Householder reduction to tridiagonal form followed by implicit-shift QL
iteration (the EISPACK ``tred2``/``tql2`` pair). The kernels are compiled
with numba and operate on Fortran-ordered copies so that the column sweeps
of both stages run over contiguous memory.

For the few lowest levels of large matrices there is also a Lanczos path
with full reorthogonalisation; its projected tridiagonal problem is solved
with the same QL kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from dicke_optics.operators import OperatorMatrix

__all__ = [
    "EigenDecomposition",
    "EigenSolverError",
    "eigh",
    "eigvalsh",
    "lanczos_lowest",
]

#: QL sweeps allowed per eigenvalue before giving up.
MAX_QL_ITERATIONS = 60

#: ``method="auto"`` switches to Lanczos above this dimension when only a
#: few of the lowest pairs are requested.
LANCZOS_MIN_DIM = 400
LANCZOS_MAX_K = 8

_TINY = np.finfo(np.float64).tiny
_SAFE_MIN = np.sqrt(_TINY / np.finfo(np.float64).eps)
_SAFE_MAX = 1.0 / _SAFE_MIN


class EigenSolverError(RuntimeError):
    """Raised when the QL iteration fails or a result cannot be certified."""


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with orthonormal eigenvector columns.

    ``residual_bound`` is ``max_i ||H v_i - E_i v_i||_2`` over the returned pairs.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual_bound: float

    def __len__(self) -> int:
        return len(self.eigenvalues)

    @property
    def ground_state(self) -> np.ndarray:
        return self.eigenvectors[:, 0]

    @property
    def gap(self) -> float:
        return float(self.eigenvalues[1] - self.eigenvalues[0])


@numba.njit(cache=True, nogil=True)
def _tred2(V, d, e, accumulate):
    # V holds the full symmetric matrix on entry; only the lower triangle is
    # read. With accumulate=True it holds the orthogonal transform on exit.
    n = V.shape[0]
    for j in range(n):
        d[j] = V[n - 1, j]

    for i in range(n - 1, 0, -1):
        scale = 0.0
        h = 0.0
        for k in range(i):
            scale += abs(d[k])
        if scale == 0.0:
            e[i] = d[i - 1]
            for j in range(i):
                d[j] = V[i - 1, j]
                V[i, j] = 0.0
                V[j, i] = 0.0
        else:
            for k in range(i):
                d[k] /= scale
                h += d[k] * d[k]
            f = d[i - 1]
            g = np.sqrt(h)
            if f > 0:
                g = -g
            e[i] = scale * g
            h = h - f * g
            d[i - 1] = f - g
            for j in range(i):
                e[j] = 0.0
            for j in range(i):
                f = d[j]
                V[j, i] = f
                g = e[j] + V[j, j] * f
                for k in range(j + 1, i):
                    g += V[k, j] * d[k]
                    e[k] += V[k, j] * f
                e[j] = g
            f = 0.0
            for j in range(i):
                e[j] /= h
                f += e[j] * d[j]
            hh = f / (h + h)
            for j in range(i):
                e[j] -= hh * d[j]
            for j in range(i):
                f = d[j]
                g = e[j]
                for k in range(j, i):
                    V[k, j] -= f * e[k] + g * d[k]
                d[j] = V[i - 1, j]
                V[i, j] = 0.0
        d[i] = h

    if not accumulate:
        for i in range(n):
            d[i] = V[i, i]
        e[0] = 0.0
        return

    for i in range(n - 1):
        V[n - 1, i] = V[i, i]
        V[i, i] = 1.0
        h = d[i + 1]
        if h != 0.0:
            for k in range(i + 1):
                d[k] = V[k, i + 1] / h
            for j in range(i + 1):
                g = 0.0
                for k in range(i + 1):
                    g += V[k, i + 1] * V[k, j]
                for k in range(i + 1):
                    V[k, j] -= g * d[k]
        for k in range(i + 1):
            V[k, i + 1] = 0.0
    for j in range(n):
        d[j] = V[n - 1, j]
        V[n - 1, j] = 0.0
    V[n - 1, n - 1] = 1.0
    e[0] = 0.0


@numba.njit(cache=True, nogil=True)
def _tql2(d, e, V, accumulate, max_iter):
    # Returns 0 on success, otherwise 1 + index of the eigenvalue that failed.
    n = d.shape[0]
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0

    f = 0.0
    tst1 = 0.0
    eps = 2.0**-52
    for l in range(n):
        tst1 = max(tst1, abs(d[l]) + abs(e[l]))
        m = l
        while m < n - 1:
            if abs(e[m]) <= eps * tst1:
                break
            m += 1
        if m > l:
            it = 0
            while True:
                it += 1
                if it > max_iter:
                    return l + 1
                g = d[l]
                p = (d[l + 1] - g) / (2.0 * e[l])
                r = np.hypot(p, 1.0)
                if p < 0:
                    r = -r
                d[l] = e[l] / (p + r)
                d[l + 1] = e[l] * (p + r)
                dl1 = d[l + 1]
                h = g - d[l]
                for i in range(l + 2, n):
                    d[i] -= h
                f += h

                p = d[m]
                c = 1.0
                c2 = c
                c3 = c
                el1 = e[l + 1]
                s = 0.0
                s2 = 0.0
                for i in range(m - 1, l - 1, -1):
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * e[i]
                    h = c * p
                    r = np.hypot(p, e[i])
                    e[i + 1] = s * r
                    s = e[i] / r
                    c = p / r
                    p = c * d[i] - s * g
                    d[i + 1] = h + s * (c * g + s * d[i])
                    if accumulate:
                        for k in range(n):
                            h = V[k, i + 1]
                            V[k, i + 1] = s * V[k, i] + c * h
                            V[k, i] = c * V[k, i] - s * h
                p = -s * s2 * c3 * el1 * e[l] / dl1
                e[l] = s * p
                d[l] = c * p
                if abs(e[l]) <= eps * tst1:
                    break
        d[l] = d[l] + f
        e[l] = 0.0
    return 0


def _as_symmetric_array(h) -> np.ndarray:
    if isinstance(h, OperatorMatrix):
        if not h.symmetric:
            raise ValueError(f"operator on {h.basis_tag!r} is not flagged symmetric")
        a = h.entries
    else:
        a = np.asarray(h, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not symmetric")
    if a.shape[0] == 0:
        raise ValueError("empty matrix")
    return a


def _decompose(a: np.ndarray, accumulate: bool):
    n = a.shape[0]
    V = np.array(a, dtype=np.float64, order="F", copy=True)
    d = np.empty(n)
    e = np.empty(n)
    if n == 1:
        return np.array([V[0, 0]]), np.ones((1, 1))
    # Scale into a safe range: Householder norms underflow on subnormal entries.
    scale = float(np.abs(V).max())
    if not np.isfinite(scale):
        raise ValueError("matrix has non-finite entries")
    rescale = scale != 0.0 and not (_SAFE_MIN <= scale <= _SAFE_MAX)
    if rescale:
        V /= scale
    # Subnormals break the Householder norm accumulation; zeroing them is far below backward error.
    V[np.abs(V) < _TINY] = 0.0
    _tred2(V, d, e, accumulate)
    status = _tql2(d, e, V, accumulate, MAX_QL_ITERATIONS)
    if status:
        raise EigenSolverError(
            f"QL iteration did not converge for eigenvalue {status - 1} "
            f"after {MAX_QL_ITERATIONS} sweeps"
        )
    if rescale:
        d *= scale
    order = np.argsort(d, kind="stable")
    if accumulate:
        return d[order], np.ascontiguousarray(V[:, order])
    return d[order], None


def _tridiagonal_eigh(alpha: np.ndarray, beta: np.ndarray):
    # alpha: diagonal (m), beta: off-diagonal (m - 1).
    m = len(alpha)
    d = np.array(alpha, dtype=np.float64)
    e = np.zeros(m)
    e[1:] = beta
    V = np.asfortranarray(np.eye(m))
    if _tql2(d, e, V, True, MAX_QL_ITERATIONS):
        raise EigenSolverError("QL iteration failed on the Lanczos tridiagonal")
    order = np.argsort(d, kind="stable")
    return d[order], V[:, order]


def _start_vector(n: int) -> np.ndarray:
    # Deterministic and generic: overlaps every eigenvector of a banded matrix.
    v = 1.0 + 0.5 * np.sin(np.arange(1, n + 1) * 0.7548776662466927)
    return v / np.linalg.norm(v)


def lanczos_lowest(h, k: int = 1, tol: float = 1e-10, max_iter: int | None = None) -> EigenDecomposition:
    """Lowest ``k`` eigenpairs by Lanczos with full reorthogonalisation.

    A single Krylov sequence resolves only one vector per eigenspace, so
    exactly degenerate levels are reported once. Use on matrices whose low
    spectrum is non-degenerate (e.g. a single parity block).
    """
    a = _as_symmetric_array(h)
    n = a.shape[0]
    k = min(k, n)
    max_iter = n if max_iter is None else min(max_iter, n)
    scale = max(1.0, np.abs(a).sum(axis=1).max())

    Q = np.empty((n, max_iter))
    alpha = np.empty(max_iter)
    beta = np.empty(max_iter)
    q = _start_vector(n)
    m = 0
    converged = False
    while m < max_iter:
        Q[:, m] = q
        w = a @ q
        alpha[m] = q @ w
        for _ in range(2):
            w -= Q[:, : m + 1] @ (Q[:, : m + 1].T @ w)
        b = np.linalg.norm(w)
        beta[m] = b
        m += 1
        if m >= k and (m % 10 == 0 or b <= 1e-14 * scale or m == max_iter):
            theta, S = _tridiagonal_eigh(alpha[:m], beta[: m - 1])
            estimate = np.abs(b * S[-1, :k])
            if b <= 1e-14 * scale or np.all(estimate <= tol * (1.0 + np.abs(theta[:k]))):
                converged = True
                break
        if b <= 1e-14 * scale:
            break
        q = w / b

    if not converged:
        raise EigenSolverError(f"Lanczos did not converge for k={k} within {m} iterations")
    w_k = theta[:k]
    v_k = Q[:, :m] @ S[:, :k]
    v_k /= np.linalg.norm(v_k, axis=0)
    residual = np.linalg.norm(a @ v_k - v_k * w_k, axis=0).max()
    return _certified(w_k, v_k, residual)


def _certified(w, v, residual) -> EigenDecomposition:
    if not residual <= 1e-8 * (1.0 + np.abs(w).max()):
        raise EigenSolverError(f"residual {residual:.3e} exceeds certification bound")
    return EigenDecomposition(eigenvalues=w, eigenvectors=v, residual_bound=float(residual))


def eigvalsh(h, k_lowest: int | None = None) -> np.ndarray:
    """Ascending eigenvalues of a symmetric matrix, without eigenvectors."""
    a = _as_symmetric_array(h)
    w, _ = _decompose(a, accumulate=False)
    return w if k_lowest is None else w[:k_lowest]


def eigh(h, k_lowest: int | None = None, method: str = "dense") -> EigenDecomposition:
    """Diagonalize a real symmetric matrix.

    Parameters
    ----------
    h : OperatorMatrix or array_like
        Must be symmetric: an ``OperatorMatrix`` must carry ``symmetric=True``,
        a plain array must equal its transpose exactly.
    k_lowest : int, optional
        Return only the lowest ``k_lowest`` eigenpairs.
    method : {"dense", "lanczos", "auto"}
        ``"dense"`` computes the full spectrum and trims it. ``"lanczos"``
        needs ``k_lowest``. ``"auto"`` picks Lanczos for large matrices when
        ``k_lowest <= LANCZOS_MAX_K``.

    Raises
    ------
    ValueError
        Non-symmetric or non-square input.
    EigenSolverError
        Iteration failure, or a residual larger than ``1e-8 * (1 + max|E|)``.
    """
    a = _as_symmetric_array(h)
    if k_lowest is not None and k_lowest < 1:
        raise ValueError("k_lowest must be at least 1")
    if method == "auto":
        small_k = k_lowest is not None and k_lowest <= LANCZOS_MAX_K
        method = "lanczos" if small_k and a.shape[0] > LANCZOS_MIN_DIM else "dense"
    if method == "lanczos":
        if k_lowest is None:
            raise ValueError("the Lanczos path needs k_lowest")
        return lanczos_lowest(a, k_lowest)
    if method != "dense":
        raise ValueError(f"unknown method {method!r}")

    w, v = _decompose(a, accumulate=True)
    if k_lowest is not None:
        w, v = w[:k_lowest], v[:, :k_lowest]
    residual = np.linalg.norm(a @ v - v * w, axis=0).max()
    return _certified(w, v, residual)

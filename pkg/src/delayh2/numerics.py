"""Dense matrix kernels shared by the rest of the package.

Matrices are plain ``numpy.ndarray`` objects; :func:`as_matrix` is the
single entry point that validates shape and finiteness.
"""
import numpy as np
from scipy import linalg

from ._config import TOL
from .errors import (
    NotPositiveDefinite,
    NotSymmetric,
    SingularHessian,
    UnstableA,
    ValidationError,
)

__all__ = [
    'as_matrix',
    'dlyap',
    'solve_spd',
    'solve_stein',
    'spectral_radius',
    'sqrtm_spd',
]


def as_matrix(x, name='matrix', dtype=float):
    """Return `x` as a finite 2-D array (read-only copy)."""
    m = np.array(x, dtype=dtype, copy=True)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    elif m.ndim == 1:
        m = m.reshape(1, -1) if m.size else m.reshape(0, 0)
    if m.ndim != 2:
        raise ValidationError(f'{name} must be 2-D, got shape {m.shape}')
    if not np.all(np.isfinite(m)):
        raise ValidationError(f'{name} has non-finite entries')
    m.setflags(write=False)
    return m


def _check_symmetric(M, tol):
    scale = max(1.0, np.linalg.norm(M))
    if M.shape[0] != M.shape[1] or np.linalg.norm(M - M.T) > tol * scale:
        raise NotSymmetric('matrix is not symmetric')


def sqrtm_spd(M, return_inverse=False, tol=TOL.symmetry):
    """Symmetric square root of a symmetric positive definite matrix.

    Parameters
    ----------
    M : (n, n) array_like
        Symmetric positive definite matrix.
    return_inverse : bool
        Also return the inverse square root.

    Returns
    -------
    S : (n, n) ndarray
        Symmetric with ``S @ S == M``.
    S_inv : (n, n) ndarray
        Only when `return_inverse` is true.
    """
    M = np.asarray(M, dtype=float)
    _check_symmetric(M, tol)
    w, U = np.linalg.eigh(0.5 * (M + M.T))
    if w.size and w[0] <= TOL.eig_floor * max(w[-1], 0.0):
        raise NotPositiveDefinite(
            f'minimum eigenvalue {w[0]:.3e} is not positive')
    r = np.sqrt(w)
    S = (U * r) @ U.T
    S = 0.5 * (S + S.T)
    if not return_inverse:
        return S
    S_inv = (U / r) @ U.T
    return S, 0.5 * (S_inv + S_inv.T)


def spectral_radius(A):
    """Largest eigenvalue magnitude of a square matrix (0 for 0x0)."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError(f'expected a square matrix, got {A.shape}')
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(A))))


def solve_stein(A, B, Q):
    """Solve ``W = A W B^T + Q`` for `W`.

    Both `A` and `B` are reduced to complex Schur form and the equation is
    solved column by column with triangular back-substitution, which needs
    every product of eigenvalues ``lambda_i(A) * lambda_j(B)`` to differ
    from one.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    Q = np.asarray(Q)
    n, m = A.shape[0], B.shape[0]
    if Q.shape != (n, m):
        raise ValidationError(f'Q has shape {Q.shape}, expected {(n, m)}')
    if n == 0 or m == 0:
        return np.zeros((n, m))
    S, U = linalg.schur(A, output='complex')
    R, V = linalg.schur(B, output='complex')
    # W = U Y V^T  ->  Y = S Y R^T + U^H Q conj(V)
    Qt = U.conj().T @ Q @ V.conj()
    Y = np.zeros((n, m), dtype=complex)
    acc = np.zeros((n, m), dtype=complex)  # acc[:, j] = sum_{k>j} R[j,k] Y[:,k]
    eye = np.eye(n)
    for j in range(m - 1, -1, -1):
        if j < m - 1:
            acc[:, j] = Y[:, j + 1:] @ R[j, j + 1:]
        rhs = Qt[:, j] + S @ acc[:, j]
        Y[:, j] = linalg.solve_triangular(eye - R[j, j] * S, rhs)
    W = U @ Y @ V.T
    return W.real if np.isrealobj(Q) else W


def dlyap(A, Q):
    """Solve the discrete Lyapunov equation ``W = A W A^T + Q``.

    Raises
    ------
    UnstableA
        If the spectral radius of `A` is not below one.
    """
    A = np.asarray(A, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if spectral_radius(A) >= 1.0 - TOL.stability_margin:
        raise UnstableA('dlyap requires a Schur-stable A')
    W = solve_stein(A, A, Q)
    return 0.5 * (W + W.T)


def solve_spd(H, g):
    """Solve ``H v = g`` for symmetric positive definite `H`."""
    H = np.asarray(H, dtype=float)
    g = np.asarray(g, dtype=float)
    if H.shape[0] == 0:
        return np.zeros_like(g)
    w = np.linalg.eigvalsh(0.5 * (H + H.T))
    if w[0] <= TOL.eig_floor * max(w[-1], 0.0):
        raise SingularHessian(f'minimum eigenvalue {w[0]:.3e} is not positive')
    c = linalg.cho_factor(H)
    return linalg.cho_solve(c, g)

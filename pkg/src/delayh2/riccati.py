"""Generalized plant and the control/estimation Riccati equations.

The plant is ::

    x+ = A x + B1 w + B2 u
    z  = C1 x        + D12 u
    y  = C2 x + D21 w

with ``D11 = 0`` and ``D22 = 0``.  Both Riccati equations are solved by
iterating the Riccati map from zero, which converges monotonically to the
stabilizing solution because ``A`` is Schur stable.
"""
from dataclasses import dataclass

import numpy as np

from ._config import TOL
from .errors import NoConvergence, NotPositiveDefinite, NotStabilizing, ValidationError
from .numerics import as_matrix, spectral_radius, sqrtm_spd
from .statespace import StateSpace

__all__ = [
    'ControlSolution',
    'EstimationSolution',
    'Plant',
    'control_dare',
    'control_residual',
    'estimation_dare',
    'estimation_residual',
    'riccati_iterates',
]


@dataclass(frozen=True, eq=False)
class Plant:
    """Stable four-block plant ``[[P11, P12], [P21, P22]]``.

    Construction validates dimensions, ``rho(A) < 1``, ``D12' D12 > 0`` and
    ``D21 D21' > 0``.
    """

    A: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    C1: np.ndarray
    C2: np.ndarray
    D12: np.ndarray
    D21: np.ndarray

    def __post_init__(self):
        for name in ('A', 'B1', 'B2', 'C1', 'C2', 'D12', 'D21'):
            object.__setattr__(self, name, as_matrix(getattr(self, name), name))
        n = self.A.shape[0]
        checks = [
            (self.A.shape == (n, n), 'A must be square'),
            (self.B1.shape[0] == n, 'B1 must have n rows'),
            (self.B2.shape[0] == n, 'B2 must have n rows'),
            (self.C1.shape[1] == n, 'C1 must have n columns'),
            (self.C2.shape[1] == n, 'C2 must have n columns'),
            (self.D12.shape == (self.C1.shape[0], self.B2.shape[1]),
             'D12 must be (rows of C1) x (columns of B2)'),
            (self.D21.shape == (self.C2.shape[0], self.B1.shape[1]),
             'D21 must be (rows of C2) x (columns of B1)'),
        ]
        for ok, msg in checks:
            if not ok:
                raise ValidationError(msg)
        if spectral_radius(self.A) >= 1.0 - TOL.stability_margin:
            raise ValidationError('plant is not stable: rho(A) >= 1')
        for M, label in ((self.D12.T @ self.D12, "D12'D12"),
                         (self.D21 @ self.D21.T, "D21D21'")):
            w = np.linalg.eigvalsh(M)
            if w.size == 0 or w[0] <= TOL.eig_floor * max(w[-1], 1.0):
                raise NotPositiveDefinite(f'{label} not positive definite')

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def dims(self):
        """``(p1, p2, q1, q2)``: disturbance, control, cost and measurement sizes."""
        return (self.B1.shape[1], self.B2.shape[1],
                self.C1.shape[0], self.C2.shape[0])

    @property
    def P11(self):
        return StateSpace(self.A, self.B1, self.C1,
                          np.zeros((self.C1.shape[0], self.B1.shape[1])))

    @property
    def P12(self):
        return StateSpace(self.A, self.B2, self.C1, self.D12)

    @property
    def P21(self):
        return StateSpace(self.A, self.B1, self.C2, self.D21)

    @property
    def P22(self):
        return StateSpace(self.A, self.B2, self.C2,
                          np.zeros((self.C2.shape[0], self.B2.shape[1])))

    def dual(self):
        """Transposed plant whose control Riccati equation is this plant's
        estimation equation."""
        return Plant(self.A.T, self.C1.T, self.C2.T, self.B1.T, self.B2.T,
                     self.D21.T, self.D12.T)

    def closed_loop(self, Q):
        """``P11 + P12 Q P21`` for a stable parameter `Q`."""
        return self.P11 + self.P12 @ Q @ self.P21

    def to_dict(self):
        return {k: getattr(self, k).tolist()
                for k in ('A', 'B1', 'B2', 'C1', 'C2', 'D12', 'D21')}

    @classmethod
    def from_dict(cls, d):
        missing = {'A', 'B1', 'B2', 'C1', 'C2', 'D12', 'D21'} - set(d)
        if missing:
            raise ValidationError(f'plant is missing keys {sorted(missing)}')
        return cls(*(np.array(d[k], dtype=float).reshape(np.shape(d[k]))
                     for k in ('A', 'B1', 'B2', 'C1', 'C2', 'D12', 'D21')))

    def __eq__(self, other):
        if not isinstance(other, Plant):
            return NotImplemented
        return all(np.array_equal(getattr(self, k), getattr(other, k))
                   for k in ('A', 'B1', 'B2', 'C1', 'C2', 'D12', 'D21'))


@dataclass(frozen=True)
class ControlSolution:
    X: np.ndarray
    K: np.ndarray
    Omega: np.ndarray
    OmegaHalf: np.ndarray
    OmegaHalfInv: np.ndarray
    closed_loop_radius: float
    iterations: int


@dataclass(frozen=True)
class EstimationSolution:
    Y: np.ndarray
    L: np.ndarray
    Psi: np.ndarray
    PsiHalf: np.ndarray
    PsiHalfInv: np.ndarray
    closed_loop_radius: float
    iterations: int


def _riccati_map(X, A, B, Q, R, S):
    # X -> Q + A'XA - (A'XB + S) (R + B'XB)^{-1} (B'XA + S')
    G = B.T @ X @ A + S.T
    Xn = Q + A.T @ X @ A - G.T @ np.linalg.solve(R + B.T @ X @ B, G)
    return 0.5 * (Xn + Xn.T)


def riccati_iterates(A, B, Q, R, S):
    """Yield the fixed-point iterates of the control Riccati map from zero."""
    X = np.zeros_like(A, dtype=float)
    while True:
        yield X
        X = _riccati_map(X, A, B, Q, R, S)


def _solve_control(A, B, C, D, maxiter, tol):
    Q, R, S = C.T @ C, D.T @ D, C.T @ D
    it = riccati_iterates(A, B, Q, R, S)
    X = next(it)
    for k in range(1, maxiter + 1):
        Xn = next(it)
        step = np.linalg.norm(Xn - X)
        X = Xn
        if step <= tol * (1.0 + np.linalg.norm(X)):
            break
    else:
        raise NoConvergence(f'Riccati iteration did not converge in {maxiter} steps')
    Omega = R + B.T @ X @ B
    Omega = 0.5 * (Omega + Omega.T)
    K = -np.linalg.solve(Omega, B.T @ X @ A + S.T)
    rho = spectral_radius(A + B @ K)
    if rho >= 1.0 - TOL.stability_margin:
        raise NotStabilizing(f'Riccati solution is not stabilizing (rho = {rho:.6f})')
    half, half_inv = sqrtm_spd(Omega, return_inverse=True)
    return X, K, Omega, half, half_inv, rho, k


def control_dare(plant, maxiter=TOL.riccati_maxiter, tol=TOL.riccati_step):
    """Stabilizing solution of the control Riccati equation.

    Returns the LQR gain ``K = -Omega^{-1}(B2' X A + D12' C1)`` with
    ``Omega = D12' D12 + B2' X B2``.
    """
    X, K, Om, half, half_inv, rho, k = _solve_control(
        plant.A, plant.B2, plant.C1, plant.D12, maxiter, tol)
    return ControlSolution(X, K, Om, half, half_inv, rho, k)


def estimation_dare(plant, maxiter=TOL.riccati_maxiter, tol=TOL.riccati_step):
    """Stabilizing solution of the estimation Riccati equation.

    Solved as the control equation of the dual plant; the Kalman gain is
    ``L = -(A Y C2' + B1 D21') Psi^{-1}``.
    """
    Y, Kd, Psi, half, half_inv, rho, k = _solve_control(
        plant.A.T, plant.C2.T, plant.B1.T, plant.D21.T, maxiter, tol)
    return EstimationSolution(Y, Kd.T, Psi, half, half_inv, rho, k)


def control_residual(plant, X):
    """Frobenius residual of the control Riccati equation at `X`."""
    A, B2, C1, D12 = plant.A, plant.B2, plant.C1, plant.D12
    Om = D12.T @ D12 + B2.T @ X @ B2
    G = B2.T @ X @ A + D12.T @ C1
    R = C1.T @ C1 + A.T @ X @ A - G.T @ np.linalg.solve(Om, G) - X
    return float(np.linalg.norm(R))


def estimation_residual(plant, Y):
    """Frobenius residual of the estimation Riccati equation at `Y`."""
    A, B1, C2, D21 = plant.A, plant.B1, plant.C2, plant.D21
    Psi = D21 @ D21.T + C2 @ Y @ C2.T
    G = A @ Y @ C2.T + B1 @ D21.T
    R = B1 @ B1.T + A @ Y @ A.T - G @ np.linalg.solve(Psi, G.T) - Y
    return float(np.linalg.norm(R))

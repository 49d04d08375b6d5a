"""Brute-force check of the model matching optimum.

Restrict ``Q`` to an FIR matrix with lags ``1..M`` (pattern-masked on lags
``1..N``, dense after), truncate the closed-loop impulse response at ``H``
lags, and solve the resulting linear least-squares problem.  The returned
norm is the exact H2 norm of the closed loop with that FIR ``Q``, so it is
an upper bound on the true optimum.
"""
from dataclasses import dataclass

import numpy as np

from ._config import TOL
from .errors import IllConditioned, ValidationError
from .numerics import solve_spd
from .statespace import FirTransfer, fir_to_ss, h2_norm, markov

__all__ = ['OracleConfig', 'OracleResult', 'fir_truncated_optimum']


@dataclass(frozen=True)
class OracleConfig:
    fir_length: int = 60
    cost_horizon: int = 200

    def validate(self, plant, pattern):
        if self.fir_length <= pattern.N:
            raise ValidationError('oracle fir_length must exceed the pattern horizon')
        if self.cost_horizon < self.fir_length + 10 * plant.n:
            raise ValidationError('oracle cost_horizon must be at least fir_length + 10 n')


@dataclass(frozen=True)
class OracleResult:
    norm: float
    Q_fir: FirTransfer
    truncated_norm: float


def fir_truncated_optimum(plant, pattern, cfg=None):
    cfg = OracleConfig() if cfg is None else cfg
    cfg.validate(plant, pattern)
    M, Hz = cfg.fir_length, cfg.cost_horizon
    p1, p2, q1, q2 = plant.dims
    P11 = markov(plant.P11, Hz + 1)           # (Hz+1, q1, p1)
    P12 = markov(plant.P12, Hz + 1)           # (Hz+1, q1, p2)
    P21 = markov(plant.P21, Hz + 1)           # (Hz+1, q2, p1)

    # S[s, :, r, c, :] = sum_{a+b=s} P12_a[:, r] P21_b[c, :]
    S = np.zeros((Hz + 1, q1, p2, q2, p1))
    for a in range(Hz + 1):
        S[a:] += np.einsum('ir,scj->sircj', P12[a], P21[:Hz + 1 - a])

    allowed = np.ones((M, p2, q2), dtype=bool)
    allowed[:pattern.N] = pattern.entry_masks()
    lags, rows, cols = np.nonzero(allowed)
    lags = lags + 1
    A = np.zeros(((Hz + 1) * q1 * p1, len(lags)))
    for j, (k, r, c) in enumerate(zip(lags, rows, cols)):
        col = np.zeros((Hz + 1, q1, p1))
        col[k:] = S[:Hz + 1 - k, :, r, c, :]
        A[:, j] = col.ravel()
    b = P11.ravel()

    H = A.T @ A
    g = A.T @ b
    if H.size:
        w = np.linalg.eigvalsh(H)
        if w[0] <= 0 or w[-1] / w[0] > TOL.oracle_cond:
            raise IllConditioned('oracle normal equations are ill-conditioned')
        v = -solve_spd(H, g)
    else:
        v = np.zeros(0)
    coeffs = np.zeros((M, p2, q2))
    coeffs[lags - 1, rows, cols] = v
    Q = FirTransfer(coeffs)
    resid = b + A @ v
    norm = h2_norm(plant.closed_loop(fir_to_ss(Q)))
    return OracleResult(norm, Q, float(np.linalg.norm(resid)))

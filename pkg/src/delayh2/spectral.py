"""Spectral factors, the matrix T and the centralized (delayed) optima."""
from dataclasses import dataclass

import numpy as np

from ._config import TOL
from .errors import NonStrictlyProper, UnstableSystem, ValidationError
from .numerics import spectral_radius
from .riccati import control_dare, estimation_dare
from .statespace import StateSpace, delay, markov

__all__ = [
    'FactorSet',
    'build_factors',
    'factorize',
    'q_centralized',
    'q_delayed',
    'tail_project',
]


@dataclass(frozen=True)
class FactorSet:
    """``W_L``, ``W_R``, their inverses, and ``T`` for one plant.

    ``P12~ P12 = W_L^{-~} W_L^{-1}`` and ``P21 P21~ = W_R^{-1} W_R^{-~}``.
    """

    W_L: StateSpace
    W_L_inv: StateSpace
    W_R: StateSpace
    W_R_inv: StateSpace
    T: StateSpace


def build_factors(plant, cs, es):
    A, B2, C2 = plant.A, plant.B2, plant.C2
    K, L = cs.K, es.L
    Oh, Oih = cs.OmegaHalf, cs.OmegaHalfInv
    Ph, Pih = es.PsiHalf, es.PsiHalfInv
    p2, q2 = B2.shape[1], C2.shape[0]
    fs = FactorSet(
        W_L=StateSpace(A + B2 @ K, B2 @ Oih, K, Oih),
        W_L_inv=StateSpace(A, -B2, Oh @ K, Oh),
        W_R=StateSpace(A + L @ C2, L, Pih @ C2, Pih),
        W_R_inv=StateSpace(A, L @ Ph, -C2, Ph),
        T=StateSpace(A, L @ Ph, Oh @ K, np.zeros((p2, q2))),
    )
    for name in ('W_L', 'W_L_inv', 'W_R', 'W_R_inv', 'T'):
        if not getattr(fs, name).is_stable():
            raise UnstableSystem(f'{name} realization is not stable')
    return fs


def factorize(plant):
    """Solve both Riccati equations and build the factors.

    Returns ``(cs, es, fs)``.
    """
    cs = control_dare(plant)
    es = estimation_dare(plant)
    return cs, es, build_factors(plant, cs, es)


def q_centralized(fs):
    """Optimal ``Q`` over all of ``(1/z) H2``: ``Q0 = -W_L T W_R``."""
    return -(fs.W_L @ fs.T @ fs.W_R)


def tail_project(F, N):
    """Keep the Markov parameters of lag ``> N`` of a strictly proper `F`.

    Realized as ``z^{-N} [A, A^N B; C, 0]`` so the infinite tail is exact.
    """
    if N < 0:
        raise ValidationError('N must be nonnegative')
    if np.linalg.norm(F.D) > TOL.strictly_proper:
        raise NonStrictlyProper('tail_project needs D = 0')
    if spectral_radius(F.A) >= 1.0 - TOL.stability_margin:
        raise UnstableSystem('tail_project needs a stable system')
    if N == 0:
        return F
    advanced = StateSpace(F.A, np.linalg.matrix_power(F.A, N) @ F.B, F.C, F.D)
    return delay(advanced, N)


def q_delayed(fs, N):
    """Optimal ``Q`` over ``z^{-(N+1)} H2``: ``-W_L P(T) W_R``.

    ``N = 0`` reproduces :func:`q_centralized`.
    """
    return -(fs.W_L @ tail_project(fs.T, N) @ fs.W_R)


def t_coefficients(fs, N):
    """``[T_1, ..., T_N]`` as an ``(N, p2, q2)`` array."""
    return markov(fs.T, N + 1)[1:]

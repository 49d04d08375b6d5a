"""Discrete-time state-space realizations and FIR transfer matrices.

A :class:`StateSpace` ``(A, B, C, D)`` stands for the transfer matrix
``G(z) = C (zI - A)^{-1} B + D`` whose Markov parameters are ``G_0 = D`` and
``G_i = C A^{i-1} B``.  Compositions never reduce the state dimension.
"""
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ._config import TOL
from .errors import SingularResolvent, UnstableSystem, ValidationError
from .numerics import as_matrix, solve_stein, spectral_radius

__all__ = [
    'FirTransfer',
    'StateSpace',
    'add',
    'delay',
    'evalz',
    'fir_to_ss',
    'h2_norm',
    'inner_product',
    'markov',
    'series',
    'static',
    'zero_system',
]


class StateSpace:
    """Real discrete-time realization ``(A, B, C, D)``.

    Instances are immutable; arithmetic returns new realizations.
    ``G1 @ G2`` is the series product ``G1(z) G2(z)``, ``+``/``-`` act on the
    transfer matrices, and numpy arrays are promoted to static gains.
    """

    __array_priority__ = 100  # let ndarray @ StateSpace reach __rmatmul__

    def __init__(self, A, B, C, D):
        A = as_matrix(A, 'A')
        D = as_matrix(D, 'D')
        n = A.shape[0]
        p, m = D.shape
        B = as_matrix(np.reshape(B, (n, m)), 'B')
        C = as_matrix(np.reshape(C, (p, n)), 'C')
        if A.shape != (n, n):
            raise ValidationError(f'A must be square, got {A.shape}')
        self.A, self.B, self.C, self.D = A, B, C, D

    @property
    def nstates(self):
        return self.A.shape[0]

    @property
    def shape(self):
        """(outputs, inputs)"""
        return self.D.shape

    def __repr__(self):
        p, m = self.shape
        return f'StateSpace(outputs={p}, inputs={m}, states={self.nstates})'

    def __neg__(self):
        return StateSpace(self.A, self.B, -self.C, -self.D)

    def __add__(self, other):
        return add(self, _promote(other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, -_promote(other))

    def __rsub__(self, other):
        return add(_promote(other), -self)

    def __matmul__(self, other):
        return series(self, other)

    def __rmatmul__(self, other):
        return series(other, self)

    def __call__(self, z):
        return evalz(self, z)

    def is_stable(self):
        return spectral_radius(self.A) < 1.0 - TOL.stability_margin


def _promote(G):
    return G if isinstance(G, StateSpace) else static(G)


def static(D):
    """Memoryless gain ``G(z) = D``."""
    D = as_matrix(D, 'D')
    return StateSpace(np.zeros((0, 0)), np.zeros((0, D.shape[1])),
                      np.zeros((D.shape[0], 0)), D)


def zero_system(p, m):
    return static(np.zeros((p, m)))


@dataclass(frozen=True)
class FirTransfer:
    """Strictly proper FIR transfer matrix ``sum_{i=1}^N z^{-i} M_i``.

    ``coefficients`` has shape ``(N, p, q)``; ``coefficients[i-1]`` is the
    coefficient of ``z^{-i}``.
    """

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=float)
        if c.ndim != 3 or c.shape[0] < 1:
            raise ValidationError(
                f'FIR coefficients must have shape (N>=1, p, q), got {c.shape}')
        if not np.all(np.isfinite(c)):
            raise ValidationError('FIR coefficients must be finite')
        c.setflags(write=False)
        object.__setattr__(self, 'coefficients', c)

    @classmethod
    def zeros(cls, N, p, q):
        return cls(np.zeros((N, p, q)))

    @property
    def horizon(self):
        return self.coefficients.shape[0]

    @property
    def shape(self):
        return self.coefficients.shape[1:]

    def __getitem__(self, lag):
        """Coefficient of ``z^{-lag}`` (zero outside ``1..N``)."""
        if 1 <= lag <= self.horizon:
            return self.coefficients[lag - 1]
        return np.zeros(self.shape)

    def __add__(self, other):
        return FirTransfer(self.coefficients + other.coefficients)

    def __sub__(self, other):
        return FirTransfer(self.coefficients - other.coefficients)

    def __neg__(self):
        return FirTransfer(-self.coefficients)

    def __mul__(self, scalar):
        return FirTransfer(scalar * self.coefficients)

    __rmul__ = __mul__

    def inner(self, other):
        """H2 inner product, i.e. the coefficient-wise trace sum."""
        return float(np.sum(self.coefficients * other.coefficients))

    def norm(self):
        return float(np.sqrt(self.inner(self)))

    def to_ss(self):
        return fir_to_ss(self)


def series(G1, G2):
    """Realization of ``G1(z) G2(z)``; states are stacked ``[x1; x2]``."""
    G1, G2 = _promote(G1), _promote(G2)
    if G1.shape[1] != G2.shape[0]:
        raise ValidationError(
            f'series: G1 has {G1.shape[1]} inputs but G2 has {G2.shape[0]} outputs')
    n1, n2 = G1.nstates, G2.nstates
    A = np.block([[G1.A, G1.B @ G2.C],
                  [np.zeros((n2, n1)), G2.A]])
    B = np.vstack([G1.B @ G2.D, G2.B])
    C = np.hstack([G1.C, G1.D @ G2.C])
    return StateSpace(A, B, C, G1.D @ G2.D)


def add(G1, G2):
    """Realization of ``G1(z) + G2(z)`` with block-diagonal state."""
    G1, G2 = _promote(G1), _promote(G2)
    if G1.shape != G2.shape:
        raise ValidationError(f'add: shapes {G1.shape} and {G2.shape} differ')
    return StateSpace(linalg.block_diag(G1.A, G2.A),
                      np.vstack([G1.B, G2.B]),
                      np.hstack([G1.C, G2.C]),
                      G1.D + G2.D)


def markov(G, k):
    """First `k` Markov parameters ``[G_0, ..., G_{k-1}]`` as a ``(k, p, m)`` array."""
    if k < 1:
        raise ValidationError('markov needs k >= 1')
    p, m = G.shape
    out = np.empty((k, p, m))
    out[0] = G.D
    X = G.B
    for i in range(1, k):
        out[i] = G.C @ X
        X = G.A @ X
    return out


def _require_stable(G, what='system'):
    if spectral_radius(G.A) >= 1.0 - TOL.stability_margin:
        raise UnstableSystem(f'{what} is not stable')


def inner_product(G, H):
    """H2 inner product ``sum_i Tr(G_i H_i^T)`` via a cross-Gramian."""
    G, H = _promote(G), _promote(H)
    if G.shape != H.shape:
        raise ValidationError(f'inner_product: shapes {G.shape} and {H.shape} differ')
    _require_stable(G, 'G')
    _require_stable(H, 'H')
    val = np.sum(G.D * H.D)
    if G.nstates and H.nstates:
        W = solve_stein(G.A, H.A, G.B @ H.B.T)
        val += np.sum((G.C @ W) * H.C)
    return float(val)


def h2_norm(G):
    """H2 norm, including the feedthrough term ``Tr(D D^T)``."""
    return float(np.sqrt(max(inner_product(G, G), 0.0)))


def evalz(G, z):
    """Frequency response ``C (zI - A)^{-1} B + D`` at a complex point."""
    G = _promote(G)
    if G.nstates == 0:
        return G.D.astype(complex)
    lam = np.linalg.eigvals(G.A)
    if np.min(np.abs(z - lam)) < TOL.resolvent:
        raise SingularResolvent(f'z = {z} is a pole of the realization')
    R = np.linalg.solve(z * np.eye(G.nstates) - G.A, G.B.astype(complex))
    return G.C @ R + G.D


def delay(G, N):
    """Realization of ``z^{-N} G(z)`` using ``N*p`` output shift states."""
    G = _promote(G)
    if N < 0:
        raise ValidationError('delay must be nonnegative')
    if N == 0:
        return G
    p, m = G.shape
    n = G.nstates
    ns = N * p
    A = np.zeros((n + ns, n + ns))
    A[:n, :n] = G.A
    A[n:n + p, :n] = G.C
    for k in range(1, N):
        A[n + k * p:n + (k + 1) * p, n + (k - 1) * p:n + k * p] = np.eye(p)
    B = np.vstack([G.B, G.D, np.zeros(((N - 1) * p, m))])
    C = np.zeros((p, n + ns))
    C[:, n + (N - 1) * p:] = np.eye(p)
    return StateSpace(A, B, C, np.zeros((p, m)))


def fir_to_ss(F):
    """Realization of an FIR transfer matrix with ``N*q`` input shift states."""
    N = F.horizon
    p, q = F.shape
    ns = N * q
    A = np.zeros((ns, ns))
    for k in range(1, N):
        A[k * q:(k + 1) * q, (k - 1) * q:k * q] = np.eye(q)
    B = np.zeros((ns, q))
    B[:q] = np.eye(q)
    C = np.hstack(list(F.coefficients))
    return StateSpace(A, B, C, np.zeros((p, q)))

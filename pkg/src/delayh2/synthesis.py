"""Decentralized model matching: the FIR quadratic program and its assembly.

The optimal parameter splits as ``Q* = U* + V*`` with ``V*`` an FIR term in
the pattern and ``U*`` in ``z^{-(N+1)} H2``.  Writing ``H = W_L^{-1}`` and
``J = W_R^{-1}``, the FIR part ``G = P_X(H V J)`` has coefficients
``G_i = sum_{j+k+l=i} H_j V_k J_l`` and the decentralized cost is

    ||P11 + P12 Q_N P21||^2 + ||G||^2 + 2 <G, T>,

a strictly convex quadratic in the free entries of ``V``.  The minimizer is
found from the normal equations and ``Q*`` is assembled as
``Q_N + W_L G W_R``.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .numerics import solve_spd
from .pattern import InformationPattern, full_pattern, project_fir
from .spectral import factorize, q_centralized, q_delayed, t_coefficients
from .statespace import (
    FirTransfer,
    StateSpace,
    fir_to_ss,
    h2_norm,
    inner_product,
    markov,
)

__all__ = [
    'QpProblem',
    'SynthesisResult',
    'assemble_qp',
    'feedback_closed_loop',
    'g_coefficients',
    'hj_coefficients',
    'pattern_violation',
    'plant_delay_matrix',
    'random_feasible_direction',
    'recover_feedback',
    'solve_v',
    'stationarity_residual',
    'synthesize',
]

DEFAULT_SEED = 20120601


def hj_coefficients(plant, cs, es, N):
    """First ``N`` Markov parameters of ``W_L^{-1}`` and ``W_R^{-1}``.

    Returns ``(H, J)`` with shapes ``(N, p2, p2)`` and ``(N, q2, q2)``.
    """
    A, B2, C2 = plant.A, plant.B2, plant.C2
    Oh, Ph = cs.OmegaHalf, es.PsiHalf
    H = np.empty((N,) + Oh.shape)
    J = np.empty((N,) + Ph.shape)
    H[0], J[0] = Oh, Ph
    KA = cs.K          # K A^{i-1}
    AL = es.L          # A^{i-1} L
    for i in range(1, N):
        H[i] = -Oh @ KA @ B2
        J[i] = -C2 @ AL @ Ph
        KA = KA @ A
        AL = A @ AL
    return H, J


def g_coefficients(V, H, J):
    """FIR part of ``H V J`` for an FIR `V`, as a :class:`FirTransfer`.

    `H` and `J` hold at least ``N`` leading coefficients (lags ``0..N-1``).
    """
    N = V.horizon
    Vc = V.coefficients
    if len(H) < N or len(J) < N:
        raise ValidationError('need N coefficients of H and J')
    if H.shape[2] != Vc.shape[1] or J.shape[1] != Vc.shape[2]:
        raise ValidationError('H, V, J dimensions do not conform')
    G = np.zeros((N, H.shape[1], J.shape[2]))
    for i in range(1, N + 1):
        for k in range(1, i + 1):
            for j in range(i - k + 1):
                G[i - 1] += H[j] @ Vc[k - 1] @ J[i - k - j]
    return FirTransfer(G)


@dataclass(frozen=True)
class QpProblem:
    """``min_v v' hessian v + 2 v' linear_term`` over the free entries of V.

    ``variable_index`` rows are ``(lag, block_row, block_col, row, col)`` with
    ``row``/``col`` the entrywise position in the ``p2 x q2`` coefficient,
    sorted lexicographically.
    """

    pattern: InformationPattern
    variable_index: np.ndarray
    map_matrix: np.ndarray
    linear_term: np.ndarray
    hessian: np.ndarray

    @property
    def size(self):
        return len(self.variable_index)

    def objective(self, v):
        v = np.asarray(v, dtype=float)
        return float(v @ self.hessian @ v + 2.0 * v @ self.linear_term)


def _variable_index(pat):
    ub = np.repeat(np.arange(len(pat.u_blocks)), pat.u_blocks)
    yb = np.repeat(np.arange(len(pat.y_blocks)), pat.y_blocks)
    rows = []
    p2, q2 = pat.shape
    for k in range(1, pat.N + 1):
        # (block row, block col, row, col) order
        for r, c in sorted(((r, c) for r in range(p2) for c in range(q2)
                            if pat.masks[k - 1, ub[r], yb[c]]),
                           key=lambda rc: (ub[rc[0]], yb[rc[1]], rc[0], rc[1])):
            rows.append((k, ub[r], yb[c], r, c))
    return np.array(rows, dtype=int).reshape(-1, 5)


def assemble_qp(pattern, H, J, T):
    """Build the quadratic program for the FIR part.

    Parameters
    ----------
    pattern : InformationPattern
    H, J : ndarray
        Leading ``N`` Markov parameters of ``W_L^{-1}`` and ``W_R^{-1}``.
    T : ndarray
        ``[T_1, ..., T_N]``, shape ``(N, p2, q2)``.
    """
    N = pattern.N
    p2, q2 = pattern.shape
    if T.shape != (N, p2, q2):
        raise ValidationError(f'T must have shape {(N, p2, q2)}, got {T.shape}')
    idx = _variable_index(pattern)
    M = np.zeros((N * p2 * q2, len(idx)))
    for col, (k, _, _, r, c) in enumerate(idx):
        # V = z^{-k} e_r e_c'  ->  G_i = sum_{j+l=i-k} H_j[:, r] J_l[c, :]
        G = np.zeros((N, p2, q2))
        for i in range(k, N + 1):
            for j in range(i - k + 1):
                G[i - 1] += np.outer(H[j][:, r], J[i - k - j][c, :])
        M[:, col] = G.ravel()
    t = T.ravel()
    hess = M.T @ M
    return QpProblem(pattern, idx, M, M.T @ t, 0.5 * (hess + hess.T))


def _scatter(qp, v):
    N = qp.pattern.N
    p2, q2 = qp.pattern.shape
    V = np.zeros((N, p2, q2))
    for (k, _, _, r, c), val in zip(qp.variable_index, v):
        V[k - 1, r, c] = val
    return FirTransfer(V)


def solve_v(qp):
    """Unique minimizer ``V*`` of the quadratic program, as an FIR matrix."""
    if qp.size == 0:
        return _scatter(qp, np.zeros(0))
    v = -solve_spd(qp.hessian, qp.linear_term)
    return _scatter(qp, v)


@dataclass(frozen=True)
class SynthesisResult:
    V_star: FirTransfer
    G: FirTransfer
    Q_star: StateSpace
    U_star: StateSpace
    Q_delayed: StateSpace
    Q_centralized: StateSpace
    norm_centralized: float
    norm_delayed: float
    norm_decentralized: float
    G_norm_sq: float
    G_T_inner: float
    decomposition_value: float
    qp: QpProblem = field(repr=False)
    T: np.ndarray = field(repr=False)
    factors: object = field(repr=False)
    control: object = field(repr=False)
    estimation: object = field(repr=False)


def _check_pattern(plant, pattern):
    _, p2, _, q2 = plant.dims
    if pattern.shape != (p2, q2):
        raise ValidationError(
            f'pattern blocks sum to {pattern.shape}, plant control/measurement '
            f'sizes are {(p2, q2)}')


def synthesize(plant, pattern):
    """Optimal ``Q`` in the pattern, with the centralized and delayed optima.

    Returns
    -------
    SynthesisResult
    """
    _check_pattern(plant, pattern)
    N = pattern.N
    cs, es, fs = factorize(plant)
    H, J = hj_coefficients(plant, cs, es, N)
    T = t_coefficients(fs, N)
    qp = assemble_qp(pattern, H, J, T)
    V = solve_v(qp)
    G = g_coefficients(V, H, J)

    Q0 = q_centralized(fs)
    QN = q_delayed(fs, N)
    # no FIR freedom: Q* is exactly the delayed optimum
    Qs = QN if qp.size == 0 else QN + fs.W_L @ fir_to_ss(G) @ fs.W_R
    Us = Qs - fir_to_ss(V)

    n0 = h2_norm(plant.closed_loop(Q0))
    nN = h2_norm(plant.closed_loop(QN))
    ns = nN if qp.size == 0 else h2_norm(plant.closed_loop(Qs))
    gg = G.inner(G)
    gt = float(np.sum(G.coefficients * T))
    return SynthesisResult(V, G, Qs, Us, QN, Q0, n0, nN, ns, gg, gt, gg + 2 * gt,
                           qp, T, fs, cs, es)


def random_feasible_direction(pattern, rng, extra_lags=5):
    """Random FIR ``delta`` in the pattern, dense on lags ``N+1..N+extra``,
    scaled to unit H2 norm.  ``pattern=None`` is not accepted; use a full
    pattern for unconstrained directions."""
    N = pattern.N
    p2, q2 = pattern.shape
    c = rng.standard_normal((N + extra_lags, p2, q2))
    c[:N] *= pattern.entry_masks()
    c /= np.linalg.norm(c)
    return FirTransfer(c)


def stationarity_residual(plant, Q, pattern=None, trials=100, seed=DEFAULT_SEED,
                          extra_lags=5):
    """Largest first-order change of the squared cost along random feasible
    unit directions.

    The derivative along ``delta`` is ``2 <P11 + P12 Q P21, P12 delta P21>``.
    With ``pattern=None`` the directions range over all of ``(1/z) H2``
    (truncated to ``extra_lags`` lags).
    """
    _, p2, _, q2 = plant.dims
    if pattern is None:
        pattern = full_pattern([p2], [q2], max(extra_lags, 1))
        extra_lags = 0
    rng = np.random.default_rng(seed)
    E = plant.closed_loop(Q)
    worst = 0.0
    for _ in range(trials):
        d = fir_to_ss(random_feasible_direction(pattern, rng, extra_lags))
        worst = max(worst, abs(2.0 * inner_product(E, plant.P12 @ d @ plant.P21)))
    return worst


def recover_feedback(Q, plant):
    """Controller ``K = Q (I + P22 Q)^{-1}`` for strictly proper `Q`.

    States are ordered ``[x_Q; x_P22]``.
    """
    if np.linalg.norm(Q.D) > 1e-12:
        raise ValidationError('recover_feedback needs a strictly proper Q')
    A, B2, C2 = plant.A, plant.B2, plant.C2
    Ak = np.block([[Q.A, -Q.B @ C2],
                   [B2 @ Q.C, A]])
    Bk = np.vstack([Q.B, np.zeros((plant.n, Q.B.shape[1]))])
    Ck = np.hstack([Q.C, np.zeros((Q.C.shape[0], plant.n))])
    return StateSpace(Ak, Bk, Ck, np.zeros(Q.shape))


def feedback_closed_loop(plant, K):
    """``P11 + P12 K (I - P22 K)^{-1} P21`` for strictly proper `K`."""
    if np.linalg.norm(K.D) > 1e-12:
        raise ValidationError('feedback_closed_loop needs a strictly proper K')
    A, B1, B2, C1, C2, D12, D21 = (plant.A, plant.B1, plant.B2, plant.C1,
                                   plant.C2, plant.D12, plant.D21)
    # u = Ck xk, xk+ = Ak xk + Bk y, y = C2 x + D21 w
    Acl = np.block([[A, B2 @ K.C],
                    [K.B @ C2, K.A]])
    Bcl = np.vstack([B1, K.B @ D21])
    Ccl = np.hstack([C1, D12 @ K.C])
    return StateSpace(Acl, Bcl, Ccl, np.zeros((C1.shape[0], B1.shape[1])))


def plant_delay_matrix(plant, pattern, tol=1e-12):
    """Block delays of ``P22`` for :func:`~delayh2.pattern.is_quadratically_invariant`.

    Entry ``[b, a]`` is the first lag at which measurement block ``b`` sees
    input block ``a``; blocks silent up to lag ``2N + 1`` get ``2N + 2``.
    """
    horizon = 2 * pattern.N + 2
    mk = markov(plant.P22, horizon)
    ub = np.cumsum((0,) + pattern.u_blocks)
    yb = np.cumsum((0,) + pattern.y_blocks)
    d = np.full((len(pattern.y_blocks), len(pattern.u_blocks)), horizon, dtype=int)
    for b in range(len(pattern.y_blocks)):
        for a in range(len(pattern.u_blocks)):
            blk = np.abs(mk[1:, yb[b]:yb[b + 1], ub[a]:ub[a + 1]]).max(axis=(1, 2))
            hit = np.nonzero(blk > tol)[0]
            if hit.size:
                d[b, a] = hit[0] + 1
    return d


def pattern_violation(Q, pattern):
    """Largest Markov entry of `Q` at lags ``1..N`` outside the pattern."""
    mk = markov(Q, pattern.N + 1)[1:]
    outside = FirTransfer(mk) - project_fir(FirTransfer(mk), pattern)
    return float(np.max(np.abs(outside.coefficients)))

"""Delayed information-sharing patterns.

A pattern fixes the admissible FIR part of the controller: at lag ``i``
(``1 <= i <= N``) block ``(a, b)`` of the coefficient may be nonzero only if
``masks[i-1][a, b]`` is set.  Beyond lag ``N`` everything is shared.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DelayExceedsHorizon, ValidationError
from .statespace import FirTransfer

__all__ = [
    'FAMILIES',
    'InformationPattern',
    'chain_pattern',
    'family_pattern',
    'from_delay_matrix',
    'full_pattern',
    'is_quadratically_invariant',
    'n_step_pattern',
    'project_fir',
    'pure_delay_pattern',
]

FAMILIES = ('tri', 'di', 'low', 'pure-delay')


def _partition(sizes, label):
    sizes = tuple(int(s) for s in sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValidationError(f'{label} must be a nonempty list of positive sizes')
    return sizes


@dataclass(frozen=True, eq=False)
class InformationPattern:
    """Subspace of FIR controllers ``sum_{i<=N} z^{-i} V_i`` with block masks.

    Parameters
    ----------
    N : int
        Delay horizon; lags above ``N`` are unconstrained.
    u_blocks, y_blocks : tuple of int
        Sizes of the control-input (rows) and measurement (columns) blocks.
    masks : (N, len(u_blocks), len(y_blocks)) bool array
    """

    N: int
    u_blocks: tuple
    y_blocks: tuple
    masks: np.ndarray

    def __post_init__(self):
        N = int(self.N)
        if N < 1:
            raise ValidationError('pattern horizon N must be >= 1')
        u = _partition(self.u_blocks, 'u_blocks')
        y = _partition(self.y_blocks, 'y_blocks')
        m = np.array(self.masks)
        if m.shape != (N, len(u), len(y)):
            raise ValidationError(
                f'masks must have shape {(N, len(u), len(y))}, got {m.shape}')
        if not np.all((m == 0) | (m == 1)):
            raise ValidationError('masks must be 0/1')
        m = m.astype(bool)
        if np.any(m[:-1] & ~m[1:]):
            raise ValidationError('masks must be nondecreasing in the lag')
        m.setflags(write=False)
        object.__setattr__(self, 'N', N)
        object.__setattr__(self, 'u_blocks', u)
        object.__setattr__(self, 'y_blocks', y)
        object.__setattr__(self, 'masks', m)

    @property
    def shape(self):
        """Entrywise ``(p2, q2)``."""
        return sum(self.u_blocks), sum(self.y_blocks)

    def entry_masks(self):
        """Masks expanded to scalar entries, shape ``(N, p2, q2)``."""
        ru = np.repeat(np.arange(len(self.u_blocks)), self.u_blocks)
        ry = np.repeat(np.arange(len(self.y_blocks)), self.y_blocks)
        return self.masks[:, ru][:, :, ry]

    def free_count(self):
        return int(self.entry_masks().sum())

    def __eq__(self, other):
        if not isinstance(other, InformationPattern):
            return NotImplemented
        return (self.N == other.N and self.u_blocks == other.u_blocks
                and self.y_blocks == other.y_blocks
                and np.array_equal(self.masks, other.masks))

    def delays(self):
        """Block delay matrix: first lag at which each block is allowed.

        Blocks never allowed within the horizon get ``N + 1``.
        """
        d = np.full(self.masks.shape[1:], self.N + 1, dtype=int)
        for i in range(self.N, 0, -1):
            d[self.masks[i - 1]] = i
        return d

    def to_dict(self):
        return {'N': self.N, 'u_blocks': list(self.u_blocks),
                'y_blocks': list(self.y_blocks),
                'masks': self.masks.astype(int).tolist()}

    @classmethod
    def from_dict(cls, d):
        if 'N' not in d or 'u_blocks' not in d or 'y_blocks' not in d:
            raise ValidationError('pattern needs keys N, u_blocks, y_blocks')
        if 'masks' in d:
            return cls(d['N'], d['u_blocks'], d['y_blocks'], np.array(d['masks']))
        if 'delays' in d:
            return from_delay_matrix(d['delays'], d['u_blocks'], d['y_blocks'], d['N'])
        raise ValidationError('pattern needs either "masks" or "delays"')


def _blocks_square(u_blocks, y_blocks):
    if len(u_blocks) != len(y_blocks):
        raise ValidationError('u_blocks and y_blocks must have the same length')
    return len(u_blocks)


def n_step_pattern(u_blocks, y_blocks, N):
    """Each player sees only its own measurements for ``N`` steps."""
    k = _blocks_square(u_blocks, y_blocks)
    return InformationPattern(N, u_blocks, y_blocks,
                              np.broadcast_to(np.eye(k, dtype=bool), (N, k, k)))


def chain_pattern(u_blocks, y_blocks):
    """Three-player chain: neighbours share after one step, ends after two."""
    if len(u_blocks) != 3 or len(y_blocks) != 3:
        raise ValidationError('the chain pattern needs exactly three players')
    tri = np.array([[1, 1, 0], [1, 1, 1], [0, 1, 1]], dtype=bool)
    return InformationPattern(2, u_blocks, y_blocks, np.stack([np.eye(3, dtype=bool), tri]))


def from_delay_matrix(delays, u_blocks, y_blocks, N):
    """Block ``(a, b)`` becomes available at lag ``delays[a][b]``."""
    d = np.asarray(delays, dtype=int)
    if d.shape != (len(u_blocks), len(y_blocks)):
        raise ValidationError(
            f'delay matrix must be {len(u_blocks)}x{len(y_blocks)}, got {d.shape}')
    if np.any(d < 1):
        raise ValidationError('delays must be >= 1')
    if np.any(d > N + 1):
        raise DelayExceedsHorizon(f'a delay exceeds N + 1 = {N + 1}')
    lags = np.arange(1, N + 1)[:, None, None]
    return InformationPattern(N, u_blocks, y_blocks, lags >= d[None])


def pure_delay_pattern(u_blocks, y_blocks, N):
    """No FIR freedom: ``S = z^{-(N+1)} R_p``."""
    return InformationPattern(N, u_blocks, y_blocks,
                              np.zeros((N, len(u_blocks), len(y_blocks)), dtype=bool))


def full_pattern(u_blocks, y_blocks, N):
    """No constraint at all (centralized)."""
    return InformationPattern(N, u_blocks, y_blocks,
                              np.ones((N, len(u_blocks), len(y_blocks)), dtype=bool))


def family_pattern(family, u_blocks, y_blocks, N):
    """Same sparsity at every lag: lower-triangular ('tri'), diagonal ('di'),
    last diagonal block only ('low'), or nothing ('pure-delay')."""
    k = _blocks_square(u_blocks, y_blocks)
    if family == 'tri':
        m = np.tril(np.ones((k, k), dtype=bool))
    elif family == 'di':
        m = np.eye(k, dtype=bool)
    elif family == 'low':
        m = np.zeros((k, k), dtype=bool)
        m[-1, -1] = True
    elif family == 'pure-delay':
        m = np.zeros((k, k), dtype=bool)
    else:
        raise ValidationError(f'unknown pattern family {family!r}; choose from {FAMILIES}')
    return InformationPattern(N, u_blocks, y_blocks, np.broadcast_to(m, (N, k, k)))


def project_fir(F, pat):
    """Zero every coefficient entry outside the allowed blocks."""
    if F.horizon != pat.N or F.shape != pat.shape:
        raise ValidationError(
            f'FIR of horizon {F.horizon}, shape {F.shape} does not match the '
            f'pattern (N={pat.N}, shape {pat.shape})')
    return FirTransfer(np.where(pat.entry_masks(), F.coefficients, 0.0))


def is_quadratically_invariant(pat, plant_delay):
    """Block-level sufficient test that ``K P22 K`` stays in the pattern.

    ``plant_delay[b][a]`` is the first lag at which measurement block ``b``
    responds to input block ``a``.  Blocks of ``P22`` that never respond can
    be given any value greater than ``2N``.
    """
    d = np.asarray(plant_delay, dtype=int)
    nu, ny = pat.masks.shape[1:]
    if d.shape != (ny, nu):
        raise ValidationError(f'plant_delay must be {ny}x{nu}, got {d.shape}')
    N = pat.N
    first = pat.delays()  # N + 1 where never allowed within the horizon
    for a in range(nu):
        for b in range(ny):
            if first[a, b] > N:
                continue
            for a2 in range(nu):
                for b2 in range(ny):
                    if first[a2, b2] > N:
                        continue
                    # earliest composite lag; every later lag up to N must be allowed
                    lag = first[a, b] + first[a2, b2] + d[b, a2] - 1
                    if lag <= N and not pat.masks[lag - 1:, a, b2].all():
                        return False
    return True

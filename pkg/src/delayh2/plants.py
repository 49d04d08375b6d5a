"""Reference plants: the three-player chain, the two-player sweep plant,
and a seeded generator of random stable plants."""
import numpy as np

from .riccati import Plant

__all__ = ['chain_plant', 'chain_plant_delay', 'random_plant', 'sweep_plant']


def chain_plant():
    """Three coupled scalar subsystems; each player actuates and measures
    its own state."""
    I, Z = np.eye(3), np.zeros((3, 3))
    A = np.array([[0.5, 0.2, 0.0],
                  [0.2, 0.5, 0.2],
                  [0.0, 0.2, 0.5]])
    return Plant(A=A,
                 B1=np.hstack([I, Z]), B2=I,
                 C1=np.vstack([I, Z]), C2=I,
                 D12=np.vstack([Z, I]), D21=np.hstack([Z, I]))


def chain_plant_delay():
    """First lag at which measurement ``b`` of the chain plant sees input ``a``."""
    return np.array([[1, 2, 3], [2, 1, 2], [3, 2, 1]])


def sweep_plant():
    """Two-player, four-state plant used for the increasing-delay sweep."""
    A = np.array([[1.0, 0.2, 0.0, 0.0],
                  [-0.2, 0.8, 0.0, 0.2],
                  [0.0, 0.0, 1.0, 0.2],
                  [0.0, -0.2, -0.2, 0.8]])
    B = np.array([[0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                  [0.2, -0.2, 0.0, 0.0, 0.2, 0.0],
                  [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                  [0.2, 0.2, 0.0, 0.0, 0.0, 0.2]])
    C = np.array([[10.0, 0.0, -10.0, 0.0],
                  [0.0, 0.0, 0.0, 0.0],
                  [0.0, 0.0, 0.0, 0.0],
                  [1.0, 0.0, 0.0, 0.0],
                  [0.0, 0.0, 1.0, 0.0]])
    D = np.zeros((5, 6))
    D[1, 4] = D[2, 5] = 1.0
    D[3, 2] = D[4, 3] = 1.0
    return Plant(A=A, B1=B[:, :4], B2=B[:, 4:], C1=C[:3], C2=C[3:],
                 D12=D[:3, 4:], D21=D[3:, :4])


def random_plant(rng, n=None, p2=2, q2=2, rho=None, cross=0.3):
    """Random stable plant with ``D12 = [cross*R; I]`` and ``D21 = [cross*R, I]``.

    Parameters
    ----------
    rng : numpy.random.Generator
    n : int, optional
        State dimension; drawn from ``2..4`` when omitted.
    rho : float, optional
        Spectral radius of ``A``; drawn from ``[0.3, 0.8]`` when omitted.
    """
    if n is None:
        n = int(rng.integers(2, 5))
    if rho is None:
        rho = float(rng.uniform(0.3, 0.8))
    A = rng.standard_normal((n, n))
    A *= rho / max(np.max(np.abs(np.linalg.eigvals(A))), 1e-12)
    B1 = np.hstack([rng.standard_normal((n, n)), np.zeros((n, q2))])
    D21 = np.hstack([cross * rng.standard_normal((q2, n)), np.eye(q2)])
    C1 = np.vstack([rng.standard_normal((n, n)), np.zeros((p2, n))])
    D12 = np.vstack([cross * rng.standard_normal((n, p2)), np.eye(p2)])
    return Plant(A=A, B1=B1, B2=rng.standard_normal((n, p2)), C1=C1,
                 C2=rng.standard_normal((q2, n)), D12=D12, D21=D21)

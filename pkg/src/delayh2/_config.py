"""Default numerical tolerances, kept in one place."""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    symmetry: float = 1e-10
    eig_floor: float = 1e-12       # relative floor: min eig <= eig_floor * max eig is rejected
    stability_margin: float = 1e-9  # rho >= 1 - stability_margin counts as unstable
    resolvent: float = 1e-12
    riccati_step: float = 1e-12
    riccati_maxiter: int = 100_000
    strictly_proper: float = 1e-12
    oracle_cond: float = 1e12


TOL = Tolerances()

import numpy as np
import pytest

from delayh2.errors import NotPositiveDefinite, ValidationError
from delayh2.riccati import (
    Plant,
    control_dare,
    control_residual,
    estimation_dare,
    estimation_residual,
    riccati_iterates,
)


def scalar_control_plant():
    # A = 0, B2 = 1, C1 = (1; 0), D12 = (0; 1)
    return Plant(A=[[0.0]], B1=[[1.0, 0.0]], B2=[[1.0]], C1=[[1.0], [0.0]],
                 C2=[[1.0]], D12=[[0.0], [1.0]], D21=[[0.0, 1.0]])


def test_zero_cost_output():
    p = Plant(A=[[0.5]], B1=[[1.0, 0.0]], B2=[[1.0]], C1=[[0.0], [0.0]],
              C2=[[1.0]], D12=[[0.0], [2.0]], D21=[[0.0, 1.0]])
    cs = control_dare(p)
    np.testing.assert_array_equal(cs.X, 0)
    np.testing.assert_array_equal(cs.K, 0)
    np.testing.assert_allclose(cs.Omega, [[4.0]])


def test_scalar_control_closed_form():
    # X_1 = C1'C1 = 1 and the map is constant afterwards because A = 0
    cs = control_dare(scalar_control_plant())
    np.testing.assert_allclose(cs.X, [[1.0]])
    np.testing.assert_allclose(cs.Omega, [[2.0]])
    np.testing.assert_allclose(cs.K, [[0.0]], atol=1e-15)


def test_no_process_noise():
    p = Plant(A=[[0.5]], B1=[[0.0, 0.0]], B2=[[1.0]], C1=[[1.0], [0.0]],
              C2=[[1.0]], D12=[[0.0], [1.0]], D21=[[0.0, 3.0]])
    es = estimation_dare(p)
    np.testing.assert_array_equal(es.Y, 0)
    np.testing.assert_array_equal(es.L, 0)
    np.testing.assert_allclose(es.Psi, [[9.0]])


def test_scalar_estimation_mirror():
    p = Plant(A=[[0.0]], B1=[[1.0, 0.0]], B2=[[1.0]], C1=[[1.0], [0.0]],
              C2=[[1.0]], D12=[[0.0], [1.0]], D21=[[0.0, 1.0]])
    es = estimation_dare(p)
    np.testing.assert_allclose(es.Y, [[1.0]])
    np.testing.assert_allclose(es.Psi, [[2.0]])
    np.testing.assert_allclose(es.L, [[0.0]], atol=1e-15)


def check_solutions(p):
    cs, es = control_dare(p), estimation_dare(p)
    assert control_residual(p, cs.X) <= 1e-9 * (1 + np.linalg.norm(cs.X))
    assert estimation_residual(p, es.Y) <= 1e-9 * (1 + np.linalg.norm(es.Y))
    assert np.max(np.abs(np.linalg.eigvals(p.A + p.B2 @ cs.K))) < 1
    assert np.max(np.abs(np.linalg.eigvals(p.A + es.L @ p.C2))) < 1
    assert cs.closed_loop_radius < 1 and es.closed_loop_radius < 1
    # gain and Omega definitions
    Om = p.D12.T @ p.D12 + p.B2.T @ cs.X @ p.B2
    np.testing.assert_allclose(cs.Omega, Om, atol=1e-12)
    np.testing.assert_allclose(cs.K, -np.linalg.solve(Om, p.B2.T @ cs.X @ p.A + p.D12.T @ p.C1),
                               atol=1e-12)
    Psi = p.D21 @ p.D21.T + p.C2 @ es.Y @ p.C2.T
    np.testing.assert_allclose(es.Psi, Psi, atol=1e-12)
    np.testing.assert_allclose(es.L, -(p.A @ es.Y @ p.C2.T + p.B1 @ p.D21.T) @ np.linalg.inv(Psi),
                               atol=1e-12)
    assert np.min(np.linalg.eigvalsh(cs.X)) >= -1e-12
    return cs, es


def test_chain_plant(chain):
    check_solutions(chain)


def test_sweep_plant(sweep):
    check_solutions(sweep)


def test_random_plants(random_plants):
    for p in random_plants:
        _cs, es = check_solutions(p)
        dual = control_dare(p.dual())
        np.testing.assert_allclose(es.Y, dual.X, atol=1e-9)
        np.testing.assert_allclose(es.L, dual.K.T, atol=1e-9)


def test_against_scipy_dare(random_plants):
    from scipy.linalg import solve_discrete_are
    for p in random_plants[:5]:
        X = solve_discrete_are(p.A, p.B2, p.C1.T @ p.C1, p.D12.T @ p.D12, s=p.C1.T @ p.D12)
        np.testing.assert_allclose(control_dare(p).X, X, atol=1e-8 * (1 + np.linalg.norm(X)))


def test_iterates_monotone(chain, sweep):
    for p in (chain, sweep):
        it = riccati_iterates(p.A, p.B2, p.C1.T @ p.C1, p.D12.T @ p.D12, p.C1.T @ p.D12)
        prev = next(it)
        for _ in range(200):
            X = next(it)
            assert np.min(np.linalg.eigvalsh(X - prev)) >= -1e-10
            prev = X


def test_plant_validation():
    good = {"A": [[0.5]], "B1": [[1.0, 0.0]], "B2": [[1.0]], "C1": [[1.0], [0.0]],
                "C2": [[1.0]], "D12": [[0.0], [1.0]], "D21": [[0.0, 1.0]]}
    Plant(**good)
    with pytest.raises(NotPositiveDefinite, match="D12'D12"):
        Plant(**dict(good, D12=[[0.0], [0.0]]))
    with pytest.raises(NotPositiveDefinite, match="D21D21'"):
        Plant(**dict(good, D21=[[0.0, 0.0]]))
    with pytest.raises(ValidationError, match='not stable'):
        Plant(**dict(good, A=[[1.0]]))
    with pytest.raises(ValidationError):
        Plant(**dict(good, B2=[[1.0], [1.0]]))


def test_plant_dict_roundtrip(chain, sweep):
    for p in (chain, sweep):
        assert Plant.from_dict(p.to_dict()) == p

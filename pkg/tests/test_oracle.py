import numpy as np
import pytest

from delayh2.errors import ValidationError
from delayh2.oracle import OracleConfig, fir_truncated_optimum
from delayh2.pattern import full_pattern, n_step_pattern
from delayh2.riccati import Plant
from delayh2.synthesis import synthesize


def test_unconstrained_matches_centralized(chain):
    pat = full_pattern([1] * 3, [1] * 3, 1)
    res = fir_truncated_optimum(chain, pat, OracleConfig(60, 200))
    assert abs(res.norm - synthesize(chain, pat).norm_centralized) <= 1e-4


def test_chain_value(chain, chain_pat):
    res = fir_truncated_optimum(chain, chain_pat)
    assert res.norm == pytest.approx(2.1082, abs=1e-3)
    assert res.Q_fir.horizon == 60
    # first N lags respect the pattern
    em = chain_pat.entry_masks()
    np.testing.assert_array_equal(res.Q_fir.coefficients[:2][~em], 0)


def test_disconnected_plant_gives_zero():
    p = Plant(A=[[0.5]], B1=[[0.0, 0.0]], B2=[[1.0]], C1=[[0.0], [0.0]],
              C2=[[1.0]], D12=[[0.0], [1.0]], D21=[[0.0, 1.0]])
    res = fir_truncated_optimum(p, n_step_pattern([1], [1], 1), OracleConfig(10, 30))
    assert res.norm == 0.0
    assert res.Q_fir.norm() == 0.0


def test_bounds_against_synthesis(chain, chain_pat, random_plants):
    cases = [(chain, chain_pat)] + [(p, n_step_pattern([1, 1], [1, 1], 2))
                                    for p in random_plants[:5]]
    for plant, pat in cases:
        syn = synthesize(plant, pat).norm_decentralized
        orc = fir_truncated_optimum(plant, pat).norm
        assert syn - 1e-9 <= orc <= syn + 1e-3


def test_monotone_in_fir_length(chain, chain_pat, random_plants):
    for plant, pat in ((chain, chain_pat),
                       (random_plants[0], n_step_pattern([1, 1], [1, 1], 2))):
        norms = [fir_truncated_optimum(plant, pat, OracleConfig(M, 200)).norm
                 for M in (40, 60, 80)]
        assert norms[0] >= norms[1] - 1e-12 and norms[1] >= norms[2] - 1e-12


def test_short_fir_is_worse(sweep):
    pat = n_step_pattern([1, 1], [1, 1], 2)
    short = fir_truncated_optimum(sweep, pat, OracleConfig(3, 60)).norm
    assert short > synthesize(sweep, pat).norm_decentralized + 1e-3


def test_config_validation(chain, chain_pat):
    with pytest.raises(ValidationError):
        fir_truncated_optimum(chain, chain_pat, OracleConfig(2, 200))
    with pytest.raises(ValidationError):
        fir_truncated_optimum(chain, chain_pat, OracleConfig(60, 61))

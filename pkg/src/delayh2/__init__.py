"""Decentralized H2 model matching with delayed information sharing.

The optimal controller parameter is built from the centralized control and
estimation Riccati equations of the plant plus a small quadratic program
over the finite-impulse-response part allowed by the sharing pattern.
"""
from .errors import DelayH2Error, NumericalError, ValidationError
from .oracle import OracleConfig, fir_truncated_optimum
from .pattern import (
                      InformationPattern,
                      chain_pattern,
                      family_pattern,
                      from_delay_matrix,
                      full_pattern,
                      is_quadratically_invariant,
                      n_step_pattern,
                      project_fir,
                      pure_delay_pattern,
)
from .plants import chain_plant, random_plant, sweep_plant
from .riccati import Plant, control_dare, estimation_dare
from .spectral import build_factors, factorize, q_centralized, q_delayed, tail_project
from .statespace import (
                      FirTransfer,
                      StateSpace,
                      add,
                      delay,
                      evalz,
                      fir_to_ss,
                      h2_norm,
                      inner_product,
                      markov,
                      series,
)
from .synthesis import recover_feedback, stationarity_residual, synthesize

__version__ = '0.1.0'

__all__ = [
                      'DelayH2Error',
                      'FirTransfer',
                      'InformationPattern',
                      'NumericalError',
                      'OracleConfig',
                      'Plant',
                      'StateSpace',
                      'ValidationError',
                      'add',
                      'build_factors',
                      'chain_pattern',
                      'chain_plant',
                      'control_dare',
                      'delay',
                      'estimation_dare',
                      'evalz',
                      'factorize',
                      'family_pattern',
                      'fir_to_ss',
                      'fir_truncated_optimum',
                      'from_delay_matrix',
                      'full_pattern',
                      'h2_norm',
                      'inner_product',
                      'is_quadratically_invariant',
                      'markov',
                      'n_step_pattern',
                      'project_fir',
                      'pure_delay_pattern',
                      'q_centralized',
                      'q_delayed',
                      'random_plant',
                      'recover_feedback',
                      'series',
                      'stationarity_residual',
                      'sweep_plant',
                      'synthesize',
                      'tail_project',
]

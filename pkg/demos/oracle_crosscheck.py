"""
Checking the optimum by brute force
===================================

Fit a long FIR controller by least squares over the allowed entries.  Its
cost should match the closed-form answer.
"""

import numpy as np

from delayh2 import n_step_pattern, random_plant, synthesize
from delayh2.oracle import OracleConfig, fir_truncated_optimum

rng = np.random.default_rng(7)
pattern = n_step_pattern([1, 1], [1, 1], 2)

for i in range(5):
    plant = random_plant(rng)
    exact = synthesize(plant, pattern).norm_decentralized
    brute = fir_truncated_optimum(plant, pattern, OracleConfig(60, 200)).norm
    print(f'plant {i} (n={plant.n}): {exact:.8f} vs {brute:.8f}, diff {brute - exact:.1e}')

"""
From Q back to a controller
===========================

The optimum is found in terms of a model matching parameter Q.  The actual
feedback K = Q (I + P22 Q)^-1 gives the same closed loop, and for the chain
pattern it respects the same delays.
"""

import numpy as np

from delayh2 import chain_pattern, chain_plant, synthesize
from delayh2.statespace import h2_norm, markov
from delayh2.synthesis import feedback_closed_loop, recover_feedback

plant = chain_plant()
res = synthesize(plant, chain_pattern([1, 1, 1], [1, 1, 1]))
K = recover_feedback(res.Q_star, plant)

print(f'norm with Q*: {res.norm_decentralized:.10f}')
print(f'norm with K:  {h2_norm(feedback_closed_loop(plant, K)):.10f}')

# zeros in the first Markov parameters of K show the delay structure
mk = markov(K, 3)
for lag in (1, 2):
    print(f'K lag {lag}:')
    print(np.where(np.abs(mk[lag]) < 1e-12, 0.0, np.round(mk[lag], 4)))

"""
Three players on a chain
========================

Each player measures and actuates one state of a coupled chain.  Messages
between neighbours take one step, so player 1 hears about player 3 after two.
"""

import numpy as np

from delayh2 import chain_pattern, chain_plant, synthesize

plant = chain_plant()
pattern = chain_pattern([1, 1, 1], [1, 1, 1])

# which measurements each controller may use at lags 1 and 2
for lag, mask in enumerate(pattern.masks, start=1):
    print(f'lag {lag}:\n{mask}')

res = synthesize(plant, pattern)

# the decentralized cost sits between the two easy problems
print(f'centralized   {res.norm_centralized:.4f}')
print(f'chain pattern {res.norm_decentralized:.4f}')
print(f'pure delay    {res.norm_delayed:.4f}')

# the correction on top of the delayed controller is a short FIR filter
print('V* coefficients, lag 1:')
print(np.round(res.V_star.coefficients[0], 4))

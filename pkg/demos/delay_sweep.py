"""
Cost of communication delay
===========================

Sweep the delay horizon for four pattern families on the two-player plant.
More delay never helps, and a richer pattern never hurts.
"""

from delayh2 import family_pattern, sweep_plant, synthesize
from delayh2.pattern import FAMILIES

plant = sweep_plant()

print('N  ' + '  '.join(f'{f:>10}' for f in FAMILIES))
for N in range(1, 9):
    norms = [synthesize(plant, family_pattern(f, [1, 1], [1, 1], N)).norm_decentralized
             for f in FAMILIES]
    print(f'{N}  ' + '  '.join(f'{v:10.4f}' for v in norms))

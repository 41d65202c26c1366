#! /usr/bin/env python

import timeop
import numpy as np

lab = timeop.Laboratory()

lab.Quiet = False
lab.Verbose = True

lab.mode = 'time' # time, halfline_momentum or radial_momentum
lab.e_max = 50. # energy cutoff
lab.n_list = [499, 999] # interior node counts
lab.hbar = 1.
lab.suites = ['deficiency', 'algebra']
lab.test_functions = [('power_exp', (1, 1)), ('gaussian', (5, 1))]
lab.outdir = 'timeop_output'

lab.initialize()
lab.run()
lab.finalize()
lab.output() # writes one report per suite and grid

# The building blocks can also be used directly
grid = timeop.make_grid(50., 999)
f = timeop.sample('power_exp', grid, (1, 1))
print(timeop.canonical_residual(f))
print(timeop.variant_commutator_gap(f))
print("Deficiency indices of T:", timeop.deficiency_indices('T', grid))

U = timeop.sine_transform(grid)
p = timeop.time_distribution(f, U)
print("Most likely time:", p.mode(), "mean:", p.mean())
phi = timeop.hft_forward(f, np.array([0., 1j, 1 + 1j]))
print("Hardy-space values:", phi)

"""Exact projection of the data-sharing rate region.

The full multicoding region lives over eight rate variables (two message
rates plus six auxiliary codebook rates) with symbolic information atoms on
the right-hand sides.  Fourier-Motzkin elimination over exact rationals
projects out the auxiliary rates; specializing the correlation structure
first reproduces each closed-form two-dimensional region.
"""

import numpy as np

from cranbounds import (corollary1_system, discrete, format_system,
                        gds_project, gds_theorem1_system,
                        regions_equal_sampled)
from cranbounds.discrete import Channel

full = gds_theorem1_system()
print(f"full system: {len(full)} constraints over {full.variables}")
print(f"atom count: {len(full.atoms())}")

# Only common codewords: degenerate the private auxiliaries and project.
proj = gds_project(full, "scheme-I")
print("\ncommon-codewords projection onto (R1, R2):")
print(format_system(proj))

explicit = corollary1_system()
print("explicit closed form:")
print(format_system(explicit))

# The two systems look different but describe the same region.  Check by
# sampled membership on a valuation computed from an actual distribution.
rng = np.random.default_rng(0)
p = discrete.random_joint_pmf(rng, [("U0", 2), ("V0", 2)])
p = discrete.add_deterministic(p, "X1", 2, ["U0", "V0"], lambda a, b: a & b)
p = discrete.add_deterministic(p, "X2", 2, ["U0", "V0"], lambda a, b: a ^ b)
ch = Channel.from_map([("X1", 2), ("X2", 2)], [("Y1", 2), ("Y2", 2)],
                      lambda a, b: (a, a ^ b))
p = discrete.compose(p, ch)

caps = {"C1": 1.0, "C2": 1.0, "C12": 0.25, "C21": 0.25}
atoms = sorted(proj.atoms() | explicit.atoms())
valuation = discrete.atom_valuation(p, atoms, constants=caps)
rep = regions_equal_sampled(proj, explicit, [valuation], n_points=2000, seed=1)
print(f"sampled membership agreement: {rep['agree']} "
      f"({rep['points_checked']} points)")

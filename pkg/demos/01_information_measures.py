"""Discrete information measures on named-variable joint distributions.

Builds a few small pmfs, walks through entropy / mutual information /
total correlation, and finds a channel capacity with Blahut-Arimoto.
"""

import numpy as np

from cranbounds import (Channel, JointPmf, add_deterministic, blahut_arimoto,
                        compose, entropy, mutual_info, total_correlation)

# A pair of correlated bits: X uniform, Y = X through a BSC(0.1)
x = JointPmf.make([("X", 2)], [0.5, 0.5])
eps = 0.1
bsc = Channel.make([("X", 2)], [("Y", 2)], [[1 - eps, eps], [eps, 1 - eps]])
joint = compose(x, bsc)

print("H(X)      =", entropy(joint, {"X"}))
print("H(Y)      =", entropy(joint, {"Y"}))
print("I(X;Y)    =", mutual_info(joint, {"X"}, {"Y"}))

# Total correlation generalizes mutual information beyond pairs: three
# copies of one fair bit carry 3*1 - 1 = 2 bits of redundancy.
copies = np.zeros((2, 2, 2))
copies[0, 0, 0] = copies[1, 1, 1] = 0.5
tri = JointPmf.make([("A", 2), ("B", 2), ("C", 2)], copies)
print("Gamma(A,B,C) for three copies of a bit =", total_correlation(tri, {"A", "B", "C"}))

# Deterministic extensions: parity of two independent bits
two = JointPmf.make([("A", 2), ("B", 2)], np.full((2, 2), 0.25))
withxor = add_deterministic(two, "P", 2, ["A", "B"], lambda a, b: a ^ b)
print("I(A;P)    =", mutual_info(withxor, {"A"}, {"P"}), "(parity hides each input)")
print("I(A,B;P)  =", mutual_info(withxor, {"A", "B"}, {"P"}))

# Capacity of the BSC(0.1): 1 - h(0.1) = 0.531 bits
cap, p_in = blahut_arimoto(bsc, tol=1e-12)
print(f"BSC(0.1) capacity = {cap:.6f} bits at input distribution {np.round(p_in, 4)}")

"""
Checking coefficients against simulated unitary matrices
========================================================

Haar unitaries are sampled by QR of a complex Gaussian matrix.  At k=1
there is an exact finite-N answer, so the simulation can be checked
without any asymptotics.  At k=2 the integrand is so heavy-tailed that a
plain sample mean is unreliable unless N is small.
"""

import numpy as np

from cuemoments import MomentSpec
from cuemoments.cuesim import exact_k1_second_moment, mc_moment, sample_cue_batch, secular_coefficients

# k = 1: mean of |Lambda^(n)(1)|^2 / N^(2n+1) against the exact value
N = 16
for n in range(3):
    rep = mc_moment(MomentSpec(1, 1, n, 0), N, 5000, seed=n)
    exact = exact_k1_second_moment(N, n) / N ** (2 * n + 1)
    print(f"n={n}: mc {rep.estimate:.4f} +- {rep.stderr:.4f}   exact {exact:.4f}   limit {1 / (2 * n + 1):.4f}")

###############################################################################
# k = 2 is fine at very small N; E|Lambda(1)|^4 = (N+1)(N+2)^2(N+3)/12.
# By N = 8 the estimate already sits about two standard errors low.

for N in (4, 6, 8):
    rep = mc_moment(MomentSpec(2, 1, 0, 0), N, 20000, seed=10 + N)
    exact = (N + 1) * (N + 2) ** 2 * (N + 3) / 12 / N**4
    print(f"N={N}: mc {rep.estimate:.4f} +- {rep.stderr:.4f}   exact {exact:.4f}")

###############################################################################
# As N grows, the few largest samples carry most of the fourth moment.

rng = np.random.default_rng(0)
for N in (8, 32, 64):
    ph = sample_cue_batch(N, 4000, rng)
    x = np.abs(secular_coefficients(ph).sum(axis=1)) ** 4
    top = np.sort(x)[::-1]
    print(f"N={N}: largest 1% of samples hold {top[:40].sum() / top.sum():.0%} of the sample sum")

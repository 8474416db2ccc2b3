"""
Conjectured constants for moments of zeta and Hardy's Z
======================================================

The random-matrix coefficient times the arithmetic factor ``c_k`` gives the
predicted leading constant.  For k <= 2 the factor is known in closed form,
so the predictions can be compared with known results exactly.
"""

import mpmath

from cuemoments import MomentSpec
from cuemoments.numbertheory import arithmetic_factor, conjectured_constant_exact

for k in (1, 2, 3, 4):
    res = arithmetic_factor(k, 10**5)
    print(f"c_{k} ~ {mpmath.nstr(res.value, 12)}   (tail estimate {res.tail_bound_estimate:.1e})")
print("6/pi^2 =", mpmath.nstr(6 / mpmath.pi**2, 12))

###############################################################################
# Exact constants, written as rational multiples of powers of pi.

for fam, spec in [("b", MomentSpec(2, 1, 2, 0)), ("b", MomentSpec(2, 1, 2, 1)),
                  ("b", MomentSpec(2, 2, 2, 0)), ("a", MomentSpec(1, 1, 3, 0))]:
    print(fam, (spec.k, spec.M, spec.n1, spec.n2), conjectured_constant_exact(spec, fam),
          f"(log T)^{spec.exponent}")

"""
Exact moment coefficients by three routes
=========================================

Every coefficient can be computed three independent ways.  Here we build
the ``a_{2,1}(n1, n2)`` triangle, time each route and confirm that they
return the same rational.
"""

import time

from cuemoments import MomentSpec
from cuemoments.momentcoeffs import a_coeff_alt, a_coeff_bessel, a_coeff_combinatorial

routes = {"besselDet": a_coeff_bessel, "combinatorial": a_coeff_combinatorial, "alternate": a_coeff_alt}

# the triangle n2 <= n1 <= 3 at k = 2, M = 1
for n1 in range(4):
    row = []
    for n2 in range(n1 + 1):
        spec = MomentSpec(2, 1, n1, n2)
        values = {}
        for name, f in routes.items():
            t = time.perf_counter()
            values[name] = (f(spec).value, time.perf_counter() - t)
        assert len({v for v, _ in values.values()}) == 1
        row.append(str(values["besselDet"][0]))
    print(f"n1={n1}:", ", ".join(row))

###############################################################################
# The entries above the diagonal follow from relabelling the two factors.

spec = MomentSpec(2, 1, 1, 3)
print(spec, a_coeff_alt(spec).value, "==", a_coeff_alt(spec.swapped()).value)

###############################################################################
# Larger k: the determinant route is the cheap one when the orders are small.

for k in range(1, 5):
    spec = MomentSpec(k, k, 2, 0)
    t = time.perf_counter()
    v = a_coeff_bessel(spec).value
    print(f"a_{{{k},{k}}}(2,0) = {v}   ({time.perf_counter() - t:.2f}s)")

#!/usr/bin/env python3
"""The average power of 2, 3, 5 dividing #E(F_p) for a generic curve.

Three independent routes to the same number:
  * the closed-form expression evaluated on the image's shape table,
  * the transition-graph sum Prob(pi | N) + Prob(pi^2 | N) + ...,
  * an actual scan of the primes.
"""

from fractions import Fraction

from ecmfriendly import ShortWeierstrass, enumerate_group, valuation_scan
from ecmfriendly.gl2 import (
    average_valuation,
    average_valuation_series,
    prob_power_divides,
    prob_table,
)

BOUND = 1 << 17
E1 = ShortWeierstrass(5, 7)

print("curve: y^2 = x^3 + 5x + 7, primes below 2^17\n")
for pi in (2, 3, 5):
    table = prob_table(enumerate_group(pi))
    closed = average_valuation(table)
    series = average_valuation_series(table, 60)
    scan = valuation_scan(E1, pi, BOUND)
    print("pi = %d" % pi)
    print("  closed form        : %s = %.6f" % (closed, float(closed)))
    print("  series to k = 60   : %.12f (tail < 1e-12)" % float(series))
    print("  empirical mean     : %.6f +- %.6f" % (scan.mean, scan.stderr))
    print("  first divisibility probabilities:")
    for k in (1, 2, 3):
        prob = prob_power_divides(table, k)
        print("    Prob(%d^%d | #E) = %s = %.4f" % (pi, k, prob, float(prob)))
    print()

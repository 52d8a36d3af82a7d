#!/usr/bin/env python3
"""Twisted Edwards curves with torsion Z/2 x Z/4 and their subfamilies.

The a = -1 curves with d = -e^4 guarantee 8 | #E(F_p); writing
e = (g - 1/g)/2 guarantees 16, and even 32 when p = 1 mod 4 and
g(g-1)(g+1) is a square mod p.  The machinery behind the 16: explicit
order-8 points whose coordinates exist mod every good prime.
"""

from fractions import Fraction as F

from ecmfriendly import (
    divisibility_certificate,
    edwards_eight_torsion,
    edwards_family,
    e_square_generator,
    group_order,
    reduce_curve,
    scalar_mul,
    valuation_scan,
    z2z4_param,
)
from ecmfriendly.arith import is_probable_prime, legendre
from ecmfriendly.curves import TwistedEdwards, EDWARDS_IDENTITY

BOUND = 1 << 16

print("one rational parameter gives curve plus non-torsion point:")
for t in (2, 4, F(7, 2)):
    d, x, y = z2z4_param(t)
    print("  t=%-4s d = %s, point (%s, %s)" % (t, d, x, y))

print("\nthe e = g^2 subfamily from the rank-1 curve y^2 = x^3 - 36x:")
for k in (2, 3):
    g = e_square_generator(k)
    print("  k=%d -> g = %s, curve d = -(g^2)^4 = %s" % (k, g, -(g * g) ** 4))

g = F(9, 2)
curve = edwards_family("gminv", g)
print("\ngminv member g = 9/2: d = %s" % curve.d)

print("explicit order-8 points mod small primes:")
shown = 0
p = 5
while shown < 4:
    p += 2
    if not is_probable_prime(p) or not reduce_curve(curve, p).good:
        continue
    for t in (1, -1):
        disc = t * g * (g - 1) * (g + 1)
        if legendre(disc.numerator % p * (disc.denominator % p) % p, p) != 1:
            continue
        P = edwards_eight_torsion(g, p, t, 1)
        D = scalar_mul(reduce_curve(curve, p).curve, 2, P)
        print("  p=%-4d t=%+d: point ((%s:%s),(%s:%s)) doubles to y = %s"
              % ((p, t) + P[0] + P[1] + (D[1][0],)))
        shown += 1
        break

print("\ndivisors certified for the gminv member:")
for cert in divisibility_certificate(curve, tag=("gminv", g), check_primes=10)[:2]:
    print("  %2d | #E  when  %s" % (cert.divisor, cert.description))

print("\naverage valuation of 2 below 2^16 across the subfamilies:")
members = (
    ("generic e=11", edwards_family("generic", 11), "14/3 = 4.667"),
    ("e = g^2, g=3", edwards_family("g2", 3), "29/6 = 4.833"),
    ("gminv, g=9/2", curve, "16/3 = 5.333"),
)
for label, member, theory in members:
    rep = valuation_scan(member, 2, BOUND, split=4)
    print("  %-14s total %.4f (theory %s); p=3(4): %.3f, p=1(4): %.3f"
          % (label, rep.mean, theory, rep.classes[3][0], rep.classes[1][0]))

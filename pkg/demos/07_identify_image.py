#!/usr/bin/env python3
"""Guessing a Galois image from Frobenius fingerprints.

Each good prime contributes (p mod m, trace mod m, torsion shapes); by
Chebotarev those are exactly the invariants of the image's conjugacy
classes, with frequencies proportional to class sizes.  The identifier
grows a subgroup inside the set of matrices whose fingerprint occurs
and scores the fit by chi-square.  It is a heuristic: a result is a
candidate consistent with the data, never a certified image.
"""

from ecmfriendly import ShortWeierstrass, identify_image, image_order_estimate, suyama

BOUND = 1 << 16

cases = (
    ("generic curve, m = 2", ShortWeierstrass(5, 7), 2),
    ("full rational 2-torsion, m = 2", ShortWeierstrass(-1, 0), 2),
    ("Suyama sigma = 11, m = 4", suyama(11).curve, 4),
    ("CM curve, m = 3", ShortWeierstrass(-11, 14), 3),
)

for label, curve, m in cases:
    ident = identify_image(curve, m, BOUND)
    print("%-32s -> order %3d  %-10s chi2/dof = %.2f"
          % (label, len(ident.image), ident.status, ident.chi_square / ident.dof))

print()
print("reciprocal full-torsion densities estimate the same orders:")
for label, curve, m in (("generic, m = 3", ShortWeierstrass(5, 7), 3),
                        ("CM curve, m = 3", ShortWeierstrass(-11, 14), 3)):
    order, stderr = image_order_estimate(curve, m, BOUND)
    print("  %-18s ~ %.1f +- %.1f" % (label, order, stderr))

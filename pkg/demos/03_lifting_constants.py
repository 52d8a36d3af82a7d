#!/usr/bin/env python3
"""Why shape tables extend upward: the three lifting constants.

Once the image index stabilizes, each matrix mod pi^k has all pi^4 of
its lifts mod pi^(k+1) inside the image, and the lifts sort into fixed-
space classes with universal frequencies.  We classify every lift
exhaustively for pi = 2 and 3 and recover 1/pi^4, (pi-1)(pi+1)^2/pi^4
and 1/pi.
"""

from fractions import Fraction
from itertools import product

from ecmfriendly import enumerate_group, fix_shape, lift_constants
from ecmfriendly.gl2 import identity_mat

for pi in (2, 3):
    m2 = pi * pi
    print("pi = %d: classifying all %d^4 lifts of each of the %d elements"
          % (pi, pi, len(enumerate_group(pi))))
    full = new_point = 0
    line_up = line_total = 0
    for g in enumerate_group(pi):
        shapes = [
            fix_shape((g[0] + pi * da, g[1] + pi * db, g[2] + pi * dc, g[3] + pi * dd), m2)
            for da, db, dc, dd in product(range(pi), repeat=4)
        ]
        if g == identity_mat():
            full = sum(1 for s in shapes if s == (m2, m2))
            new_point = sum(1 for s in shapes if s == (pi, m2))
        elif fix_shape(g, pi) == (1, pi):
            line_up += sum(1 for s in shapes if s[1] == m2)
            line_total += len(shapes)
    got = (Fraction(full, pi ** 4), Fraction(new_point, pi ** 4), Fraction(line_up, line_total))
    want = lift_constants(pi)
    print("  identity keeps everything fixed : %s  (formula %s)" % (got[0], want[0]))
    print("  identity gains an order-%d point : %s  (formula %s)" % (m2, got[1], want[1]))
    print("  a fixed line lifts to a line    : %s  (formula %s)" % (got[2], want[2]))
    assert got == want
    print()

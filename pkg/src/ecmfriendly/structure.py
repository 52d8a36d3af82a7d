"""Group order and abelian shape of E(F_p).

The order engine is a baby-step giant-step search over the Hasse
interval, refined through the lcm of sampled point orders and, when the
interval still holds several candidates, through point orders on the
quadratic twist.  All sampling is driven by a counter-based RNG seeded
from (curve, p), so scans are reproducible and independent of how prime
ranges are partitioned across workers.
"""

import hashlib
import random
from math import gcd, isqrt

import numpy as np

from .arith import factorize, inv_mod, legendre, sqrt_mod, valuation
from .curves import (
    INFINITY,
    CubicCurve,
    Montgomery,
    ShortWeierstrass,
    TwistedEdwards,
    to_weierstrass,
)

NAIVE_LIMIT = 1 << 16
MAX_POINT_TRIES = 20


def _rng(tag, p, seed=0):
    digest = hashlib.blake2b(
        ("%s|%d|%d" % (tag, p, seed)).encode(), digest_size=8
    ).digest()
    return random.Random(int.from_bytes(digest, "big"))


def _curve_tag(model):
    return "%s%r" % (type(model).__name__, model)


# ---------------------------------------------------------------------------
# tight affine arithmetic on y^2 = x^3 + ax + b over F_p


def _add(P, Q, a, p):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + a) * inv_mod(2 * y1 % p, p) % p
    else:
        lam = (y2 - y1) * inv_mod((x2 - x1) % p, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def _neg(P, p):
    return None if P is None else (P[0], (-P[1]) % p)


def _mul(k, P, a, p):
    if k < 0:
        k, P = -k, _neg(P, p)
    acc = None
    while k:
        if k & 1:
            acc = _add(acc, P, a, p)
        k >>= 1
        if k:
            P = _add(P, P, a, p)
    return acc


def _random_point(a, b, p, rng):
    while True:
        x = rng.randrange(p)
        fx = (x * x % p * x + a * x + b) % p
        if fx == 0:
            return (x, 0)
        if legendre(fx, p) == 1:
            return (x, sqrt_mod(fx, p))


def _point_order(P, a, p):
    """Exact order of P on y^2 = x^3 + ax + b over F_p."""
    s = isqrt(p)
    lo, hi = -2 * s - 2, 2 * s + 2
    m = isqrt(hi - lo) + 1
    # baby steps [j]P for 0 <= j < m
    table = {}
    B = None
    for j in range(m):
        if B is not None:
            table.setdefault(B[0], []).append((j, B[1]))
        B = _add(B, P, a, p)
    G = _mul(m, P, a, p)
    negG = _neg(G, p)
    Q = _mul(p + 1, P, a, p)
    i_lo = lo // m
    i_hi = hi // m
    S = _add(_neg(Q, p), _mul(-i_lo * m, P, a, p), a, p)
    hits = []
    for i in range(i_lo, i_hi + 1):
        if S is None:
            t = i * m
            if lo <= t <= hi:
                hits.append(t)
        else:
            for j, yj in table.get(S[0], ()):
                if yj == S[1]:
                    t = i * m + j
                    if lo <= t <= hi:
                        hits.append(t)
                if (yj + S[1]) % p == 0:
                    t = i * m - j
                    if lo <= t <= hi:
                        hits.append(t)
        S = _add(S, negG, a, p)
    g = 0
    for t in set(hits):
        g = gcd(g, p + 1 + t)
    if g == 0:
        raise ArithmeticError("no annihilator found in the Hasse interval")
    d = g
    for q in factorize(g):
        while d % q == 0 and _mul(d // q, P, a, p) is None:
            d //= q
    return d


def _hasse_window(p):
    w = isqrt(4 * p)
    return p + 1 - w, p + 1 + w


def _multiples_in(lo, hi, L):
    first = -(-lo // L) * L
    out = []
    while first <= hi:
        out.append(first)
        first += L
    return out


def _twist_params(a, b, p):
    c = 2
    while legendre(c, p) != -1:
        c += 1
    return a * c * c % p, b * c * c % p * c % p


def count_points_naive(model):
    """Exact #E(F_p) by summing Legendre symbols; needs p < 2^16.

    Twisted Edwards curves are counted through their birational
    Montgomery counterpart, whose completed group they share.
    """
    p = model.p
    if p is None:
        raise ValueError("naive counting works over F_p")
    if p >= NAIVE_LIMIT:
        raise ValueError("p too large for naive counting")
    if isinstance(model, TwistedEdwards):
        mont, _, _ = montgomery_counterpart(model)
        return count_points_naive(mont)
    xs = np.arange(p, dtype=np.int64)
    if isinstance(model, ShortWeierstrass):
        f = (xs * xs % p * xs + model.a * xs + model.b) % p
    elif isinstance(model, Montgomery):
        f = (xs * xs % p * xs + model.A * xs % p * xs + xs) % p
        f = f * model.B % p  # y^2 = f/B solvable iff f*B is a square
    elif isinstance(model, CubicCurve):
        f = (xs * xs % p * xs + model.c2 * xs % p * xs + model.c4 * xs + model.c6) % p
    else:
        raise TypeError("unknown curve model %r" % (model,))
    sq = np.zeros(p, dtype=bool)
    sq[xs * xs % p] = True
    zero = int(np.count_nonzero(f == 0))
    nonzero_sq = int(np.count_nonzero(sq[f] & (f != 0)))
    return 1 + zero + 2 * nonzero_sq


def montgomery_counterpart(model):
    from .curves import montgomery_edwards_convert

    return montgomery_edwards_convert(model)


def group_order(model, seed=0):
    """Exact #E(F_p) for a curve over F_p with p > 3.

    Accumulates the lcm of random point orders until a unique multiple
    lies in the Hasse interval; consults the quadratic twist when the
    interval is still ambiguous, and falls back to naive counting for
    small p.
    """
    p = model.p
    if p is None or p <= 3:
        raise ValueError("group_order needs a curve over F_p, p > 3")
    sw, _, _ = to_weierstrass(model)
    a, b = sw.a, sw.b
    rng = _rng(_curve_tag(model), p, seed)
    lo, hi = _hasse_window(p)
    L = 1
    for tries in range(MAX_POINT_TRIES):
        P = _random_point(a, b, p, rng)
        d = _point_order(P, a, p)
        L = L * d // gcd(L, d)
        cands = _multiples_in(lo, hi, L)
        if len(cands) == 1:
            return cands[0]
        if tries >= 2:
            # exponent is small; the twist usually disambiguates
            ta, tb = _twist_params(a, b, p)
            Lt = 1
            for _ in range(6):
                Pt = _random_point(ta, tb, p, rng)
                dt = _point_order(Pt, ta, p)
                Lt = Lt * dt // gcd(Lt, dt)
            allowed = {2 * p + 2 - Nt for Nt in _multiples_in(lo, hi, Lt)}
            cands = [N for N in cands if N in allowed]
            if len(cands) == 1:
                return cands[0]
    if p < NAIVE_LIMIT:
        return count_points_naive(model)
    raise ArithmeticError("group order undecided for p=%d" % p)


def _sylow_exponent(a, b, p, N, q, e, rng, samples):
    """Largest element order q^m in the q-Sylow subgroup, by sampling."""
    cof = N // q ** e
    best = 0
    for _ in range(samples):
        S = _mul(cof, _random_point(a, b, p, rng), a, p)
        o = 0
        while S is not None:
            S = _mul(q, S, a, p)
            o += 1
        if o > best:
            best = o
            if best == e:
                break
    return best


def group_shape(model, seed=0, order=None):
    """Invariants (d1, d2) with E(F_p) = Z/d1 x Z/d2, d1 | d2, d1 | p-1."""
    p = model.p
    N = group_order(model, seed) if order is None else order
    sw, _, _ = to_weierstrass(model)
    a, b = sw.a, sw.b
    rng = _rng(_curve_tag(model) + "#shape", p, seed)
    d1 = 1
    for q, e in factorize(N).items():
        if e < 2 or (p - 1) % q:
            continue
        m = _sylow_exponent(a, b, p, N, q, e, rng, max(20, 2 * e))
        d1 *= q ** (e - m)
    d2 = N // d1
    if d2 % d1 or (p - 1) % d1:
        raise ArithmeticError("inconsistent group shape sample for p=%d" % p)
    return d1, d2


def torsion_shape(model, pi, kmax, seed=0, order=None):
    """Shape (i, j) of E(F_p)[pi^kmax] as Z/pi^i x Z/pi^j, i <= j."""
    p = model.p
    if p == pi:
        raise ValueError("torsion shape needs p != pi")
    N = group_order(model, seed) if order is None else order
    e = valuation(N, pi)
    if e == 0:
        return (0, 0)
    if e < 2 or (p - 1) % pi:
        return (0, min(kmax, e))
    sw, _, _ = to_weierstrass(model)
    a, b = sw.a, sw.b
    rng = _rng(_curve_tag(model) + "#tors%d" % pi, p, seed)
    m = _sylow_exponent(a, b, p, N, pi, e, rng, max(20, 2 * e))
    return (min(kmax, e - m), min(kmax, m))

"""Division polynomials of short Weierstrass curves and torsion counting.

P_m is the monic polynomial whose roots are the x-coordinates of the
nonzero m-torsion points; P_m_new keeps only the points of order exactly
m.  Polynomials are dense coefficient lists in ascending degree order,
with Fraction coefficients over Q and canonical integers over F_p.
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import inv_mod, legendre
from .curves import ShortWeierstrass

MAX_INDEX = 64

# numpy convolution is safe when deg * p^2 stays below 2^63
_NUMPY_MOD_LIMIT = 1 << 25
_NUMPY_DEG_LIMIT = 24


# ---------------------------------------------------------------------------
# dense polynomial helpers (field given by p; None means Q)


def _trim(f):
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def pol_add(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] += c
    if p is not None:
        out = [c % p for c in out]
    return _trim(out)


def pol_sub(f, g, p):
    return pol_add(f, [-c for c in g], p)


def pol_mul(f, g, p):
    if f == [0] or g == [0]:
        return [0]
    if (
        p is not None
        and p < _NUMPY_MOD_LIMIT
        and min(len(f), len(g)) > _NUMPY_DEG_LIMIT
        and (len(f) + len(g)) * p * p < (1 << 63)
    ):
        conv = np.convolve(np.array(f, dtype=np.int64), np.array(g, dtype=np.int64))
        return _trim([int(c) for c in conv % p])
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    if p is not None:
        out = [c % p for c in out]
    return _trim(out)


def pol_scale(f, c, p):
    out = [a * c for a in f]
    if p is not None:
        out = [a % p for a in out]
    return _trim(out)


def pol_divmod(f, g, p):
    """Quotient and remainder of f by g (g nonzero)."""
    if g == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg or r == [0]:
        return [0], _trim(r)
    lg = g[-1]
    lg_inv = inv_mod(lg, p) if p is not None else None
    q = [0] * (len(r) - dg)
    for i in range(len(r) - dg - 1, -1, -1):
        c = r[i + dg]
        if p is not None:
            c %= p
        if c == 0:
            r[i + dg] = 0
            continue
        c = c * lg_inv % p if p is not None else Fraction(c, 1) / lg
        q[i] = c
        for j in range(dg):
            r[i + j] -= c * g[j]
        r[i + dg] = 0
        if p is not None:
            for j in range(dg):
                r[i + j] %= p
    return _trim(q), _trim(r)


def pol_monic(f, p):
    lc = f[-1]
    if lc == 0:
        raise ValueError("zero polynomial")
    if p is not None:
        return pol_scale(f, inv_mod(lc, p), p)
    return [Fraction(c) / lc for c in f]


def _halve(f, p):
    """Exact division of a polynomial by 2."""
    if p is not None:
        h = inv_mod(2, p)
        return _trim([c * h % p for c in f])
    out = []
    for c in f:
        if isinstance(c, int):
            out.append(c // 2 if c % 2 == 0 else Fraction(c, 2))
        else:
            out.append(c / 2)
    return _trim(out)


def pol_gcd(f, g, p):
    """Monic gcd over F_p."""
    a, b = list(f), list(g)
    while b != [0]:
        _, r = pol_divmod(a, b, p)
        a, b = b, r
    if a == [0]:
        return a
    return pol_monic(a, p)


def pol_mulmod(f, g, mod, p):
    _, r = pol_divmod(pol_mul(f, g, p), mod, p)
    return r


def pol_powmod(f, e, mod, p):
    """f^e modulo mod over F_p."""
    result = [1]
    base = pol_divmod(f, mod, p)[1]
    while e:
        if e & 1:
            result = pol_mulmod(result, base, mod, p)
        e >>= 1
        if e:
            base = pol_mulmod(base, base, mod, p)
    return result


def pol_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
        if p is not None:
            acc %= p
    return acc


# ---------------------------------------------------------------------------
# the psi ladder

# psi_x[m] is the y-free part of the classical psi_m: for odd m it equals
# psi_m, for even m it equals psi_m / y, after substituting y^2 = f(x).


_LADDERS = {}


def _psi_ladder(a, b, top, p):
    """psi_x entries 0..top for y^2 = x^3 + ax + b, cached incrementally."""
    key = (a, b, p)
    cached = _LADDERS.get(key)
    if cached is not None and len(cached[0]) > top:
        return cached
    f = [b, a, 0, 1]
    f2 = pol_mul(f, f, p)
    if cached is None:
        psi = [[0], [1]]
    else:
        psi = cached[0]
    base = {
        2: [2],
        3: _trim([-a * a, 12 * b, 6 * a, 0, 3]),
        4: pol_scale(
            [-8 * b * b - a ** 3, -4 * a * b, -5 * a * a, 20 * b, 5 * a, 0, 1], 4, None
        ),
    }
    for m in range(len(psi), top + 1):
        if m <= 4:
            entry = base[m]
            psi.append([c % p for c in entry] if p is not None else entry)
            continue
        n = m // 2
        if m % 2 == 1:
            t1 = pol_mul(psi[n + 2], pol_mul(psi[n], pol_mul(psi[n], psi[n], p), p), p)
            t2 = pol_mul(psi[n - 1], pol_mul(psi[n + 1], pol_mul(psi[n + 1], psi[n + 1], p), p), p)
            if n % 2 == 0:
                psi.append(pol_sub(pol_mul(f2, t1, p), t2, p))
            else:
                psi.append(pol_sub(t1, pol_mul(f2, t2, p), p))
        else:
            s1 = pol_mul(psi[n + 2], pol_mul(psi[n - 1], psi[n - 1], p), p)
            s2 = pol_mul(psi[n - 2], pol_mul(psi[n + 1], psi[n + 1], p), p)
            inner = pol_sub(s1, s2, p)
            psi.append(_halve(pol_mul(psi[n], inner, p), p))
    if len(_LADDERS) > 64:
        _LADDERS.clear()
    _LADDERS[key] = (psi, f)
    return psi, f


def _int_coeffs(curve):
    if curve.p is not None:
        return curve.a, curve.b
    a, b = Fraction(curve.a), Fraction(curve.b)
    if a.denominator == 1 and b.denominator == 1:
        return int(a), int(b)
    return a, b


@lru_cache(maxsize=512)
def _division_poly_cached(curve, m):
    a, b = _int_coeffs(curve)
    psi, f = _psi_ladder(a, b, m, curve.p)
    if m % 2 == 1:
        poly = psi[m]
    else:
        poly = pol_mul(f, psi[m], curve.p)
    return tuple(pol_monic(poly, curve.p))


def division_poly(curve, m):
    """Monic polynomial with roots the x-coordinates of nonzero m-torsion.

    deg P_m = (m^2 + 2 - 3*eta)/2 with eta = m mod 2.
    """
    if not isinstance(curve, ShortWeierstrass):
        raise TypeError("division polynomials are defined on short Weierstrass curves")
    if m < 2:
        raise ValueError("m must be at least 2")
    if m > MAX_INDEX:
        raise ValueError("m above supported bound %d" % MAX_INDEX)
    poly = list(_division_poly_cached(curve, m))
    eta = m % 2
    expected = (m * m + 2 - 3 * eta) // 2
    if len(poly) - 1 != expected:
        raise ArithmeticError(
            "division polynomial degree %d != %d for m=%d" % (len(poly) - 1, expected, m)
        )
    return poly


def _proper_divisors(m):
    return [d for d in range(2, m) if m % d == 0]


@lru_cache(maxsize=512)
def _division_poly_new_cached(curve, m):
    poly = division_poly(curve, m)
    for d in _proper_divisors(m):
        q, r = pol_divmod(poly, list(_division_poly_new_cached(curve, d)), curve.p)
        if r != [0]:
            raise ArithmeticError(
                "P_%d^new does not divide P_%d exactly; remainder %r" % (d, m, r)
            )
        poly = q
    return tuple(poly)


def division_poly_new(curve, m):
    """Monic polynomial with roots the x-coordinates of points of order m.

    Computed from P_m by exact division by every P_d_new with d | m,
    1 < d < m; a nonzero remainder aborts, because it can only come from
    an implementation bug.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    return list(_division_poly_new_cached(curve, m))


# ---------------------------------------------------------------------------
# roots over F_p


def pol_roots(f, p):
    """Distinct roots of f over F_p, ascending.

    Computes gcd(x^p - x, f) and then splits the product of linear
    factors with a deterministic sequence of shifts.
    """
    f = pol_monic([c % p for c in f], p)
    xp = pol_powmod([0, 1], p, f, p)
    lin = pol_gcd(pol_sub(xp, [0, 1], p), f, p)
    roots = []

    def split(g, depth):
        if len(g) - 1 == 0:
            return
        if len(g) - 1 == 1:
            roots.append((-g[0]) % p)
            return
        if g[0] == 0:
            roots.append(0)
            split(pol_monic(g[1:], p), depth)
            return
        delta = depth
        while True:
            h = pol_powmod([delta, 1], (p - 1) // 2, g, p)
            h = pol_gcd(pol_sub(h, [1], p), g, p)
            if 0 < len(h) - 1 < len(g) - 1:
                split(h, delta + 1)
                split(pol_divmod(g, h, p)[0], delta + 1)
                return
            delta += 1

    split(lin, 0)
    return sorted(roots)


def torsion_size_mod_p(curve, pi, k=1):
    """#E(F_p)[pi^k] for a short Weierstrass curve over F_p.

    Counts 1 for the identity plus, for each root x of P_{pi^k} in F_p,
    the number of points above x, which is 1 + legendre(x^3 + ax + b).
    The result is a power pi^s with 0 <= s <= 2k.
    """
    p = curve.p
    if p is None:
        raise ValueError("torsion counting works over F_p")
    if p <= 3:
        raise ValueError("p must exceed 3")
    m = pi ** k
    if m % p == 0:
        raise ValueError("p divides the torsion index")
    poly = division_poly(curve, m)
    size = 1
    a, b = curve.a, curve.b
    for x in pol_roots(poly, p):
        size += 1 + legendre((x * x % p * x + a * x + b) % p, p)
    return size

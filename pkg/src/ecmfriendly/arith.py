"""Modular arithmetic, prime generation and exact rational helpers.

Everything here is pure and reentrant.  Field elements are plain Python
integers in [0, p); rationals are `fractions.Fraction`.  Moduli are
restricted to odd primes below 2^62 so that products of two residues fit
comfortably in machine-assisted big ints.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

try:
    from gmpy2 import invert as _gmpy_invert

    def inv_mod(a, p):
        """Inverse of a modulo p (p prime, a not divisible by p)."""
        return int(_gmpy_invert(a, p))
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    def inv_mod(a, p):
        return pow(a, p - 2, p)

Rat = Fraction

MAX_MODULUS = 1 << 62
MAX_SIEVE_BOUND = 1 << 32


class Residue(NamedTuple):
    """An element of F_p, kept in canonical range [0, p)."""

    value: int
    p: int

    @classmethod
    def of(cls, value, p):
        return cls(value % p, p)


@dataclass(frozen=True)
class PrimeStream:
    """All primes up to `bound`, ascending."""

    bound: int
    primes: tuple

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


def sieve_primes(bound):
    """Return a PrimeStream of all primes <= bound (2 <= bound <= 2^32)."""
    if not 2 <= bound <= MAX_SIEVE_BOUND:
        raise ValueError("sieve bound must be in [2, 2^32]")
    is_comp = np.zeros(bound + 1, dtype=bool)
    is_comp[:2] = True
    for q in range(2, int(bound ** 0.5) + 1):
        if not is_comp[q]:
            is_comp[q * q :: q] = True
    primes = np.flatnonzero(~is_comp)
    return PrimeStream(bound, tuple(int(q) for q in primes))


def legendre(a, p):
    """Legendre symbol (a|p) in {-1, 0, 1}; p must be an odd prime."""
    if p % 2 == 0:
        raise ValueError("legendre needs an odd prime modulus")
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def sqrt_mod(a, p):
    """Smaller square root of a modulo an odd prime p, or None.

    Returns r with r*r = a (mod p) and r <= p - r, None when a is a
    non-residue.  Deterministic: the non-residue used by Tonelli-Shanks
    is the smallest one, so repeated runs give identical scan output.
    """
    if p % 2 == 0:
        raise ValueError("sqrt_mod needs an odd prime modulus")
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # Tonelli-Shanks with p - 1 = q * 2^s, q odd.
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    r = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(r, p - r)


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n):
    """Deterministic Miller-Rabin for n < 3.3 * 10^24 (covers 64-bit)."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n, seed=1):
    """One prime factor of composite n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    from math import gcd

    c = seed
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def factorize(n):
    """Factor n >= 1 into a {prime: exponent} dict.

    Trial division by primes below 10^6 first, then Pollard rho for any
    stubborn cofactor; inputs in scope stay well below 2^64.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = {}
    for q in (2, 3, 5):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while q * q <= n and q < 10 ** 6:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += wheel[i]
        i = (i + 1) % 8
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def valuation(n, q):
    """Largest e with q^e dividing n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    e = 0
    n = abs(n)
    while n % q == 0:
        n //= q
        e += 1
    return e


def square_class(q):
    """Squarefree integer s with q = s * c^2 for some rational c.

    q is a rational square exactly when the result is 1.  Factors the
    numerator and denominator, so it is meant for parameters of modest
    height; the plain square test below stays cheap for any size.
    """
    q = Fraction(q)
    if q == 0:
        raise ValueError("square_class of 0 is undefined")
    n = q.numerator * q.denominator  # same class as q
    sign = -1 if n < 0 else 1
    n = abs(n)
    s = sign
    for prime, e in factorize(n).items():
        if e % 2:
            s *= prime
    return s


def is_rational_square(q):
    """True when the nonzero rational q is a square in Q.

    Integer square roots only; no factoring, so arbitrary heights are
    fine.
    """
    from math import isqrt

    q = Fraction(q)
    if q == 0:
        raise ValueError("square test of 0 is undefined")
    if q < 0:
        return False
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    return rn * rn == q.numerator and rd * rd == q.denominator

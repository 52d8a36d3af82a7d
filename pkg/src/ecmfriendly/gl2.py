"""Censuses over GL_2(Z/mZ) and torsion-shape probability tables.

A matrix is a 4-tuple (a, b, c, d) of integers mod m read row-wise; the
modulus lives on the containing SubgroupImage.  Shape probabilities are
exact Fractions throughout: the probability that a curve mod p has a
given pi^k-torsion shape equals the fraction of elements of the Galois
image whose fixed subgroup has that shape, and conditioning on
p = a mod n is the det = a slice because the determinant of the image
acts on roots of unity as the cyclotomic character.

Probability tables are indexed by (level i, shape (l, j)) with exponent
pairs l <= j <= i, and extend beyond the computed modulus through the
three lifting constants (1/pi^4, (pi-1)(pi+1)^2/pi^4, 1/pi) once the
image index is assumed stable.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .arith import factorize, valuation

MAX_ENUM_MODULUS = 32


def identity_mat():
    return (1, 0, 0, 1)


def mat_mul(g, h, m):
    a1, b1, c1, d1 = g
    a2, b2, c2, d2 = h
    return (
        (a1 * a2 + b1 * c2) % m,
        (a1 * b2 + b1 * d2) % m,
        (c1 * a2 + d1 * c2) % m,
        (c1 * b2 + d1 * d2) % m,
    )


def mat_det(g, m):
    return (g[0] * g[3] - g[1] * g[2]) % m


def mat_trace(g, m):
    return (g[0] + g[3]) % m


def is_invertible(g, m):
    return gcd(mat_det(g, m), m) == 1


@dataclass(frozen=True)
class SubgroupImage:
    """A subgroup of GL_2(Z/mZ) given by its full element set."""

    m: int
    elements: frozenset
    generators: tuple = ()

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elements

    def __iter__(self):
        return iter(self.elements)


def gl2_order(m):
    """#GL_2(Z/mZ) by the multiplicative prime-power formula."""
    n = 1
    for pi, k in factorize(m).items():
        n *= pi ** (4 * (k - 1)) * (pi - 1) ** 2 * (pi + 1) * pi
    return n


def subgroup_from_json(text):
    """Subgroup from a JSON document {"modulus": m, "matrices": [...]}.

    Matrices are 2x2 integer row lists, taken as generators; the flat
    form [[a, b], [c, d]] and the flat 4-list [a, b, c, d] both parse.
    """
    import json

    doc = json.loads(text)
    m = doc["modulus"]
    gens = []
    for mat in doc["matrices"]:
        if len(mat) == 2:
            (a, b), (c, d) = mat
        else:
            a, b, c, d = mat
        gens.append((a % m, b % m, c % m, d % m))
    return subgroup_closure(gens, m)


def subgroup_to_json(G):
    """Inverse of subgroup_from_json, using the stored generators."""
    import json

    gens = G.generators or tuple(sorted(G.elements))
    return json.dumps(
        {"modulus": G.m, "matrices": [[[g[0], g[1]], [g[2], g[3]]] for g in gens]}
    )


@lru_cache(maxsize=16)
def enumerate_group(m):
    """All of GL_2(Z/mZ) for m <= 32."""
    if not 2 <= m <= MAX_ENUM_MODULUS:
        raise ValueError("enumerate_group supports 2 <= m <= %d" % MAX_ENUM_MODULUS)
    a, b, c, d = np.indices((m, m, m, m), dtype=np.int64).reshape(4, -1)
    det = (a * d - b * c) % m
    mask = np.gcd(det, m) == 1
    elems = frozenset(zip(a[mask].tolist(), b[mask].tolist(), c[mask].tolist(), d[mask].tolist()))
    if len(elems) != gl2_order(m):
        raise ArithmeticError("GL2 enumeration does not match the order formula")
    return SubgroupImage(m, elems)


def subgroup_closure(generators, m):
    """Closure of a generator list under multiplication mod m."""
    gens = [tuple(int(x) % m for x in g) for g in generators]
    for g in gens:
        if not is_invertible(g, m):
            raise ValueError("generator %r is not invertible mod %d" % (g, m))
    eye = identity_mat()
    seen = {eye}
    frontier = [eye]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = mat_mul(g, h, m)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    G = SubgroupImage(m, frozenset(seen), tuple(gens))
    total = gl2_order(m)
    if total % len(G):
        raise ArithmeticError("closure order %d does not divide #GL2 = %d" % (len(G), total))
    return G


def reduce_image(G, target):
    """Entrywise reduction of an image to a divisor modulus."""
    if target < 2:
        raise ValueError("target modulus must be at least 2")
    if G.m % target:
        raise ValueError("target %d does not divide modulus %d" % (target, G.m))
    elems = frozenset(tuple(x % target for x in g) for g in G.elements)
    gens = tuple(tuple(x % target for x in g) for g in G.generators)
    return SubgroupImage(target, elems, gens)


def fix_shape(g, m):
    """Shape (d1, d2), d1 | d2 | m, of {v in (Z/mZ)^2 : g v = v}.

    Computed from the Smith normal form of g - Id, prime power by prime
    power: locally the first elementary divisor is the minimal entry
    valuation, the second comes from the determinant.
    """
    a, b, c, d = g
    ea, eb, ec, ed = a - 1, b, c, d - 1
    det = ea * ed - eb * ec
    d1 = d2 = 1
    for pi, k in factorize(m).items():
        q = pi ** k
        entries = (ea % q, eb % q, ec % q, ed % q)
        alpha = min(min((valuation(e, pi) if e else k) for e in entries), k)
        dloc = det % (pi ** (k + alpha))
        beta = k if dloc == 0 else min(valuation(dloc, pi) - alpha, k)
        d1 *= pi ** alpha
        d2 *= pi ** beta
    return (d1, d2)


def shape_probability(G, T):
    """Fraction of elements of G whose fixed subgroup has shape T."""
    T = tuple(sorted(T))
    hits = sum(1 for g in G.elements if fix_shape(g, G.m) == T)
    return Fraction(hits, len(G))


def shape_probability_conditional(G, T, a, n):
    """Shape probability among elements with det = a (mod n), n | m."""
    if G.m % n:
        raise ValueError("conditioning modulus %d must divide %d" % (n, G.m))
    if gcd(a, n) != 1:
        raise ValueError("condition class must be invertible mod %d" % n)
    T = tuple(sorted(T))
    total = hits = 0
    for g in G.elements:
        if mat_det(g, G.m) % n != a % n:
            continue
        total += 1
        if fix_shape(g, G.m) == T:
            hits += 1
    if total == 0:
        raise ValueError("empty determinant slice %d mod %d" % (a, n))
    return Fraction(hits, total)


def lift_constants(pi):
    """Conditional lifting probabilities (c1, c2, c3) for one more level.

    c1 carries (k,k) to (k+1,k+1), c2 carries (k,k) to (k,k+1), and c3
    carries (i,k) to (i,k+1) for i < k.
    """
    p4 = pi ** 4
    return (
        Fraction(1, p4),
        Fraction((pi - 1) * (pi + 1) ** 2, p4),
        Fraction(1, pi),
    )


# ---------------------------------------------------------------------------
# probability tables


@dataclass(frozen=True)
class ProbTable:
    """Exact torsion-shape probabilities p_i(l, j) for levels i <= n.

    Keys of `probs` are (level, (l, j)) with exponents l <= j <= level.
    `lift_stable` asserts the image index stays constant above level n,
    which is the hypothesis under which the table extends upward.
    """

    pi: int
    n: int
    probs: dict
    lift_stable: bool = True
    conditional: tuple = None  # (a, n) when built from a det slice

    def p(self, level, shape):
        return self.probs.get((level, tuple(shape)), Fraction(0))

    def level_sum(self, level):
        return sum((v for (i, _), v in self.probs.items() if i == level), Fraction(0))


def _prime_power(m):
    fac = factorize(m)
    if len(fac) != 1:
        raise ValueError("modulus %d is not a prime power" % m)
    (pi, k), = fac.items()
    return pi, k


def prob_table(G, lift_stable=True):
    """Shape probabilities of an image at prime-power modulus pi^n."""
    pi, n = _prime_power(G.m)
    probs = {}
    total = len(G)
    for level in range(1, n + 1):
        q = pi ** level
        reduced = {}
        for g in G.elements:
            key = (g[0] % q, g[1] % q, g[2] % q, g[3] % q)
            reduced[key] = reduced.get(key, 0) + 1
        for g, mult in reduced.items():
            d1, d2 = fix_shape(g, q)
            key = (valuation(d1, pi), valuation(d2, pi))
            probs[(level, key)] = probs.get((level, key), Fraction(0)) + Fraction(mult, total)
    return ProbTable(pi, n, probs, lift_stable)


def prob_table_conditional(G, a, n_mod, lift_stable=True):
    """Shape probabilities conditioned on det = a (mod n_mod).

    The censuses at every level keep the determinant at the full
    modulus, so this needs n_mod | m; it equals conditioning the prime
    scans on p = a (mod n_mod).
    """
    pi, n = _prime_power(G.m)
    if G.m % n_mod:
        raise ValueError("conditioning modulus must divide the image modulus")
    slice_elems = [g for g in G.elements if mat_det(g, G.m) % n_mod == a % n_mod]
    if not slice_elems:
        raise ValueError("empty determinant slice")
    total = len(slice_elems)
    probs = {}
    for level in range(1, n + 1):
        q = pi ** level
        for g in slice_elems:
            d1, d2 = fix_shape(tuple(x % q for x in g), q)
            key = (valuation(d1, pi), valuation(d2, pi))
            probs[(level, key)] = probs.get((level, key), Fraction(0)) + Fraction(1, total)
    return ProbTable(pi, n, probs, lift_stable, conditional=(a, n_mod))


def extend_table(table, kmax):
    """Extend a table to level kmax through the lifting constants.

    Walks the unique paths of the transition graph: a live shape (i, k)
    either gains one level on its larger factor or freezes, and the
    diagonal (k, k) can also move to (k+1, k+1).
    """
    if kmax < table.n:
        raise ValueError("kmax below table level")
    if not table.lift_stable:
        raise ValueError("table does not assert a stable image index")
    c1, c2, c3 = lift_constants(table.pi)
    probs = dict(table.probs)
    for k in range(table.n, kmax):
        # shapes dead at level k (j < k) persist unchanged
        for (lvl, (i, j)), v in list(probs.items()):
            if lvl == k and j < k:
                probs[(k + 1, (i, j))] = probs.get((k + 1, (i, j)), Fraction(0)) + v
        for (lvl, (i, j)), v in list(probs.items()):
            if lvl != k or j != k:
                continue
            if i == k:
                probs[(k + 1, (k + 1, k + 1))] = v * c1
                probs[(k + 1, (k, k + 1))] = v * c2
                probs[(k + 1, (k, k))] = probs.get((k + 1, (k, k)), Fraction(0)) + v * (
                    1 - c1 - c2
                )
            else:
                probs[(k + 1, (i, k + 1))] = v * c3
                probs[(k + 1, (i, k))] = probs.get((k + 1, (i, k)), Fraction(0)) + v * (
                    1 - c3
                )
    return ProbTable(table.pi, kmax, probs, table.lift_stable, table.conditional)


def _delta(table, k):
    if k % 2 == 0:
        return Fraction(0)
    i = (k - 1) // 2
    return table.p(i + 1, (i + 1, i + 1))


def prob_power_divides_chain(table, k):
    """Prob(pi^k | #E) summed along the transition graph (the oracle)."""
    if k == 0:
        return Fraction(1)
    ext = extend_table(table, max(k, table.n))
    total = _delta(ext, k)
    for l in range(0, k // 2 + 1):
        total += ext.p(k - l, (l, k - l))
    return total


def prob_power_divides(table, k):
    """Prob(pi^k | #E) by the three-branch closed form."""
    if not table.lift_stable:
        raise ValueError("closed form needs the stable-index hypothesis")
    if k == 0:
        return Fraction(1)
    pi, n = table.pi, table.n

    def gamma(h):
        return pi ** n * sum(
            (pi ** l * table.p(n, (l, n)) for l in range(0, h + 1)), Fraction(0)
        )

    def S(h):
        total = sum(
            (table.p(k - l, (l, k - l)) for l in range(h, k // 2 + 1)), Fraction(0)
        )
        return pi ** k * (total + _delta(table, k))

    if 1 <= k <= n:
        return S(0) / pi ** k
    if n < k <= 2 * n:
        return (gamma(k - n - 1) + S(k - n)) / pi ** k
    pnn = table.p(n, (n, n))
    return (gamma(n) + pnn * pi ** (2 * n - 1) - Fraction(pi ** (4 * n - 1) * pnn, pi ** k)) / pi ** k


def average_valuation(table):
    """Mean valuation of pi in #E(F_p) from the closed-form sum."""
    if not table.lift_stable:
        raise ValueError("closed form needs the stable-index hypothesis")
    pi, n = table.pi, table.n
    total = 2 * sum((table.p(l, (l, l)) for l in range(1, n)), Fraction(0))
    total += Fraction(pi, pi - 1) * sum(
        (table.p(n, (l, n)) for l in range(0, n)), Fraction(0)
    )
    total += sum(
        (table.p(i, (l, i)) for l in range(0, n - 1) for i in range(l + 1, n)),
        Fraction(0),
    )
    total += Fraction(pi * (2 * pi + 1), (pi - 1) * (pi + 1)) * table.p(n, (n, n))
    return total


def average_valuation_series(table, kmax=60):
    """Partial sum over k of Prob(pi^k | #E); tail-truncated oracle."""
    ext = extend_table(table, max(kmax, table.n))
    total = Fraction(0)
    for k in range(1, kmax + 1):
        total += _delta(ext, k)
        for l in range(0, k // 2 + 1):
            total += ext.p(k - l, (l, k - l))
    return total

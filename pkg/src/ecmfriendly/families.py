"""ECM-friendly curve families and their divisibility certificates.

Covers the Suyama parametrization, the Suyama-11 and Suyama-9/4
subfamilies cut out by the square conditions -(A+2)/B and B, the
a = -1 twisted Edwards curves with d = -e^4 (torsion Z/2 x Z/4) and
their four subfamilies, a rational parametrization producing curve plus
non-torsion point without any generating-curve arithmetic, and
machine-checkable guaranteed divisors of #E(F_p).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import is_rational_square, legendre, sqrt_mod
from .curves import (
    INFINITY,
    CubicCurve,
    EDWARDS_IDENTITY,
    Montgomery,
    ShortWeierstrass,
    TwistedEdwards,
    add_points,
    edwards_point,
    neg_point,
    on_curve,
    reduce_curve,
    scalar_mul,
)

SUYAMA_EXCLUDED = (
    Fraction(0),
    Fraction(1),
    Fraction(-1),
    Fraction(3),
    Fraction(-3),
    Fraction(5),
    Fraction(-5),
    Fraction(5, 3),
    Fraction(-5, 3),
)

ED24_TAGS = ("generic", "g2", "rat", "g2half", "gminv")


def rational_sqrt(q):
    """Exact square root of a rational square."""
    q = Fraction(q)
    if q < 0 or not is_rational_square(q):
        raise ValueError("%s is not a rational square" % q)
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


@dataclass(frozen=True)
class SuyamaCurve:
    """A Suyama curve: rational 3-torsion plus a non-torsion point.

    Normalized so the non-torsion point has y = 1, which fixes B; the
    square-condition tests only see B's square class, which the
    normalization makes canonical.
    """

    sigma: Fraction
    curve: Montgomery
    x3: Fraction
    y3: Fraction
    x_inf: Fraction
    y_inf: Fraction


def montgomery_three_torsion_poly(A, x):
    """3-division polynomial of B y^2 = x^3 + A x^2 + x, evaluated at x."""
    return 3 * x ** 4 + 4 * A * x ** 3 + 6 * x * x - 1


def suyama(sigma):
    """Suyama curve for a rational sigma outside {0,+-1,+-3,+-5,+-5/3}."""
    sigma = Fraction(sigma)
    if sigma in SUYAMA_EXCLUDED:
        raise ValueError("sigma %s is in the excluded set" % sigma)
    u = sigma * sigma - 5
    v = 4 * sigma
    if u == 0 or v == 0 or u == v:
        raise ValueError("degenerate sigma %s" % sigma)
    x3 = u / v
    x_inf = u ** 3 / v ** 3
    A = (v - u) ** 3 * (3 * u + v) / (4 * u ** 3 * v) - 2
    B = x_inf ** 3 + A * x_inf ** 2 + x_inf
    if B == 0:
        raise ValueError("sigma %s gives B = 0" % sigma)
    curve = Montgomery(A, B)
    if montgomery_three_torsion_poly(A, x3) != 0:
        raise ArithmeticError("x3 is not a 3-torsion abscissa for sigma=%s" % sigma)
    y3sq = (x3 ** 3 + A * x3 ** 2 + x3) / B
    y3 = rational_sqrt(y3sq)
    return SuyamaCurve(sigma, curve, x3, y3, x_inf, Fraction(1))


def satisfies_eq11(A, B):
    """Whether -(A+2)/B is a nonzero rational square (a = -c^2 family)."""
    val = -(Fraction(A) + 2) / Fraction(B)
    return val != 0 and is_rational_square(val)


def satisfies_eq94(A, B):
    """Whether B is a nonzero rational square (a - d = c^2 family)."""
    val = Fraction(B)
    return val != 0 and is_rational_square(val)


# ---------------------------------------------------------------------------
# rank-1 parametrizations of the two Suyama subfamilies

_S11_CURVE = CubicCurve(-1, -120, 432)
_S11_PINF = (Fraction(-6), Fraction(30))
_S11_P2 = (Fraction(-12), Fraction(0))
_S11_Q2 = (Fraction(4), Fraction(0))

_S94_CURVE = ShortWeierstrass(-5, 0)
_S94_PINF = (Fraction(-1), Fraction(2))
_S94_P2 = (Fraction(0), Fraction(0))


def _points_equal(P, Q):
    return P == Q


def suyama11_sigma(n, e1, e2):
    """Sigma of the Suyama-11 member at n*Pinf + e1*P2 + e2*Q2.

    The generators live on v^2 = u^3 - u^2 - 120u + 432 and sigma is
    120/(u - 24) + 5; the combinations listed in the exclusion set give
    degenerate sigma values and are rejected.
    """
    C = _S11_CURVE
    R = scalar_mul(C, n, _S11_PINF)
    if e1:
        R = add_points(C, R, _S11_P2)
    if e2:
        R = add_points(C, R, _S11_Q2)
    excluded = [
        INFINITY,
        _S11_PINF,
        neg_point(C, _S11_PINF),
        _S11_P2,
        _S11_Q2,
        add_points(C, _S11_P2, _S11_Q2),
        add_points(C, _S11_Q2, _S11_PINF),
        add_points(C, _S11_Q2, neg_point(C, _S11_PINF)),
    ]
    if any(_points_equal(R, E) for E in excluded):
        raise ValueError("point (n=%d, e1=%d, e2=%d) is excluded" % (n, e1, e2))
    u = R[0]
    if u == 24:
        raise ValueError("u = 24 gives no sigma")
    sigma = 120 / (u - 24) + 5
    sc = suyama(sigma)
    if not satisfies_eq11(sc.curve.A, sc.curve.B):
        raise ArithmeticError("Suyama-11 member sigma=%s fails its square condition" % sigma)
    return sigma


def suyama94_sigma(n, e1=0):
    """Sigma of the Suyama-9/4 member at n*Pinf + e1*P2 on v^2 = u^3 - 5u."""
    C = _S94_CURVE
    R = scalar_mul(C, n, _S94_PINF)
    if e1:
        R = add_points(C, R, _S94_P2)
    excluded = [
        INFINITY,
        _S94_PINF,
        neg_point(C, _S94_PINF),
        _S94_P2,
        add_points(C, _S94_P2, _S94_PINF),
        add_points(C, _S94_P2, neg_point(C, _S94_PINF)),
    ]
    if any(_points_equal(R, E) for E in excluded):
        raise ValueError("point (n=%d, e1=%d) is excluded" % (n, e1))
    sigma = R[0]
    sc = suyama(sigma)
    if not satisfies_eq94(sc.curve.A, sc.curve.B):
        raise ArithmeticError("Suyama-9/4 member sigma=%s fails its square condition" % sigma)
    return sigma


# ---------------------------------------------------------------------------
# twisted Edwards families with torsion Z/2 x Z/4 (d = -e^4)


def _ed24_parameter(tag, param):
    g = Fraction(param)
    if tag == "generic":
        e = g
    elif tag == "g2":
        e = g * g
    elif tag == "rat":
        if 2 * g + 1 == 0:
            raise ValueError("g = -1/2 is degenerate for this subfamily")
        e = (2 * g * g + 2 * g + 1) / (2 * g + 1)
    elif tag == "g2half":
        e = g * g / 2
    elif tag == "gminv":
        if g == 0:
            raise ValueError("g = 0 is degenerate")
        e = (g - 1 / g) / 2
    else:
        raise ValueError("unknown subfamily tag %r" % tag)
    if e in (0, 1, -1):
        raise ValueError("parameter gives degenerate e = %s" % e)
    return e


def edwards_family(tag, param):
    """a = -1 twisted Edwards curve with d = -e^4 from a subfamily tag.

    Tags: generic (e given directly), g2 (e = g^2),
    rat (e = (2g^2+2g+1)/(2g+1)), g2half (e = g^2/2),
    gminv (e = (g - 1/g)/2).  The resulting curves have rational torsion
    Z/2 x Z/4.
    """
    e = _ed24_parameter(tag, param)
    return TwistedEdwards(Fraction(-1), -e ** 4)


def z2z4_param(t):
    """Curve parameters and a non-torsion point from one rational t.

    Returns (d, x_inf, y_inf) with d = -e^4, e = 3(t^2-1)/(8t); the
    point lies on -x^2 + y^2 = 1 + d x^2 y^2 and generates infinite
    order since its abscissa avoids {0, oo, 1/e, -1/e}.
    """
    t = Fraction(t)
    if t in (0, 1, -1):
        raise ValueError("t in {0, 1, -1} is degenerate")
    e = 3 * (t * t - 1) / (8 * t)
    if e in (0, 1, -1):
        raise ValueError("t = %s gives degenerate e = %s" % (t, e))
    d = -e ** 4
    x_inf = 1 / (4 * e ** 3 + 3 * e)
    y_inf = (9 * t ** 4 - 2 * t * t + 9) / (9 * t ** 4 - 9)
    curve = TwistedEdwards(Fraction(-1), d)
    P = edwards_point(x_inf, y_inf)
    if not on_curve(curve, P):
        raise ArithmeticError("parametrized point misses the curve at t=%s" % t)
    if x_inf in (0, 1 / e, -1 / e):
        raise ArithmeticError("parametrized point is torsion at t=%s" % t)
    return d, x_inf, y_inf


_GEN_CURVE = ShortWeierstrass(-36, 0)
_GEN_POINT = (Fraction(-3), Fraction(9))


def e_square_generator(k):
    """Value g with e = g^2 from the k-th multiple of (-3, 9) on y^2 = x^3 - 36x.

    The generating curve has rank 1, so the walk produces infinitely
    many members of the e = g^2 subfamily with positive rank.
    """
    if k < 1:
        raise ValueError("k must be positive")
    Q = scalar_mul(_GEN_CURVE, k, _GEN_POINT)
    if Q is INFINITY or Q[1] == 0:
        raise ValueError("k = %d lands on 2-torsion" % k)
    x = Q[0]
    if x == 6:
        raise ValueError("k = %d gives t = infinity" % k)
    t = (x + 6) / (x - 6)
    if t in (0, 1, -1):
        raise ValueError("k = %d gives degenerate t" % k)
    e = 3 * (t * t - 1) / (8 * t)
    if e in (0, 1, -1):
        raise ValueError("k = %d gives degenerate e" % k)
    if not is_rational_square(e):
        raise ArithmeticError("e = %s is unexpectedly not a square" % e)
    return rational_sqrt(e)


def edwards_eight_torsion(g, p, t, w, signs=(1, 1)):
    """A mod-p point of order 8 on the gminv curve for parameter g.

    Needs t in {1,-1} with t*g*(g-1)*(g+1) a quadratic residue mod p and
    good reduction at p.  The point satisfies x = s1 * g^w * y with
    y = s2 * sqrt(4t g^(2-w) / ((g-tw)^3 (g+tw))) and doubles to
    (+-1/e, t/e) where e = (g - 1/g)/2.
    """
    if t not in (1, -1) or w not in (1, -1):
        raise ValueError("t and w must be +-1")
    g = Fraction(g)
    curve_q = edwards_family("gminv", g)
    red = reduce_curve(curve_q, p)
    if not red.good:
        raise ValueError("bad reduction at %d: %s" % (p, red.reason))
    curve = red.curve
    gp = g.numerator * pow(g.denominator, -1, p) % p
    disc = t * gp % p * ((gp - 1) % p) % p * ((gp + 1) % p) % p
    if legendre(disc, p) != 1:
        raise ValueError("t*g*(g-1)*(g+1) is not a quadratic residue mod %d" % p)
    gw = gp if w == 1 else pow(gp, -1, p)
    g_pow = pow(gp, 2 - w, p)
    den = pow((gp - t * w) % p, 3, p) * ((gp + t * w) % p) % p
    ysq = 4 * t * g_pow % p * pow(den, -1, p) % p
    yroot = sqrt_mod(ysq, p)
    if yroot is None:
        raise ArithmeticError("square-root hypothesis failed despite QR condition")
    y = yroot if signs[1] == 1 else (-yroot) % p
    x = signs[0] * gw * y % p
    P = edwards_point(x, y)
    if not on_curve(curve, P):
        raise ArithmeticError("constructed point misses the curve")
    D = scalar_mul(curve, 2, P)
    e = _ed24_parameter("gminv", g)
    e_inv = pow(e.numerator * pow(e.denominator, -1, p) % p, -1, p)
    if D[1] != (t * e_inv % p, 1) or D[0] not in ((e_inv, 1), ((-e_inv) % p, 1)):
        raise ArithmeticError("doubling contract violated")
    if scalar_mul(curve, 4, P) == EDWARDS_IDENTITY:
        raise ArithmeticError("point has order dividing 4")
    if scalar_mul(curve, 8, P) != EDWARDS_IDENTITY:
        raise ArithmeticError("point does not have order 8")
    return P


# ---------------------------------------------------------------------------
# divisibility certificates


@dataclass(frozen=True)
class Certificate:
    """A guaranteed divisor of #E(F_p) under a per-prime predicate."""

    curve: object
    divisor: int
    description: str
    predicate: object  # callable p -> bool, defined at good primes
    shape_claim: tuple = None  # optional (pi, level, (i, j), kind)

    def applies_at(self, p):
        return self.predicate(p)


def _always(p):
    return True


def _qr(value, p):
    q = Fraction(value)
    num = q.numerator % p
    den = q.denominator % p
    return legendre(num * den % p, p) == 1


def montgomery_torsion_certificates(curve):
    """The three conditional 8-divisibility certificates of a Montgomery
    or twisted Edwards curve, plus the unconditional 4."""
    if isinstance(curve, Montgomery):
        ratio = (curve.A - 2) * (curve.A + 2)  # = a/d up to squares
        a_val = None  # (A+2)/B plays the role of a
        a_param = (Fraction(curve.A) + 2) / Fraction(curve.B)
        amd = Fraction(curve.B)  # B plays the role of a - d
    elif isinstance(curve, TwistedEdwards):
        ratio = Fraction(curve.a) / Fraction(curve.d)
        a_param = Fraction(curve.a)
        amd = Fraction(curve.a) - Fraction(curve.d)
    else:
        raise TypeError("torsion certificates need Montgomery or Edwards curves")

    def case1(p):
        return p % 4 == 3 and _qr(ratio, p)

    def case2(p):
        return p % 4 == 1 and _qr(a_param, p) and _qr(ratio, p)

    def case3(p):
        return p % 4 == 1 and not _qr(ratio, p) and _qr(amd, p)

    return (
        Certificate(curve, 8, "4-torsion Z/2 x Z/4 when p = 3 mod 4 and a/d is square", case1,
                    shape_claim=(2, 2, (1, 2), "eq")),
        Certificate(curve, 8, "Z/2 x Z/4 inside the 4-torsion when p = 1 mod 4, a and a/d square", case2,
                    shape_claim=(2, 2, (1, 2), "contains")),
        Certificate(curve, 8, "8-torsion Z/8 when p = 1 mod 4, a/d non-square, a-d square", case3,
                    shape_claim=(2, 3, (0, 3), "eq")),
        Certificate(curve, 4, "Montgomery/Edwards order divisible by 4", _always),
    )


def divisibility_certificate(obj, tag=None, check_primes=25):
    """Certificates for a recognized family member, strongest first.

    obj may be a SuyamaCurve, a Montgomery or twisted Edwards curve over
    Q; tag names the family for Edwards subfamilies ('gminv' adds the 16
    and conditional 32 divisors, with the gminv parameter passed through
    tag as ('gminv', g)).  Every certificate is spot-checked against
    group orders at the first `check_primes` good primes.
    """
    certs = []
    if isinstance(obj, SuyamaCurve):
        curve = obj.curve
        certs.append(Certificate(curve, 12, "Suyama: rational 3-torsion and 4 | #E", _always))
        certs.extend(montgomery_torsion_certificates(curve))
    elif isinstance(obj, Montgomery):
        certs.extend(montgomery_torsion_certificates(obj))
    elif isinstance(obj, TwistedEdwards):
        curve = obj
        if isinstance(tag, tuple) and tag and tag[0] == "gminv":
            g = Fraction(tag[1])
            if edwards_family("gminv", g) != curve:
                raise ValueError("gminv parameter does not match the curve")
            disc = g * (g - 1) * (g + 1)

            def p32(p):
                return p % 4 == 1 and _qr(disc, p)

            certs.append(
                Certificate(curve, 32, "gminv family: 32 | #E when p = 1 mod 4 and g(g-1)(g+1) square", p32)
            )
            certs.append(Certificate(curve, 16, "gminv family: 16 | #E at every good prime", _always))
        certs.extend(montgomery_torsion_certificates(curve))
    else:
        raise TypeError("unrecognized family object %r" % (obj,))
    certs.sort(key=lambda c: -c.divisor)
    if check_primes:
        _spot_check(certs, check_primes)
    return tuple(certs)


def _spot_check(certs, count):
    from .structure import group_order

    for cert in certs:
        base = cert.curve
        checked = 0
        p = 5
        while checked < count:
            red = reduce_curve(base, p)
            if red.good:
                if cert.applies_at(p) and group_order(red.curve) % cert.divisor:
                    raise ArithmeticError(
                        "certificate %r fails at p=%d" % (cert.description, p)
                    )
                checked += 1
            p = _next_prime(p)


def _next_prime(p):
    from .arith import is_probable_prime

    p += 2 if p > 2 else 1
    while not is_probable_prime(p):
        p += 2
    return p


# ---------------------------------------------------------------------------
# family spec strings (CLI syntax)


def parse_family_spec(spec, max_n=12):
    """Build a family member from a spec string.

    Grammar: suyama:SIGMA | suyama11:n=N,e1=B,e2=B | suyama94:n=N[,e1=B]
    | ed24:TAG:g=G | ed24:param:t=T ; rationals use num/den.  Walk
    indices are capped at max_n because coordinate heights roughly
    square with each doubling.
    """
    parts = spec.split(":")
    kind = parts[0].strip().lower()
    if kind == "suyama":
        if len(parts) != 2:
            raise ValueError("expected suyama:SIGMA")
        return suyama(_rat(parts[1]))
    if kind in ("suyama11", "suyama94"):
        kv = _keyvals(parts[1] if len(parts) > 1 else "")
        n = int(kv.get("n", 1))
        if abs(n) > max_n:
            raise ValueError("walk index n=%d beyond the height cap %d" % (n, max_n))
        e1 = int(kv.get("e1", 0))
        if kind == "suyama11":
            sigma = suyama11_sigma(n, e1, int(kv.get("e2", 0)))
        else:
            sigma = suyama94_sigma(n, e1)
        return suyama(sigma)
    if kind == "ed24":
        if len(parts) < 3:
            raise ValueError("expected ed24:TAG:PARAM")
        tag = parts[1].strip().lower()
        kv = _keyvals(parts[2])
        if tag == "param":
            d, x_inf, y_inf = z2z4_param(_rat(kv["t"]))
            return TwistedEdwards(Fraction(-1), d)
        if tag not in ED24_TAGS:
            raise ValueError("unknown ed24 tag %r" % tag)
        key = "g" if "g" in kv else "e"
        return edwards_family(tag, _rat(kv[key]))
    raise ValueError("unknown family spec %r" % spec)


def _rat(text):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _keyvals(text):
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, val = part.partition("=")
        out[key.strip()] = val.strip()
    return out

import random
from fractions import Fraction as F

import pytest

from ecmfriendly.arith import is_probable_prime, legendre, square_class
from ecmfriendly.curves import (
    EDWARDS_IDENTITY,
    INFINITY,
    Montgomery,
    TwistedEdwards,
    ShortWeierstrass,
    add_points,
    on_curve,
    edwards_point,
    reduce_curve,
    scalar_mul,
)
from ecmfriendly.families import (
    SUYAMA_EXCLUDED,
    divisibility_certificate,
    e_square_generator,
    edwards_eight_torsion,
    edwards_family,
    montgomery_torsion_certificates,
    parse_family_spec,
    rational_sqrt,
    satisfies_eq11,
    satisfies_eq94,
    suyama,
    suyama11_sigma,
    suyama94_sigma,
    z2z4_param,
)
from ecmfriendly.structure import group_order, torsion_shape


def good_primes(curve, count, start=5):
    p = start
    out = []
    while len(out) < count:
        if is_probable_prime(p) and p > 3:
            red = reduce_curve(curve, p)
            if red.good:
                out.append(p)
        p += 2
    return out


def test_suyama_invariants():
    for sigma in (11, F(9, 4), 12, 6, F(7, 3)):
        sc = suyama(sigma)
        A, B = sc.curve.A, sc.curve.B
        # 3-torsion and Suyama equation
        assert 3 * sc.x3 ** 4 + 4 * A * sc.x3 ** 3 + 6 * sc.x3 ** 2 - 1 == 0
        assert sc.x_inf == sc.x3 ** 3
        assert B * sc.y3 ** 2 == sc.x3 ** 3 + A * sc.x3 ** 2 + sc.x3
        assert B * sc.y_inf ** 2 == sc.x_inf ** 3 + A * sc.x_inf ** 2 + sc.x_inf
        # x3 really is a 3-torsion abscissa: [3](x3, y3) = O
        assert scalar_mul(sc.curve, 3, (sc.x3, sc.y3)) is INFINITY


def test_suyama_excluded():
    for sigma in SUYAMA_EXCLUDED:
        with pytest.raises(ValueError):
            suyama(sigma)


def test_square_conditions():
    s11 = suyama(11)
    assert satisfies_eq11(s11.curve.A, s11.curve.B)
    assert not satisfies_eq94(s11.curve.A, s11.curve.B)
    s94 = suyama(F(9, 4))
    assert satisfies_eq94(s94.curve.A, s94.curve.B)
    assert not satisfies_eq11(s94.curve.A, s94.curve.B)
    s12 = suyama(12)
    assert not satisfies_eq11(s12.curve.A, s12.curve.B)
    assert not satisfies_eq94(s12.curve.A, s12.curve.B)
    assert not satisfies_eq94(F(10, 3), F(-16, 3))
    assert square_class(F(-16, 3)) == -3


def test_suyama11_sigma_examples():
    assert suyama11_sigma(1, 1, 0) == 11
    for bad in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (1, 0, 1)):
        with pytest.raises(ValueError):
            suyama11_sigma(*bad)
    # walk a few members: all satisfy the square condition by construction
    for n, e1, e2 in ((2, 0, 0), (2, 1, 0), (1, 1, 1), (3, 0, 0), (2, 0, 1)):
        sigma = suyama11_sigma(n, e1, e2)
        sc = suyama(sigma)
        assert satisfies_eq11(sc.curve.A, sc.curve.B)


def test_suyama94_sigma_examples():
    assert suyama94_sigma(2, 0) == F(9, 4)
    for bad in ((1, 0), (0, 1), (1, 1)):
        with pytest.raises(ValueError):
            suyama94_sigma(*bad)
    for n, e1 in ((2, 1), (3, 0), (3, 1), (4, 0)):
        sigma = suyama94_sigma(n, e1)
        sc = suyama(sigma)
        assert satisfies_eq94(sc.curve.A, sc.curve.B)


def test_sign_related_points_give_isomorphic_curves():
    # R and -R, and R + Q2, lead to sigma values whose curves have the
    # same group orders at 50 test primes
    sigmas = [suyama11_sigma(2, 0, 0), suyama11_sigma(-2, 0, 0), suyama11_sigma(2, 0, 1)]
    curves = [suyama(s).curve for s in sigmas]
    primes = good_primes(curves[0], 50)
    for p in primes:
        orders = set()
        for c in curves:
            red = reduce_curve(c, p)
            if not red.good:
                orders = None
                break
            orders.add(group_order(red.curve))
        if orders is not None:
            assert len(orders) == 1, (p, orders)


def test_edwards_family_examples():
    ed = edwards_family("gminv", F(9, 2))
    assert ed.d == -F(77, 36) ** 4 and ed.a == -1
    assert edwards_family("generic", 11).d == -(11 ** 4)
    assert edwards_family("g2", F(30, 7)).d == -F(900, 49) ** 4
    with pytest.raises(ValueError):
        edwards_family("g2", 1)  # e = 1 degenerate
    with pytest.raises(ValueError):
        edwards_family("gminv", 0)
    with pytest.raises(ValueError):
        edwards_family("nosuch", 2)


def test_z2z4_param():
    d, x, y = z2z4_param(2)
    e = F(3) * (4 - 1) / 16
    assert e == F(9, 16) and d == -e ** 4
    curve = TwistedEdwards(F(-1), d)
    assert on_curve(curve, edwards_point(x, y))
    # e(1/t) = -e(t)
    for t in (F(2), F(3), F(5, 7)):
        e1 = 3 * (t * t - 1) / (8 * t)
        ti = 1 / t
        e2 = 3 * (ti * ti - 1) / (8 * ti)
        assert e2 == -e1
    # t = 3 hits e = 1 exactly, which degenerates the curve
    with pytest.raises(ValueError):
        z2z4_param(3)
    for t in (4, 5, F(7, 2)):
        dt, xt, yt = z2z4_param(t)
        et = 3 * (F(t) ** 2 - 1) / (8 * F(t))
        curve_t = TwistedEdwards(F(-1), dt)
        assert on_curve(curve_t, edwards_point(xt, yt))
        assert xt not in (0, 1 / et, -1 / et)
    for bad in (0, 1, -1):
        with pytest.raises(ValueError):
            z2z4_param(bad)


def test_e_square_generator():
    # the generating point is on the curve: 81 = -27 + 108
    E = ShortWeierstrass(-36, 0)
    assert on_curve(E, (F(-3), F(9)))
    assert e_square_generator(2) == F(30, 7)
    with pytest.raises(ValueError):
        e_square_generator(1)  # e = 1
    g3 = e_square_generator(3)
    assert square_class(g3 * g3) == 1


def test_rational_sqrt():
    assert rational_sqrt(F(9, 4)) == F(3, 2)
    with pytest.raises(ValueError):
        rational_sqrt(F(2))


def test_edwards_eight_torsion_mod29():
    P = edwards_eight_torsion(F(9, 2), 29, 1, 1)
    assert P == ((28, 1), (3, 1))
    curve = reduce_curve(edwards_family("gminv", F(9, 2)), 29).curve
    D = scalar_mul(curve, 2, P)
    assert D[1] == (8, 1)  # e^{-1} mod 29
    assert scalar_mul(curve, 8, P) == EDWARDS_IDENTITY
    assert scalar_mul(curve, 4, P) != EDWARDS_IDENTITY


def test_edwards_eight_torsion_no_admissible_t():
    for t in (1, -1):
        with pytest.raises(ValueError):
            edwards_eight_torsion(F(9, 2), 13, t, 1)


def test_edwards_eight_torsion_order_samples():
    g = F(9, 2)
    curve_q = edwards_family("gminv", g)
    rng = random.Random(40)
    done = 0
    p = 5
    while done < 12:
        p += 2
        if not is_probable_prime(p):
            continue
        red = reduce_curve(curve_q, p)
        if not red.good:
            continue
        for t in (1, -1):
            disc = t * g * (g - 1) * (g + 1)
            num = disc.numerator % p
            den = disc.denominator % p
            if legendre(num * den % p, p) != 1:
                continue
            for w in (1, -1):
                for signs in ((1, 1), (1, -1), (-1, 1)):
                    P = edwards_eight_torsion(g, p, t, w, signs)
                    assert scalar_mul(red.curve, 8, P) == EDWARDS_IDENTITY
                    assert scalar_mul(red.curve, 4, P) != EDWARDS_IDENTITY
            done += 1


def test_certificates_gminv():
    curve = edwards_family("gminv", F(9, 2))
    certs = divisibility_certificate(curve, tag=("gminv", F(9, 2)), check_primes=10)
    divisors = [c.divisor for c in certs]
    assert divisors[0] == 32 and 16 in divisors and 4 in divisors
    sixteen = next(c for c in certs if c.divisor == 16)
    for p in good_primes(curve, 30):
        assert sixteen.applies_at(p)
        assert group_order(reduce_curve(curve, p).curve) % 16 == 0


def test_certificates_suyama():
    sc = suyama(11)
    certs = divisibility_certificate(sc, check_primes=10)
    twelve = next(c for c in certs if c.divisor == 12)
    for p in good_primes(sc.curve, 25):
        assert twelve.applies_at(p)
        assert group_order(reduce_curve(sc.curve, p).curve) % 12 == 0


def test_certificates_montgomery_case1():
    M = Montgomery(F(7), F(3))
    certs = montgomery_torsion_certificates(M)
    case1 = certs[0]
    for p in good_primes(M, 120):
        if not case1.applies_at(p):
            continue
        red = reduce_curve(M, p)
        assert torsion_shape(red.curve, 2, 2) == (1, 2)
        assert group_order(red.curve) % 8 == 0


def test_certificate_rejects_unknown():
    with pytest.raises(TypeError):
        divisibility_certificate(ShortWeierstrass(5, 7))


def test_parse_family_spec():
    sc = parse_family_spec("suyama:11")
    assert sc.sigma == 11
    sc = parse_family_spec("suyama11:n=1,e1=1,e2=0")
    assert sc.sigma == 11
    sc = parse_family_spec("suyama94:n=2")
    assert sc.sigma == F(9, 4)
    ed = parse_family_spec("ed24:gminv:g=9/2")
    assert ed.d == -F(77, 36) ** 4
    ed = parse_family_spec("ed24:param:t=2")
    assert ed.d == -F(9, 16) ** 4
    with pytest.raises(ValueError):
        parse_family_spec("nosuch:1")
    with pytest.raises(ValueError):
        parse_family_spec("ed24:nosuch:g=2")
    with pytest.raises(ValueError):
        parse_family_spec("suyama11:n=13")
    assert parse_family_spec("suyama11:n=13", max_n=20).sigma is not None

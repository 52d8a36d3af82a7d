import random
from fractions import Fraction as F

import pytest

from ecmfriendly.arith import legendre
from ecmfriendly.curves import (
    EDWARDS_IDENTITY,
    INFINITY,
    CubicCurve,
    Montgomery,
    ShortWeierstrass,
    TwistedEdwards,
    add_points,
    curve_literal,
    edwards_point,
    identity_point,
    is_identity,
    montgomery_edwards_convert,
    neg_point,
    on_curve,
    parse_curve,
    reduce_curve,
    scalar_mul,
    to_weierstrass,
)
from ecmfriendly.structure import count_points_naive


def random_curve(rng, p, model="w"):
    while True:
        try:
            if model == "w":
                return ShortWeierstrass(rng.randrange(p), rng.randrange(p), p)
            if model == "m":
                return Montgomery(rng.randrange(p), rng.randrange(1, p), p)
            return TwistedEdwards(rng.randrange(1, p), rng.randrange(1, p), p)
        except ValueError:
            continue


def random_point(rng, model):
    from ecmfriendly.arith import sqrt_mod

    p = model.p
    sw, fwd, back = to_weierstrass(model)
    while True:
        x = rng.randrange(p)
        fx = (x ** 3 + sw.a * x + sw.b) % p
        if fx == 0:
            return back((x, 0))
        if legendre(fx, p) == 1:
            return back((x, sqrt_mod(fx, p)))


def test_constructor_invariants():
    with pytest.raises(ValueError):
        ShortWeierstrass(0, 0)
    with pytest.raises(ValueError):
        Montgomery(2, 5)
    with pytest.raises(ValueError):
        TwistedEdwards(1, 1)


def test_reduce_curve_examples():
    out = reduce_curve(ShortWeierstrass(5, 7), 11)
    assert out.good and (out.curve.a, out.curve.b) == (5, 7)
    # e = 77/36 mod 17 is 13, 13^4 = 1 mod 17, so d = -1 = a
    ed = TwistedEdwards(-1, -F(77, 36) ** 4)
    out = reduce_curve(ed, 17)
    assert not out.good and "a-d" in out.reason
    with pytest.raises(ValueError):
        reduce_curve(Montgomery(6, 1), 2)


def test_reduce_curve_pole():
    out = reduce_curve(ShortWeierstrass(F(1, 11), 3), 11)
    assert not out.good


def test_add_identity_and_inverse():
    E = ShortWeierstrass(5, 7, 101)
    rng = random.Random(5)
    for _ in range(10):
        P = random_point(rng, E)
        assert add_points(E, P, INFINITY) == P
        assert add_points(E, P, neg_point(E, P)) is INFINITY


def test_paper_point_sums():
    # doubling on v^2 = u^3 - 5u
    E = ShortWeierstrass(-5, 0)
    assert scalar_mul(E, 2, (F(-1), F(2))) == (F(9, 4), F(-3, 8))
    # the Suyama-11 generating curve: sum lands on u = 44 with v = +-280
    C = CubicCurve(-1, -120, 432)
    S = add_points(C, (F(-6), F(30)), (F(-12), F(0)))
    assert S[0] == 44 and S[1] ** 2 == 280 ** 2


def test_scalar_mul_composition():
    E = ShortWeierstrass(2, 3, 1009)
    rng = random.Random(6)
    P = random_point(rng, E)
    assert scalar_mul(E, 1, P) == P
    assert scalar_mul(E, 6, P) == scalar_mul(E, 2, scalar_mul(E, 3, P))
    assert scalar_mul(E, 0, P) is INFINITY
    assert scalar_mul(E, -3, P) == neg_point(E, scalar_mul(E, 3, P))


def test_group_law_axioms_sampled():
    rng = random.Random(7)
    primes = [11, 13, 17, 23, 37, 53, 71, 97]
    for model_kind in ("w", "m", "e"):
        checked = 0
        while checked < 100:
            p = rng.choice(primes)
            E = random_curve(rng, p, model_kind)
            P, Q, R = (random_point(rng, E) for _ in range(3))
            assert on_curve(E, P) and on_curve(E, Q) and on_curve(E, R)
            left = add_points(E, add_points(E, P, Q), R)
            right = add_points(E, P, add_points(E, Q, R))
            assert left == right
            assert add_points(E, P, Q) == add_points(E, Q, P)
            S = add_points(E, P, neg_point(E, P))
            assert is_identity(E, S)
            checked += 1


def test_edwards_completed_points_closed_under_addition():
    # 2-torsion at infinity: ((1:0), (s:1)) with s^2 = a/d
    p = 29
    E = TwistedEdwards(-1, 4, p)  # a/d = -1/4... pick shapes with QR structure
    from ecmfriendly.arith import sqrt_mod

    ratio = (-1) * pow(4, -1, p) % p
    s = sqrt_mod(ratio, p)
    if s is not None:
        T = ((1, 0), (s, 1))
        assert on_curve(E, T)
        assert scalar_mul(E, 2, T) == EDWARDS_IDENTITY
        rng = random.Random(8)
        P = random_point(rng, E)
        S = add_points(E, T, P)
        assert on_curve(E, S)
        assert add_points(E, S, neg_point(E, P)) == T


def test_reduction_commutes_with_addition():
    E = ShortWeierstrass(-5, 0)
    P = (F(-1), F(2))
    Q = scalar_mul(E, 2, P)
    S = add_points(E, P, Q)
    for p in (11, 13, 101, 997):
        red = reduce_curve(E, p)
        if not red.good:
            continue
        den = (P[0].denominator * Q[0].denominator * S[0].denominator
               * P[1].denominator * Q[1].denominator * S[1].denominator)
        if den % p == 0:
            continue
        Ep = red.curve
        red_pt = lambda T: (T[0].numerator * pow(T[0].denominator, -1, p) % p,
                            T[1].numerator * pow(T[1].denominator, -1, p) % p)
        assert add_points(Ep, red_pt(P), red_pt(Q)) == red_pt(S)


def test_montgomery_edwards_coefficients():
    E = TwistedEdwards(-1, F(-1, 4))
    M, fwd, back = montgomery_edwards_convert(E)
    assert M.A == F(10, 3) and M.B == F(-16, 3)
    E2, fwd2, back2 = montgomery_edwards_convert(M)
    assert E2 == E


def count_edwards_direct(E):
    """Independent census of the completed Edwards curve over F_p."""
    p = E.p
    a, d = E.a, E.d
    total = 0
    for x in range(p):
        for y in range(p):
            if (a * x * x + y * y - 1 - d * x * x * y * y) % p == 0:
                total += 1
    ratio = a * pow(d, -1, p) % p
    if legendre(ratio, p) == 1:
        total += 2
    if legendre(d, p) == 1:
        total += 2
    return total


def test_montgomery_edwards_order_agreement():
    rng = random.Random(9)
    done = 0
    while done < 20:
        p = rng.choice([q for q in (11, 13, 17, 19, 23, 29, 31, 37, 41, 43) if q < (1 << 12)])
        try:
            M = Montgomery(rng.randrange(p), rng.randrange(1, p), p)
            E, fwd, back = montgomery_edwards_convert(M)
        except ValueError:
            continue
        assert count_points_naive(M) == count_edwards_direct(E)
        done += 1


def test_montgomery_edwards_point_map_is_morphism():
    rng = random.Random(10)
    done = 0
    while done < 25:
        p = rng.choice([31, 37, 41, 53, 61])
        try:
            M = Montgomery(rng.randrange(p), rng.randrange(1, p), p)
            E, to_ed, to_mont = montgomery_edwards_convert(M)
        except ValueError:
            continue
        P, Q = random_point(rng, M), random_point(rng, M)
        PQ = add_points(M, P, Q)
        eP, eQ = to_ed(P), to_ed(Q)
        assert on_curve(E, eP) and on_curve(E, eQ)
        assert add_points(E, eP, eQ) == to_ed(PQ)
        assert to_mont(eP) == P
        done += 1
    # special points round-trip
    p = 29
    M = Montgomery(7, 2, p)
    E, to_ed, to_mont = montgomery_edwards_convert(M)
    assert to_ed(INFINITY) == EDWARDS_IDENTITY
    assert to_mont(EDWARDS_IDENTITY) is INFINITY
    assert to_ed((0, 0)) == ((0, 1), (p - 1, 1))
    assert to_mont(((0, 1), (p - 1, 1))) == (0, 0)


def test_to_weierstrass_montgomery():
    rng = random.Random(11)
    done = 0
    while done < 10:
        p = 13
        try:
            M = Montgomery(rng.randrange(p), rng.randrange(1, p), p)
        except ValueError:
            continue
        sw, fwd, back = to_weierstrass(M)
        # spec formulas
        A, B = M.A, M.B
        ainv3 = pow(3 * B * B % p, -1, p)
        assert sw.a == (3 - A * A) * ainv3 % p
        assert sw.b == (2 * A ** 3 - 9 * A) * pow(27 * B ** 3 % p, -1, p) % p
        assert count_points_naive(M) == count_points_naive(sw)
        P = random_point(rng, M)
        Q = fwd(P)
        assert on_curve(sw, Q) and back(Q) == P
        # orders agree pointwise
        k = rng.randrange(1, 30)
        assert fwd(scalar_mul(M, k, P)) == scalar_mul(sw, k, Q)
        done += 1


def test_to_weierstrass_identity_on_sw():
    E = ShortWeierstrass(5, 7)
    sw, fwd, back = to_weierstrass(E)
    assert sw == E and fwd((1, 2)) == (1, 2)


def test_to_weierstrass_preserves_orders_edwards():
    from ecmfriendly.structure import group_order

    E = TwistedEdwards(-1, 17, 101)
    sw, fwd, back = to_weierstrass(E)
    rng = random.Random(12)
    P = random_point(rng, E)
    Q = fwd(P)
    assert on_curve(sw, Q)
    for k in (2, 3, 5, 8):
        assert fwd(scalar_mul(E, k, P)) == scalar_mul(sw, k, Q)


def all_completed_points(E):
    from ecmfriendly.arith import sqrt_mod

    p, a, d = E.p, E.a, E.d
    pts = []
    for x in range(p):
        for y in range(p):
            P = ((x, 1), (y, 1))
            if on_curve(E, P):
                pts.append(P)
    s = sqrt_mod(a * pow(d, -1, p) % p, p)
    if s is not None:
        for yy in {s, (p - s) % p}:
            pts.append(((1, 0), (yy, 1)))
    s = sqrt_mod(pow(d, -1, p), p)
    if s is not None:
        for xx in {s, (p - s) % p}:
            pts.append(((xx, 1), (1, 0)))
    return pts


def test_edwards_addition_table_exhaustive():
    # the whole addition table of small completed curves must agree with
    # the Montgomery law through the birational map, infinite
    # coordinates included
    import itertools

    rng = random.Random(55)
    curves = 0
    while curves < 6:
        p = rng.choice((13, 17))
        try:
            E = TwistedEdwards(rng.randrange(1, p), rng.randrange(1, p), p)
        except ValueError:
            continue
        M, to_m, to_e = montgomery_edwards_convert(E)
        pts = all_completed_points(E)
        mapped = {to_m(P) for P in pts}
        assert len(mapped) == len(pts)
        for P, Q in itertools.product(pts, repeat=2):
            S = add_points(E, P, Q)
            assert on_curve(E, S)
            assert to_m(S) == add_points(M, to_m(P), to_m(Q))
        curves += 1


def test_curve_literals():
    for text in ("w:5,7", "m:-679442/268279,1/3", "e:-1,-14641"):
        model = parse_curve(text)
        assert curve_literal(model) == text
    with pytest.raises(ValueError):
        parse_curve("z:1,2")
    with pytest.raises(ValueError):
        parse_curve("w:1")

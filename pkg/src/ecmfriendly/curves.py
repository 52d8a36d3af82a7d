"""Elliptic curve models over Q and F_p, group laws, and model conversions.

Three public shapes: short Weierstrass y^2 = x^3 + ax + b, Montgomery
B y^2 = x^3 + A x^2 + x, and twisted Edwards a x^2 + y^2 = 1 + d x^2 y^2.
A fourth shape, CubicCurve y^2 = x^3 + c2 x^2 + c4 x + c6, backs the
auxiliary parametrizing curves used by the family generators.

Coefficients are Fractions when the curve lives over Q (p is None) and
canonical integers in [0, p) over F_p.  Weierstrass-like points are
affine pairs (x, y) with None for the point at infinity.  Twisted
Edwards points are completed pairs ((X, Z), (Y, T)) of projective-line
coordinates, so the 2- and 4-torsion points with infinite coordinates
are ordinary group elements.
"""

from dataclasses import dataclass
from fractions import Fraction

from .arith import inv_mod, valuation

INFINITY = None


def _canon(value, p):
    if p is None:
        return Fraction(value)
    if isinstance(value, Fraction):
        den = value.denominator % p
        if den == 0:
            raise ZeroDivisionError("denominator divisible by p")
        return value.numerator * inv_mod(den, p) % p
    return value % p


@dataclass(frozen=True)
class ShortWeierstrass:
    """y^2 = x^3 + a x + b with 4a^3 + 27b^2 != 0."""

    a: object
    b: object
    p: object = None

    def __post_init__(self):
        object.__setattr__(self, "a", _canon(self.a, self.p))
        object.__setattr__(self, "b", _canon(self.b, self.p))
        disc = 4 * self.a ** 3 + 27 * self.b ** 2
        if self.p is not None:
            disc %= self.p
        if disc == 0:
            raise ValueError("singular Weierstrass curve")


@dataclass(frozen=True)
class Montgomery:
    """B y^2 = x^3 + A x^2 + x with B(A^2 - 4) != 0."""

    A: object
    B: object
    p: object = None

    def __post_init__(self):
        object.__setattr__(self, "A", _canon(self.A, self.p))
        object.__setattr__(self, "B", _canon(self.B, self.p))
        bad = self.B * (self.A ** 2 - 4)
        if self.p is not None:
            bad %= self.p
        if bad == 0:
            raise ValueError("degenerate Montgomery curve")


@dataclass(frozen=True)
class TwistedEdwards:
    """a x^2 + y^2 = 1 + d x^2 y^2 with a d (a - d) != 0."""

    a: object
    d: object
    p: object = None

    def __post_init__(self):
        object.__setattr__(self, "a", _canon(self.a, self.p))
        object.__setattr__(self, "d", _canon(self.d, self.p))
        bad = self.a * self.d * (self.a - self.d)
        if self.p is not None:
            bad %= self.p
        if bad == 0:
            raise ValueError("degenerate twisted Edwards curve")


@dataclass(frozen=True)
class CubicCurve:
    """y^2 = x^3 + c2 x^2 + c4 x + c6, nonsingular."""

    c2: object
    c4: object
    c6: object
    p: object = None

    def __post_init__(self):
        object.__setattr__(self, "c2", _canon(self.c2, self.p))
        object.__setattr__(self, "c4", _canon(self.c4, self.p))
        object.__setattr__(self, "c6", _canon(self.c6, self.p))
        # discriminant of the cubic in x (zero iff repeated root)
        c2, c4, c6 = self.c2, self.c4, self.c6
        disc = (
            18 * c2 * c4 * c6
            - 4 * c2 ** 3 * c6
            + c2 ** 2 * c4 ** 2
            - 4 * c4 ** 3
            - 27 * c6 ** 2
        )
        if self.p is not None:
            disc %= self.p
        if disc == 0:
            raise ValueError("singular cubic curve")


@dataclass(frozen=True)
class ReductionOutcome:
    """Either a curve over F_p or a bad-reduction marker with a reason."""

    curve: object
    reason: object = None

    @property
    def good(self):
        return self.curve is not None


def _vp(q, p):
    """p-adic valuation of a rational; None plays the role of +infinity."""
    q = Fraction(q)
    if q == 0:
        return None
    return valuation(q.numerator, p) - valuation(q.denominator, p)


def _vp_is_zero(q, p):
    return _vp(q, p) == 0


def reduce_curve(model, p):
    """Reduce a curve over Q modulo a prime p > 3.

    Montgomery curves additionally require A-2, A+2 and B to be p-units,
    twisted Edwards curves require a, d and a-d to be p-units; these are
    the conventions under which coefficient-wise reduction is the
    reduction map.
    """
    if p <= 3:
        raise ValueError("reduction requires p > 3")
    if getattr(model, "p", None) is not None:
        raise ValueError("curve is already over a finite field")
    if isinstance(model, ShortWeierstrass):
        for name, c in (("a", model.a), ("b", model.b)):
            v = _vp(c, p)
            if v is not None and v < 0:
                return ReductionOutcome(None, "coefficient %s has a pole at %d" % (name, p))
        try:
            return ReductionOutcome(ShortWeierstrass(model.a, model.b, p))
        except ValueError:
            return ReductionOutcome(None, "singular modulo %d" % p)
    if isinstance(model, Montgomery):
        for name, c in (("A-2", model.A - 2), ("A+2", model.A + 2), ("B", model.B)):
            if not _vp_is_zero(c, p):
                return ReductionOutcome(None, "%s is not a %d-adic unit" % (name, p))
        return ReductionOutcome(Montgomery(model.A, model.B, p))
    if isinstance(model, TwistedEdwards):
        for name, c in (("a", model.a), ("d", model.d), ("a-d", model.a - model.d)):
            if not _vp_is_zero(c, p):
                return ReductionOutcome(None, "%s is not a %d-adic unit" % (name, p))
        return ReductionOutcome(TwistedEdwards(model.a, model.d, p))
    if isinstance(model, CubicCurve):
        for name, c in (("c2", model.c2), ("c4", model.c4), ("c6", model.c6)):
            v = _vp(c, p)
            if v is not None and v < 0:
                return ReductionOutcome(None, "coefficient %s has a pole at %d" % (name, p))
        try:
            return ReductionOutcome(CubicCurve(model.c2, model.c4, model.c6, p))
        except ValueError:
            return ReductionOutcome(None, "singular modulo %d" % p)
    raise TypeError("unknown curve model %r" % (model,))


# ---------------------------------------------------------------------------
# field helpers


def _div(num, den, p):
    if p is None:
        return Fraction(num, den) if not isinstance(num, Fraction) else num / den
    return num * inv_mod(den % p, p) % p


def _norm_pair(X, Z, p):
    """Canonical representative of (X : Z) in P^1."""
    if p is not None:
        X %= p
        Z %= p
    if Z == 0:
        if X == 0:
            raise ValueError("(0 : 0) is not a projective point")
        return (1, 0)
    return (_div(X, Z, p), 1)


# ---------------------------------------------------------------------------
# point predicates


def edwards_point(x, y):
    """Embed an affine twisted Edwards point into completed coordinates."""
    return ((x, 1), (y, 1))


EDWARDS_IDENTITY = ((0, 1), (1, 1))


def on_curve(model, P):
    """Whether P satisfies the curve equation of its model."""
    p = model.p
    if isinstance(model, TwistedEdwards):
        (X, Z), (Y, T) = P
        lhs = model.a * X * X * T * T + Y * Y * Z * Z
        rhs = Z * Z * T * T + model.d * X * X * Y * Y
        ok = (lhs - rhs) % p == 0 if p is not None else lhs == rhs
        return ok and not (X == 0 and Z == 0) and not (Y == 0 and T == 0)
    if P is INFINITY:
        return True
    x, y = P
    if isinstance(model, ShortWeierstrass):
        r = y * y - (x ** 3 + model.a * x + model.b)
    elif isinstance(model, Montgomery):
        r = model.B * y * y - (x ** 3 + model.A * x * x + x)
    elif isinstance(model, CubicCurve):
        r = y * y - (x ** 3 + model.c2 * x * x + model.c4 * x + model.c6)
    else:
        raise TypeError("unknown curve model %r" % (model,))
    return r % p == 0 if p is not None else r == 0


# ---------------------------------------------------------------------------
# group laws


def _weierstrass_like_add(model, P, Q):
    """Addition on the affine models (Weierstrass, Montgomery, cubic)."""
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    p = model.p
    x1, y1 = P
    x2, y2 = Q
    if isinstance(model, ShortWeierstrass):
        c2, scale = 0, 1
        dfdx1 = 3 * x1 * x1 + model.a
    elif isinstance(model, Montgomery):
        c2, scale = model.A, model.B
        dfdx1 = 3 * x1 * x1 + 2 * model.A * x1 + 1
    else:
        c2, scale = model.c2, 1
        dfdx1 = 3 * x1 * x1 + 2 * model.c2 * x1 + model.c4
    if x1 == x2:
        same = (y1 - y2) % p == 0 if p is not None else y1 == y2
        if same and (y1 % p if p is not None else y1) != 0:
            lam = _div(dfdx1, 2 * scale * y1, p)
        else:
            return INFINITY
    else:
        lam = _div(y2 - y1, x2 - x1, p)
    x3 = scale * lam * lam - c2 - x1 - x2
    y3 = lam * (x1 - x3) - y1
    if p is not None:
        x3 %= p
        y3 %= p
    return (x3, y3)


def _edwards_add(model, P, Q):
    """Complete addition on the completed twisted Edwards curve.

    Two addition laws are evaluated; for each output coordinate at least
    one of them is defined (not 0:0), and they agree where both are.
    """
    a, d, p = model.a, model.d, model.p
    (X1, Z1), (Y1, T1) = P
    (X2, Z2), (Y2, T2) = Q
    zztt = Z1 * Z2 * T1 * T2
    xxyy = X1 * X2 * Y1 * Y2
    xyzt = X1 * Y1 * Z2 * T2
    yxtz = X2 * Y2 * Z1 * T1
    xA = X1 * Y2 * Z2 * T1 + X2 * Y1 * Z1 * T2
    zA = zztt + d * xxyy
    yA = Y1 * Y2 * Z1 * Z2 - a * X1 * X2 * T1 * T2
    tA = zztt - d * xxyy
    xB = xyzt + yxtz
    zB = a * X1 * X2 * T1 * T2 + Y1 * Y2 * Z1 * Z2
    yB = xyzt - yxtz
    tB = X1 * Y2 * Z2 * T1 - X2 * Y1 * Z1 * T2
    if p is not None:
        xA %= p
        zA %= p
        yA %= p
        tA %= p
        xB %= p
        zB %= p
        yB %= p
        tB %= p
    if xA == 0 and zA == 0:
        first = _norm_pair(xB, zB, p)
    else:
        first = _norm_pair(xA, zA, p)
    if yA == 0 and tA == 0:
        second = _norm_pair(yB, tB, p)
    else:
        second = _norm_pair(yA, tA, p)
    return (first, second)


def add_points(model, P, Q):
    """Group sum of two points on the given model."""
    if isinstance(model, TwistedEdwards):
        return _edwards_add(model, P, Q)
    return _weierstrass_like_add(model, P, Q)


def neg_point(model, P):
    """Group inverse of P."""
    if isinstance(model, TwistedEdwards):
        (X, Z), (Y, T) = P
        p = model.p
        return (_norm_pair(-X, Z, p), (Y, T))
    if P is INFINITY:
        return INFINITY
    x, y = P
    return (x, -y % model.p) if model.p is not None else (x, -y)


def identity_point(model):
    return EDWARDS_IDENTITY if isinstance(model, TwistedEdwards) else INFINITY


def is_identity(model, P):
    if isinstance(model, TwistedEdwards):
        return P == EDWARDS_IDENTITY
    return P is INFINITY


def scalar_mul(model, k, P):
    """[k]P by double-and-add; [0]P is the identity, negatives invert."""
    if k < 0:
        return scalar_mul(model, -k, neg_point(model, P))
    acc = identity_point(model)
    base = P
    while k:
        if k & 1:
            acc = add_points(model, acc, base)
        k >>= 1
        if k:
            base = add_points(model, base, base)
    return acc


# ---------------------------------------------------------------------------
# model conversions


def montgomery_edwards_convert(model):
    """Birational counterpart of a Montgomery or twisted Edwards curve.

    Returns (counterpart, fwd, back) where fwd maps points of `model` to
    points of the counterpart and back is its inverse.  With
    a = (A+2)/B and d = (A-2)/B the map is a group isomorphism on the
    completed curves.
    """
    p = model.p
    if isinstance(model, Montgomery):
        A, B = model.A, model.B
        ed = TwistedEdwards(_div(A + 2, B, p), _div(A - 2, B, p), p)

        def fwd(P):
            return _montgomery_point_to_edwards(P, p)

        def back(P):
            return _edwards_point_to_montgomery(P, p)

        return ed, fwd, back
    if isinstance(model, TwistedEdwards):
        a, d = model.a, model.d
        A = _div(2 * (a + d), a - d, p)
        B = _div(4, a - d, p)
        mont = Montgomery(A, B, p)

        def fwd(P):
            return _edwards_point_to_montgomery(P, p)

        def back(P):
            return _montgomery_point_to_edwards(P, p)

        return mont, fwd, back
    raise TypeError("conversion needs a Montgomery or twisted Edwards curve")


def _edwards_point_to_montgomery(P, p):
    """((x:z),(y:t)) -> ((t+y)x : (t+y)z : (t-y)x) read as affine (u, v)."""
    (X, Z), (Y, T) = P
    if P == EDWARDS_IDENTITY:
        return INFINITY
    XM = (T + Y) * X
    YM = (T + Y) * Z
    ZM = (T - Y) * X
    if p is not None:
        XM %= p
        YM %= p
        ZM %= p
    if XM == 0 and YM == 0 and ZM == 0:
        return (0, 0)  # the point ((0:1),(-1:1))
    if ZM == 0:
        return INFINITY
    return (_div(XM, ZM, p), _div(YM, ZM, p))


def _montgomery_point_to_edwards(P, p):
    """Inverse map (u : v : 1) -> ((u : v), (u-1 : u+1))."""
    if P is INFINITY:
        return EDWARDS_IDENTITY
    u, v = P
    if u == 0 and v == 0:
        return ((0, 1), (-1 % p if p is not None else Fraction(-1), 1))
    return (_norm_pair(u, v, p), _norm_pair(u - 1, u + 1, p))


def to_weierstrass(model):
    """Short Weierstrass model isomorphic to `model`, with point maps.

    Returns (sw, fwd, back); fwd carries points of `model` to sw and
    back inverts it.  Characteristic 2 and 3 are excluded by
    construction (p > 3 for finite fields).
    """
    p = model.p
    if isinstance(model, ShortWeierstrass):
        ident = lambda P: P
        return model, ident, ident
    if isinstance(model, CubicCurve):
        c2 = model.c2
        shift = _div(c2, 3, p)
        a = model.c4 - _div(c2 * c2, 3, p)
        b = model.c6 - _div(model.c4 * c2, 3, p) + _div(2 * c2 ** 3, 27, p)
        sw = ShortWeierstrass(a, b, p)

        def fwd(P):
            if P is INFINITY:
                return INFINITY
            x, y = P
            u = x + shift
            return (u % p, y % p) if p is not None else (u, y)

        def back(P):
            if P is INFINITY:
                return INFINITY
            u, v = P
            x = u - shift
            return (x % p, v % p) if p is not None else (x, v)

        return sw, fwd, back
    if isinstance(model, Montgomery):
        A, B = model.A, model.B
        a = _div(3 - A * A, 3 * B * B, p)
        b = _div(2 * A ** 3 - 9 * A, 27 * B ** 3, p)
        sw = ShortWeierstrass(a, b, p)
        third_A = _div(A, 3, p)

        def fwd(P):
            if P is INFINITY:
                return INFINITY
            x, y = P
            u = _div(x + third_A, B, p)
            v = _div(y, B, p)
            return (u, v)

        def back(P):
            if P is INFINITY:
                return INFINITY
            u, v = P
            x = B * u - third_A
            y = B * v
            return (x % p, y % p) if p is not None else (x, y)

        return sw, fwd, back
    if isinstance(model, TwistedEdwards):
        mont, to_mont, from_mont = montgomery_edwards_convert(model)
        sw, mfwd, mback = to_weierstrass(mont)

        def fwd(P):
            return mfwd(to_mont(P))

        def back(P):
            return from_mont(mback(P))

        return sw, fwd, back
    raise TypeError("unknown curve model %r" % (model,))


# ---------------------------------------------------------------------------
# curve literals (CLI syntax)


def _parse_rat(text):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def parse_curve(text):
    """Parse `w:a,b` | `m:A,B` | `e:a,d` with rational coefficients."""
    try:
        kind, rest = text.split(":", 1)
        parts = [_parse_rat(t) for t in rest.split(",")]
        if len(parts) != 2:
            raise ValueError
    except ValueError:
        raise ValueError("bad curve literal %r (want w:a,b | m:A,B | e:a,d)" % text)
    kind = kind.strip().lower()
    if kind == "w":
        return ShortWeierstrass(parts[0], parts[1])
    if kind == "m":
        return Montgomery(parts[0], parts[1])
    if kind == "e":
        return TwistedEdwards(parts[0], parts[1])
    raise ValueError("unknown curve shape %r" % kind)


def curve_literal(model):
    """Inverse of parse_curve for curves over Q."""
    if isinstance(model, ShortWeierstrass):
        return "w:%s,%s" % (model.a, model.b)
    if isinstance(model, Montgomery):
        return "m:%s,%s" % (model.A, model.B)
    if isinstance(model, TwistedEdwards):
        return "e:%s,%s" % (model.a, model.d)
    if isinstance(model, CubicCurve):
        return "c:%s,%s,%s" % (model.c2, model.c4, model.c6)
    raise TypeError("unknown curve model %r" % (model,))

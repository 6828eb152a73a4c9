import math
import random
from fractions import Fraction

import pytest

from stripcert.errors import (
    InvalidTarget,
    NotHomogeneous,
    PolyParseError,
    UnknownVariable,
    ZeroPolynomial,
)
from stripcert.polyring import (
    ONE,
    RatPoly,
    W,
    X,
    Y,
    Z,
    homogenize_bar,
    inf_norm,
    lift_F,
    parse_poly,
    polya_norm,
    render,
)

F36 = Y**4 - 2 * X * Y**2 + 2 * X**2  # the standard negative fixture


def random_poly(rng, max_deg=4, nterms=5, vars=("X", "Y")):
    p = RatPoly.zero()
    for _ in range(nterms):
        coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        exp = {v: rng.randint(0, max_deg) for v in vars}
        p = p + RatPoly.monomial(coeff, **{v.lower(): e for v, e in exp.items()})
    return p


def test_basic_arithmetic_and_zero_cleanup():
    p = X + Y
    q = X - Y
    assert p + q == 2 * X
    assert p * q == X**2 - Y**2
    assert (p - p).is_zero()
    assert RatPoly.zero().total_degree() == -1
    assert (X * 0).is_zero()


def test_profile_and_varset():
    prof = F36.profile()
    assert not prof.is_zero
    assert prof.d == 2 and prof.m == 4 and prof.total == 4
    assert F36.varset() == {"X", "Y"}
    zp = RatPoly.zero().profile()
    assert zp.is_zero and zp.total == 0


def test_homogenize_bar_example36():
    fbar = homogenize_bar(F36, 4)
    expected = Y**4 - 2 * X * Y**2 * Z**2 + 2 * X**2 * Z**4
    assert fbar == expected
    # substituting Z = 1 recovers f
    assert fbar.substitute("Z", ONE) == F36


def test_homogenize_bar_trivial_cases():
    assert homogenize_bar(ONE, 0) == ONE
    f = X * (1 - X)
    assert homogenize_bar(f, 2) == f * Z**2
    with pytest.raises(InvalidTarget):
        homogenize_bar(F36, 3)


def test_lift_F_example36():
    F = lift_F(F36)
    expected = (W + X) ** 2 * Y**4 - 2 * X * (W + X) * Y**2 * Z**2 + 2 * X**2 * Z**4
    assert F == expected


def test_lift_F_trivial():
    assert lift_F(ONE) == ONE
    assert lift_F(X) == X
    with pytest.raises(ZeroPolynomial):
        lift_F(RatPoly.zero())


def test_lift_F_round_trip_random():
    rng = random.Random(7)
    for _ in range(50):
        f = random_poly(rng)
        if f.is_zero():
            continue
        F = lift_F(f)
        back = F.substitute("W", ONE - X).substitute("Z", ONE)
        assert back == f


def test_lift_F_homogeneity_random():
    rng = random.Random(11)
    for _ in range(20):
        f = random_poly(rng, max_deg=3, nterms=4)
        if f.is_zero():
            continue
        F = lift_F(f)
        d = max(0, f.degree("X"))
        m = max(0, f.degree("Y"))
        lam = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        w0, x0, y0, z0 = (Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4))
        lhs = F.eval(W=lam * w0, X=lam * x0, Y=y0, Z=z0)
        assert lhs == lam**d * F.eval(W=w0, X=x0, Y=y0, Z=z0)
        lhs = F.eval(W=w0, X=x0, Y=lam * y0, Z=lam * z0)
        assert lhs == lam**m * F.eval(W=w0, X=x0, Y=y0, Z=z0)


def test_ring_axioms_at_random_points():
    rng = random.Random(13)
    for _ in range(30):
        f = random_poly(rng, 3, 4)
        g = random_poly(rng, 3, 4)
        h = random_poly(rng, 3, 4)
        pt = dict(X=Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                  Y=Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        lhs = (f * g + h).eval(**pt)
        assert lhs == f.eval(**pt) * g.eval(**pt) + h.eval(**pt)


def test_homogenize_eval_consistency_random():
    rng = random.Random(17)
    for _ in range(30):
        f = random_poly(rng)
        m = max(0, f.degree("Y")) + rng.randint(0, 2)
        fbar = homogenize_bar(f, m)
        x0 = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
        y0 = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
        assert fbar.eval(X=x0, Y=y0, Z=1) == f.eval(X=x0, Y=y0)


def test_inf_norm():
    assert inf_norm(F36 + 1) == 2
    assert inf_norm(RatPoly.zero()) == 0
    assert inf_norm(-7 * X**3 * Y) == 7


def test_polya_norm():
    g = W**2 + 4 * W * X + X**2
    assert polya_norm(g) == 2
    assert polya_norm((W + X) ** 3) == 1
    assert polya_norm(W - X) == 1
    with pytest.raises(NotHomogeneous):
        polya_norm(W**2 + X)


def test_render_canonical():
    assert render(F36) == "Y^4 - 2*X*Y^2 + 2*X^2"
    assert render(RatPoly.zero()) == "0"
    assert render(RatPoly.const(Fraction(1, 3))) == "1/3"
    assert render(-X) == "-X"
    assert render(X - X**2) == "-X^2 + X"
    assert render(W**2 + 4 * W * X + X**2) == "W^2 + 4*W*X + X^2"


def test_parse_examples():
    assert parse_poly("Y^4 - 2*X*Y^2 + 2*X^2") == F36
    assert parse_poly("1/3") == RatPoly.const(Fraction(1, 3))
    assert parse_poly("X*(1 - X)") == X - X**2
    assert parse_poly("-X^2") == -(X**2)
    assert parse_poly("(1-X)^2") == (1 - X) ** 2
    assert parse_poly(" - 2 * X * Y ^ 2 ") == -2 * X * Y**2


def test_parse_round_trip_random():
    rng = random.Random(23)
    for _ in range(60):
        f = random_poly(rng)
        assert parse_poly(render(f)) == f


def test_parse_errors():
    with pytest.raises(UnknownVariable):
        parse_poly("X + T")
    with pytest.raises(UnknownVariable):
        parse_poly("W * X", allowed=("X", "Y"))
    with pytest.raises(PolyParseError):
        parse_poly("X + ")
    with pytest.raises(PolyParseError):
        parse_poly("X ^ Y")
    with pytest.raises(PolyParseError):
        parse_poly("(X + 1")
    with pytest.raises(PolyParseError):
        parse_poly("1/0")
    # position is reported
    try:
        parse_poly("X + )")
    except PolyParseError as exc:
        assert exc.pos == 4


def test_substitution_is_exact():
    f = (X * Y - 1) ** 2
    g = f.substitute("Y", Y + Fraction(1, 2) * Z)
    assert g.eval(X=2, Y=3, Z=4) == f.eval(X=2, Y=3 + Fraction(1, 2) * 4)


def test_binomial_identity():
    n = 7
    p = (W + X) ** n
    for j in range(n + 1):
        assert p.coeff((j, n - j, 0, 0)) == math.comb(n, j)

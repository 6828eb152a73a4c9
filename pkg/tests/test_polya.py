import random
from fractions import Fraction

import pytest

from stripcert.errors import (
    DegreeTooSmall,
    InvalidBound,
    NotPositive,
    OddDegreeY,
    PolyaNotFound,
    ZeroPolynomial,
)
from stripcert.polyring import ONE, RatPoly, X, Y, Z, homogenize_bar, lift_F
from stripcert.polya import (
    BjCheck,
    FBulletBound,
    all_bj_nonneg,
    bound_N_positive,
    certify_f_bullet,
    check_hypotheses,
    effective_polya_floor,
    effective_polya_threshold,
    expand,
    find_N_incremental,
)

F36 = Y**4 - 2 * X * Y**2 + 2 * X**2
FPOS = (Y**2 - X) ** 2 + 1

# pinned regression constant: first successful exponent for (Y^2-X)^2 + 1
FPOS_MINIMAL_N = 0


def random_poly(rng, max_deg=3, nterms=4):
    p = RatPoly.zero()
    for _ in range(nterms):
        p = p + RatPoly.monomial(
            Fraction(rng.randint(-6, 6), rng.randint(1, 3)),
            x=rng.randint(0, max_deg),
            y=rng.randint(0, max_deg),
        )
    return p


def test_expand_example36_bN1_formula():
    for N in range(11):
        e = expand(F36, N)
        expected = Y**2 * ((N + 2) * Y**2 - 2 * Z**2)
        assert e.b[N + 1] == expected


def test_expand_endpoint_identities():
    fbar = homogenize_bar(F36, 4)
    for N in (0, 1, 3, 7):
        e = expand(F36, N)
        assert e.b[0] == fbar.substitute("X", ONE)
        assert e.b[N + e.d] == fbar.substitute("X", RatPoly.zero())


def test_expand_N0_is_F_coefficients():
    e = expand(F36, 0)
    F = lift_F(F36)
    for j, poly in enumerate(e.b):
        expected = RatPoly.zero()
        for (w, x, y, z), c in F.items():
            if w == j:
                expected = expected + RatPoly.monomial(c, y=y, z=z)
        assert poly == expected


def test_expand_errors():
    with pytest.raises(ZeroPolynomial):
        expand(RatPoly.zero(), 3)
    with pytest.raises(InvalidBound):
        expand(F36, -1)


def test_all_bj_nonneg_example36():
    check = all_bj_nonneg(expand(F36, 0))
    assert check == BjCheck(False, 1, 2 * Y**4 - 2 * Y**2)


def test_all_bj_nonneg_constant():
    check = all_bj_nonneg(expand(ONE, 5))
    assert check.ok
    e = expand(ONE, 5)
    import math

    assert [p.constant_value() for p in e.b] == [math.comb(5, j) for j in range(6)]


def test_all_bj_nonneg_rejects_odd_m():
    f = X * Y + Y  # deg_Y = 1
    with pytest.raises(OddDegreeY):
        all_bj_nonneg(expand(f, 2))


def test_find_N_examples():
    assert find_N_incremental(ONE, 10)[0] == 0
    N, e = find_N_incremental(FPOS, 50)
    assert N == FPOS_MINIMAL_N
    assert all_bj_nonneg(e).ok


def test_find_N_notfound_example36():
    with pytest.raises(PolyaNotFound) as err:
        find_N_incremental(F36, 50)
    trace = err.value.trace
    assert len(trace) == 51
    assert all(j == N + 1 for N, j in trace)
    with pytest.raises(InvalidBound):
        find_N_incremental(F36, -2)


def test_expansion_identity_random_points():
    rng = random.Random(31)
    for _ in range(40):
        f = random_poly(rng)
        if f.is_zero():
            continue
        N = rng.randint(0, 8)
        e = expand(f, N)
        F = lift_F(f)
        w0, x0, y0, z0 = (Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(4))
        lhs = sum(
            (e.b[j].eval(Y=y0, Z=z0)) * w0**j * x0 ** (N + e.d - j)
            for j in range(N + e.d + 1)
        )
        rhs = (w0 + x0) ** N * F.eval(W=w0, X=x0, Y=y0, Z=z0)
        assert lhs == rhs


def test_pascal_recurrence_exact():
    rng = random.Random(37)
    for _ in range(25):
        f = random_poly(rng)
        if f.is_zero():
            continue
        N = rng.randint(0, 6)
        e0, e1 = expand(f, N), expand(f, N + 1)
        for j in range(N + 1 + e0.d + 1):
            prev_j = e0.b[j] if j < len(e0.b) else RatPoly.zero()
            prev_jm1 = e0.b[j - 1] if 0 <= j - 1 < len(e0.b) else RatPoly.zero()
            assert e1.b[j] == prev_j + prev_jm1


def test_monotonicity_on_success():
    # once all b_j are nonnegative, they stay nonnegative for larger N
    for f in (FPOS, ONE + X * (1 - X) * Y**2):
        N, _ = find_N_incremental(f, 64)
        for extra in (1, 2, 3):
            assert all_bj_nonneg(expand(f, N + extra)).ok


def test_bound_N_positive_spec_arithmetic():
    fb = FBulletBound(Fraction(1, 5), "user-supplied", 0)
    assert bound_N_positive(FPOS, fb) == 149
    check = all_bj_nonneg(expand(FPOS, 149))
    assert check.ok


def test_bound_N_zero_when_bound_is_generous():
    f = X**2 + Y**2 + 1  # d=2, m=2, fully 2-ic
    fb = FBulletBound(Fraction(5), "user-supplied", 0)
    assert bound_N_positive(f, fb) == 0


def test_bound_N_positive_errors():
    with pytest.raises(DegreeTooSmall):
        bound_N_positive(X * Y**2 + 1 + Y**2, FBulletBound(Fraction(1), "user-supplied", 0))
    with pytest.raises(NotPositive):
        bound_N_positive(FPOS, FBulletBound(Fraction(0), "user-supplied", 0))


def test_bound_N_sufficiency_random_family():
    rng = random.Random(42)
    for _ in range(20):
        a = Fraction(rng.randint(1, 3))
        b = Fraction(rng.randint(-2, 2))
        c = Fraction(rng.randint(1, 3))
        f = a * (Y * (X + 1) - b) ** 2 + c
        fb = certify_f_bullet(f)
        assert fb is not None and fb.lower > 0
        N = bound_N_positive(f, fb)
        assert all_bj_nonneg(expand(f, N)).ok


def test_certify_f_bullet_examples():
    assert certify_f_bullet(ONE).lower == 1
    fb = certify_f_bullet(FPOS)
    assert fb is not None
    assert 0 < fb.lower <= Fraction(1, 5)
    assert certify_f_bullet(F36) is None  # bar f vanishes at (0, 0, 1)


def test_certify_f_bullet_soundness_sampling():
    fb = certify_f_bullet(FPOS)
    fbar = homogenize_bar(FPOS, 4)
    rng = random.Random(55)
    for _ in range(10**4):
        x0 = Fraction(rng.randint(0, 64), 64)
        t = Fraction(rng.randint(-200, 200), 100)
        y0 = (1 - t * t) / (1 + t * t)
        z0 = 2 * t / (1 + t * t)  # (y0, z0) is exactly on the unit circle
        assert fbar.eval(X=x0, Y=y0, Z=z0) >= fb.lower


def test_check_hypotheses_examples():
    rep = check_hypotheses(FPOS)
    assert rep.fully_mic and rep.m_even
    assert rep.boundary_zeros == ()
    assert rep.dfdX_nonzero_at_zeros

    rep = check_hypotheses(X + Y**2)
    assert len(rep.boundary_zeros) == 1
    side, w = rep.boundary_zeros[0]
    assert side == 0 and w.interval[0] < 0 <= w.interval[1]
    assert rep.dfdX_nonzero_at_zeros  # df/dX = 1

    rep = check_hypotheses(F36)
    assert rep.fully_mic
    assert len(rep.boundary_zeros) == 1
    assert not rep.dfdX_nonzero_at_zeros  # df/dX vanishes at (0,0)


def test_check_hypotheses_not_fully_mic():
    rep = check_hypotheses(X * Y**2 + 1)
    assert not rep.fully_mic  # leading Y-coefficient X vanishes at 0


def test_effective_polya_helpers():
    # threshold matches the bound_N_positive arithmetic shape at eps=0
    thr = effective_polya_threshold(3, Fraction(2), Fraction(1, 2))
    assert thr == Fraction(3 * 2 * 2, 1) / Fraction(1)  # (d-1) d ||g|| / (2 lam)
    floor = effective_polya_floor(2, 2, 1, Fraction(1, 2), Fraction(1, 3))
    # N! (N+d)^d / (j! (N+d-j)!) eps lam = 2*16/(1*6) * 1/6
    assert floor == Fraction(2 * 16, 6) * Fraction(1, 6)
    with pytest.raises(NotPositive):
        effective_polya_threshold(3, Fraction(1), Fraction(0))

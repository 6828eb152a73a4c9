import random
from fractions import Fraction

import pytest

from stripcert.errors import ZeroPolynomial
from stripcert.polyring import ONE, RatPoly, X, Y, parse_poly
from stripcert.realroots import (
    RootWitness,
    count_roots_in,
    count_roots_closed_01,
    identify_rational_root,
    is_nonneg_on_01,
    is_nonneg_on_R,
    isolate_roots,
    leading_coeff,
    minimize_poly_01,
    minimize_ratio_01,
    refine_witness,
    root_bound,
    sign_at_root,
    squarefree_decompose,
    sturm_chain,
    to_dense,
)


def linear_product(roots, var=X):
    p = ONE
    for r in roots:
        p = p * (var - RatPoly.const(Fraction(r)))
    return p


def test_count_roots_examples():
    assert count_roots_in(X**2 + 1, -10, 10) == 0
    assert count_roots_in(X * (X - 1), Fraction(-1, 2), Fraction(3, 2)) == 2
    p = (X - Fraction(1, 3)) ** 2 * (X + 2)
    # Sturm counts distinct roots; only 1/3 lies in (0, 1]
    assert count_roots_in(p, 0, 1) == 1
    with pytest.raises(ZeroPolynomial):
        count_roots_in(RatPoly.zero(), 0, 1)


def test_count_roots_half_open_convention():
    p = X * (X - 1)
    assert count_roots_in(p, 0, 1) == 1  # root 1 counted, root 0 excluded
    assert count_roots_in(p, -1, 0) == 1  # root 0 counted
    assert count_roots_closed_01(p) == 2


def test_sturm_chain_shape():
    chain = sturm_chain(X**3 - X).sequence
    assert chain[0] == X**3 - X
    assert chain[1] == 3 * X**2 - 1
    degs = [max(0, q.total_degree()) for q in chain]
    assert degs == sorted(degs, reverse=True)
    assert chain[-1].is_constant()


def test_sturm_oracle_random_factored():
    rng = random.Random(101)
    for _ in range(200):
        nroots = rng.randint(1, 8)
        roots = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(nroots)]
        p = linear_product(roots)
        a = Fraction(rng.randint(-9, 3), rng.randint(1, 3))
        b = a + Fraction(rng.randint(1, 12), rng.randint(1, 3))
        expected = len({r for r in roots if a < r <= b})
        assert count_roots_in(p, a, b) == expected


def test_squarefree_examples():
    dec = squarefree_decompose(X**2 * (X - 1))
    assert set(dec) == {(X, 2), (X - 1, 1)}
    assert squarefree_decompose(X**2 + 1) == [(X**2 + 1, 1)]
    assert squarefree_decompose((X**2 - 2) ** 2) == [(X**2 - 2, 2)]
    with pytest.raises(ZeroPolynomial):
        squarefree_decompose(RatPoly.zero())


def test_squarefree_reconstruction_random():
    rng = random.Random(5)
    for _ in range(60):
        p = ONE
        for _ in range(rng.randint(1, 4)):
            factor = linear_product(
                [Fraction(rng.randint(-3, 3), rng.randint(1, 2))]
            ) if rng.random() < 0.7 else X**2 + rng.randint(1, 4)
            p = p * factor ** rng.randint(1, 3)
        p = p.scale(Fraction(rng.randint(1, 5), rng.randint(1, 3)))
        rebuilt = RatPoly.const(leading_coeff(p))
        for factor, mult in squarefree_decompose(p):
            rebuilt = rebuilt * factor**mult
        assert rebuilt == p


def test_isolate_roots_examples():
    ws = isolate_roots(X**2 - 2, 0, 2)
    assert len(ws) == 1 and ws[0].multiplicity == 1
    lo, hi = ws[0].interval
    assert lo < Fraction(141421356, 100000000) < hi  # sqrt(2) inside

    ws = isolate_roots(X**3, -1, 1)
    assert len(ws) == 1 and ws[0].multiplicity == 3
    assert ws[0].interval[0] < 0 <= ws[0].interval[1]

    ws = isolate_roots((X - Fraction(1, 4)) * (X - Fraction(3, 4)), 0, 1)
    assert len(ws) == 2
    (a1, b1), (a2, b2) = ws[0].interval, ws[1].interval
    assert b1 <= a2  # disjoint


def test_witness_brackets_sign_change_under_refinement():
    rng = random.Random(19)
    for _ in range(20):
        roots = sorted(
            {Fraction(rng.randint(-5, 5), rng.randint(1, 6)) for _ in range(rng.randint(1, 4))}
        )
        p = linear_product(list(roots))
        for w in isolate_roots(p, -10, 10):
            refined = refine_witness(w, rounds=50)
            dense, _ = to_dense(refined.defining)
            a, b = refined.interval
            va = sum(c * a**i for i, c in enumerate(dense))
            vb = sum(c * b**i for i, c in enumerate(dense))
            assert va != 0 and (vb == 0 or va * vb < 0)


def test_is_nonneg_on_R_examples():
    assert not is_nonneg_on_R(2 * Y**4 - 2 * Y**2)  # negative at 1/2
    assert is_nonneg_on_R(Y**2 + 1)
    assert not is_nonneg_on_R(Y**3)
    assert is_nonneg_on_R(RatPoly.zero())
    assert is_nonneg_on_R((Y**2 - 2) ** 2)
    assert not is_nonneg_on_R(-(Y**2) - 1)


def test_is_nonneg_on_R_against_sampling():
    rng = random.Random(77)
    for _ in range(200):
        p = RatPoly.zero()
        for _ in range(rng.randint(1, 5)):
            p = p + RatPoly.monomial(
                Fraction(rng.randint(-8, 8), rng.randint(1, 3)), x=rng.randint(0, 8)
            )
        if p.is_zero():
            continue
        verdict = is_nonneg_on_R(p)
        dense, _ = to_dense(p)
        sampled_negative = False
        for k in range(-500, 501):
            x = Fraction(k, 5)
            if sum(c * x**i for i, c in enumerate(dense)) < 0:
                sampled_negative = True
                break
        # sampling can only refute, never affirm
        if sampled_negative:
            assert not verdict


def test_is_nonneg_on_01_examples():
    assert is_nonneg_on_01(X * (1 - X))
    assert not is_nonneg_on_01(X - Fraction(1, 2))
    assert is_nonneg_on_01((X - Fraction(1, 2)) ** 2)
    assert is_nonneg_on_01(RatPoly.zero())
    assert not is_nonneg_on_01(-X * (1 - X))
    assert is_nonneg_on_01(2 * X**2 - 2 * X + 1)
    assert not is_nonneg_on_01((X - Fraction(1, 4)) * (X - Fraction(3, 4)))


def test_identify_rational_root():
    p = (X - Fraction(22, 7)) * (X**2 - 2)
    ws = isolate_roots(p, 0, 10)
    roots = [identify_rational_root(w) for w in ws]
    assert Fraction(22, 7) in roots
    assert roots.count(None) == 1  # sqrt(2) stays unidentified


def test_sign_at_root():
    w = isolate_roots(X**2 - 2, 0, 2)[0]  # sqrt(2)
    assert sign_at_root(X - 1, w) == 1  # sqrt(2) - 1 > 0
    assert sign_at_root(X - 2, w) == -1
    assert sign_at_root(X**2 - 2, w) == 0
    assert sign_at_root((X**2 - 2) * (X + 5), w) == 0


def test_minimize_poly_01():
    assert minimize_poly_01(2 * X**2 - 2 * X + 1) == (Fraction(1, 2), Fraction(1, 2))
    assert minimize_poly_01(X) == (0, 0)
    assert minimize_poly_01(ONE - X) == (0, 1)
    # minimum of (x^2-2)^2 on [0,1] is at x=1, value 1
    assert minimize_poly_01((X**2 - 2) ** 2) == (1, 1)
    # irrational interior argmin: x^2 - x^4 maximized at 1/sqrt(2);
    # minimizing its negation must report None
    assert minimize_poly_01(X**4 - X**2) is None


def test_minimize_ratio_01():
    # min of (2x^2-2x+1)/(x(1-x)) candidates: interior critical point 1/2
    num = 2 * X**2 - 2 * X + 1
    den = X * (1 - X) + RatPoly.const(Fraction(1, 100))
    got = minimize_ratio_01(num, den)
    assert got is not None
    val, arg = got
    assert arg == Fraction(1, 2)
    assert val == Fraction(1, 2) / (Fraction(1, 4) + Fraction(1, 100))


def test_root_bound_contains_all_roots():
    p = linear_product([Fraction(5), Fraction(-7, 2), Fraction(1, 3)])
    b = root_bound(p)
    assert b > 7


def test_count_matches_isolation():
    rng = random.Random(3)
    for _ in range(30):
        roots = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(1, 5))]
        p = linear_product(roots)
        ws = isolate_roots(p, -10, 10)
        assert len(ws) == len(set(roots))
        assert sum(w.multiplicity for w in ws) == len(roots)

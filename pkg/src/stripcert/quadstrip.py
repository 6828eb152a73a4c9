"""Decomposition pipeline for deg_Y f <= 2.

After homogenizing to degree 2 in (Y, Z), such an f becomes a quadratic
form

    bar f = f2(X) Y^2 + f1(X) Y Z + f0(X) Z^2

nonnegative on [0,1] x (R^2 minus the origin).  Within the cone of such
forms with degree caps (d, e), d = e = deg_X f by default, the extreme rays
are exactly the terms r(X) (p(X) Y + q(X) Z)^2 where gcd(p, q) = 1, r is
nonnegative on [0,1] with all deg r roots inside [0,1], and
deg r = min(d - 2 deg p, e - 2 deg q).  This module decomposes a member of
the cone into a finite sum of such terms by a zero-driven recursion:

* a common zero of f2 and f0 at an endpoint divides the linear factor out
  of all three coefficients (cone shrinks by one on each side);
* a square factor of f2 (or f0) whose roots all lie in [0,1] divides out,
  taking one copy out of f1 (cone shrinks by two on one side);
* an interior touching point of the discriminant moves into the Z^2 slot
  by the substitution Y -> Y + (y0/z0) Z and then divides out;
* a simple touching point on the boundary is resolved by peeling the
  largest multiple of the opposite square that keeps the remainder in the
  cone, which creates a divisible zero;
* a strictly positive form peels a positive multiple of Z^2 (or Y^2) until
  the remainder touches zero.

Exactness is guaranteed when the touching points involved are rational;
otherwise the pipeline switches to numeric mode (float-refined rational
approximations with quotient-only division) and the final certificate
carries its true residual.

The certificate assembly follows the classical regrouping: each ray factor
r decomposes on [0,1] as t + uX + v(1-X) + wX(1-X) with SOS parts, giving

    sigma0 = sum (t + u X^2 + v (1-X)^2) (pY + q)^2
    sigma1 = sum (u + v + w) (pY + q)^2

with both degrees bounded by deg_X f + 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import (
    InternalInvariant,
    NotNonnegative,
    NumericRequired,
    ParityMismatch,
)
from .polyring import ONE, RatPoly, X, Y, Z, homogenize_bar, render
from .realroots import (
    RootWitness,
    count_roots_closed_01,
    identify_rational_root,
    is_nonneg_on_01,
    isolate_roots,
    leading_coeff,
    minimize_poly_01,
    minimize_ratio_01,
    poly_divexact,
    poly_divmod,
    poly_gcd,
    refine_witness,
    squarefree_decompose,
    to_dense,
)
from .soscert import Certificate, WeightedSquare, _finish, lukacs_01

ONE_MINUS_X = ONE - X
_ZERO = RatPoly.zero()


@dataclass(frozen=True)
class QuadForm:
    """bar f = f2 Y^2 + f1 Y Z + f0 Z^2 with the cone's degree caps."""

    f2: RatPoly
    f1: RatPoly
    f0: RatPoly
    d: int
    e: int

    def __post_init__(self):
        for poly, cap, name in (
            (self.f2, self.d, "f2"),
            (self.f1, (self.d + self.e) // 2, "f1"),
            (self.f0, self.e, "f0"),
        ):
            if poly.varset() - {"X"}:
                raise ValueError(f"{name} must be univariate in X")
            if poly.total_degree() > cap:
                raise ValueError(f"deg {name} exceeds the cap {cap}")

    def value(self) -> RatPoly:
        return self.f2 * Y**2 + self.f1 * Y * Z + self.f0 * Z**2

    def discriminant(self) -> RatPoly:
        return self.f1 * self.f1 - 4 * self.f2 * self.f0


@dataclass(frozen=True)
class ExtremeRayTerm:
    """One term r(X) (p(X) Y + q(X) Z)^2."""

    r: RatPoly
    p: RatPoly
    q: RatPoly

    def value(self) -> RatPoly:
        linear = self.p * Y + self.q * Z
        return self.r * linear * linear


@dataclass(frozen=True)
class StripZero:
    """A zero of bar f over [0,1], up to (Y,Z)-scaling.

    ``x`` is the abscissa (exact rational or an isolation witness);
    ``kind`` is "ratio" (z != 0 with y/z in ``ratio``), "z_zero" (direction
    (1,0), a root of f2), or "all" (the whole fiber vanishes)."""

    x: Union[Fraction, RootWitness]
    kind: str
    ratio: Optional[Fraction] = None

    @property
    def rational(self) -> bool:
        return isinstance(self.x, Fraction)


@dataclass(frozen=True)
class StripZeroReport:
    non_isolated: bool
    zeros: Tuple[StripZero, ...]


def quadform_from_poly(f: RatPoly) -> QuadForm:
    """The quadratic form of f with the default caps d = e = deg_X f;
    homogenization is always to Y-degree 2, also when deg_Y f < 2."""
    if f.degree("Y") > 2:
        raise ValueError("quadform_from_poly needs deg_Y f <= 2")
    d = max(0, f.degree("X"))
    fbar = homogenize_bar(f, 2)
    f2 = fbar.coeff_in_var("Y", 2).substitute("Z", ONE)
    f1 = fbar.coeff_in_var("Y", 1).coeff_in_var("Z", 1)
    f0 = fbar.coeff_in_var("Y", 0).coeff_in_var("Z", 2)
    return QuadForm(f2, f1, f0, d, d)


def membership_check(qf: QuadForm) -> bool:
    """Exact PSD test on every fiber: f2 >= 0, f0 >= 0 and
    f1^2 - 4 f2 f0 <= 0 on [0,1]."""
    return (
        is_nonneg_on_01(qf.f2)
        and is_nonneg_on_01(qf.f0)
        and is_nonneg_on_01(-qf.discriminant())
    )


def find_strip_zeros(qf: QuadForm) -> StripZeroReport:
    """All zeros of bar f on [0,1] x (R^2 minus 0), up to scaling.

    Every zero sits over a root of the discriminant; the z = 0 zeros are
    the roots of f2.  An identically vanishing discriminant means a curve
    of zeros, reported through the non_isolated flag."""
    disc = qf.discriminant()
    if qf.value().is_zero() or disc.is_zero():
        return StripZeroReport(True, ())
    zeros: List[StripZero] = []

    def classify(x0: Fraction):
        v2 = qf.f2.eval(X=x0)
        v0 = qf.f0.eval(X=x0)
        if v2 == 0 and v0 == 0:
            zeros.append(StripZero(x0, "all"))
        elif v2 == 0:
            zeros.append(StripZero(x0, "z_zero"))
        else:
            zeros.append(StripZero(x0, "ratio", -qf.f1.eval(X=x0) / (2 * v2)))

    if disc.eval(X=0) == 0:
        classify(Fraction(0))
    for w in isolate_roots(disc, 0, 1):
        root = identify_rational_root(w)
        if root is not None:
            classify(root)
        else:
            zeros.append(StripZero(refine_witness(w, 4), "ratio"))
    return StripZeroReport(False, tuple(zeros))


# ---------------------------------------------------------------------------
# the extraction recursion
# ---------------------------------------------------------------------------


class _Ctx:
    """Exactness flag and step budget shared across the recursion."""

    def __init__(self, mode: str, budget: int):
        self.mode = mode  # "auto" | "exact" | "numeric"
        self.exact = mode != "numeric"
        self.steps = 0
        self.budget = budget

    def spend(self):
        self.steps += 1
        if self.steps > self.budget:
            raise InternalInvariant("extraction recursion exceeded its budget")

    def go_numeric(self, reason: str):
        if self.mode == "exact":
            raise NumericRequired(reason)
        self.exact = False


def _ev(p: RatPoly, x) -> Fraction:
    return p.eval(X=x)


def _shift_terms(terms, beta: Fraction):
    """Undo Y -> Y + beta Z: q becomes q - beta p (gcd is preserved)."""
    if beta == 0:
        return terms
    return [ExtremeRayTerm(t.r, t.p, t.q - t.p.scale(beta)) for t in terms]


def _swap_terms(terms):
    return [ExtremeRayTerm(t.r, t.q, t.p) for t in terms]


def _attach_factor_to_q(terms, factor: RatPoly):
    """Map terms back through Z -> factor * Z: q picks up the factor; when
    the factor divides p the square moves into r instead, restoring
    coprimality."""
    out = []
    for t in terms:
        if not t.p.is_zero():
            quo, rem = poly_divmod(t.p, factor)
            if rem.is_zero():
                out.append(ExtremeRayTerm(t.r * factor * factor, quo, t.q))
                continue
        out.append(ExtremeRayTerm(t.r, t.p, t.q * factor))
    return out


def _bernstein_coeffs_01(r: RatPoly, n: int) -> List[Fraction]:
    """Coefficients of r in the degree-n Bernstein basis on [0,1]."""
    dense, _ = to_dense(r)
    out = []
    for i in range(n + 1):
        acc = Fraction(0)
        for j, a in enumerate(dense):
            if j <= i and i - j <= n - j:
                acc += a * math.comb(n - j, i - j)
        out.append(acc / math.comb(n, i))
    return out


def _bernstein_pieces(beta: List[Fraction], n: int) -> List[RatPoly]:
    return [
        (X**i * ONE_MINUS_X ** (n - i)).scale(b * math.comb(n, i))
        for i, b in enumerate(beta)
        if b > 0
    ]


def _is_fully_rooted_01(r: RatPoly) -> bool:
    """All deg r roots (with multiplicity) are real and lie in [0,1]."""
    if r.is_constant():
        return True
    for factor, _ in squarefree_decompose(r):
        if count_roots_closed_01(factor) != factor.total_degree():
            return False
    return True


def _split_fully_rooted(r: RatPoly, cap: int, ctx: _Ctx) -> List[RatPoly]:
    """Write r >= 0 on [0,1] (deg r <= cap) as a sum of polynomials of
    degree exactly cap, each nonnegative on [0,1] with all roots there:
    the admissible coefficients of single-direction ray terms.

    Roots inside [0,1] divide out first; the Bernstein basis of degree cap
    handles the strictly positive remainder, with an exact minimum peel
    when some Bernstein coefficient is negative."""
    if r.is_zero():
        return []
    if not is_nonneg_on_01(r):
        raise InternalInvariant(f"split of a negative piece: {render(r)}")
    if r.total_degree() > cap:
        raise InternalInvariant("piece degree exceeds the cone cap")
    ctx.spend()
    if cap == 0:
        return [r]
    if r.total_degree() == cap and _is_fully_rooted_01(r):
        return [r]
    beta = _bernstein_coeffs_01(r, cap)
    if all(b >= 0 for b in beta):
        return _bernstein_pieces(beta, cap)
    if _ev(r, 0) == 0:
        inner = _split_fully_rooted(poly_divexact(r, X), cap - 1, ctx)
        return [piece * X for piece in inner]
    if _ev(r, 1) == 0:
        inner = _split_fully_rooted(
            poly_divexact(r, X - ONE).scale(-1), cap - 1, ctx
        )
        return [piece * ONE_MINUS_X for piece in inner]
    # interior rational roots have even multiplicity: divide their squares out
    for w in isolate_roots(r, 0, 1):
        root = identify_rational_root(w)
        if root is None or root == 1:
            continue
        if w.multiplicity % 2:
            raise InternalInvariant("odd interior multiplicity survived the sign check")
        factor = (X - RatPoly.const(root)) ** w.multiplicity
        inner = _split_fully_rooted(
            poly_divexact(r, factor), cap - w.multiplicity, ctx
        )
        return [piece * factor for piece in inner]
    # square factors fully rooted in [0,1] (conjugate irrational pairs)
    for factor, mult in squarefree_decompose(r):
        if mult >= 2 and not factor.is_constant() and _is_fully_rooted_01(factor):
            power = factor ** (2 * (mult // 2))
            inner = _split_fully_rooted(
                poly_divexact(r, power), cap - power.total_degree(), ctx
            )
            return [piece * power for piece in inner]
    # strictly positive leftover: peel its exact minimum, creating a root
    got = minimize_poly_01(r)
    if got is not None and got[0] > 0:
        mu = got[0]
        rest = r - RatPoly.const(mu)
        head = _split_fully_rooted(RatPoly.const(mu), cap, ctx)
        if rest.is_zero():
            return head
        return head + _split_fully_rooted(rest, cap, ctx)
    ctx.go_numeric("irrational minimum while splitting a coefficient polynomial")
    return _split_numeric(r, cap, ctx)


def _split_numeric(r: RatPoly, cap: int, ctx: _Ctx) -> List[RatPoly]:
    """Fallback splitter: peel slightly less than the sampled minimum, then
    accept a Bernstein elevation of up to two degrees (which stays inside
    the certificate's degree bound, at the price of the per-term degree
    equation)."""
    dense, _ = to_dense(r)
    samples = [Fraction(k, 256) for k in range(257)]
    mu = min(sum(c * x**i for i, c in enumerate(dense)) for x in samples)
    candidates = []
    if mu > 0:
        peel = mu * Fraction(255, 256)
        candidates.append((RatPoly.const(peel), r - RatPoly.const(peel)))
    candidates.append((None, r))
    for head_poly, rest in candidates:
        for extra in (0, 1, 2):
            beta = _bernstein_coeffs_01(rest, cap + extra)
            if all(b >= 0 for b in beta):
                head = (
                    _split_fully_rooted(head_poly, cap, ctx) if head_poly else []
                )
                return head + _bernstein_pieces(beta, cap + extra)
    raise NumericRequired("could not split a coefficient polynomial within the caps")


def _sqrt_of_even_powers(p: RatPoly) -> Tuple[Fraction, RatPoly]:
    """p = c * s^2 with s monic; raises when a multiplicity is odd."""
    s = ONE
    for factor, mult in squarefree_decompose(p):
        if mult % 2:
            raise InternalInvariant("expected even multiplicities")
        s = s * factor ** (mult // 2)
    return leading_coeff(p), s


def _perfect_square_terms(f2, f1, f0, d, e, ctx) -> List[ExtremeRayTerm]:
    """Identically vanishing discriminant: bar f = r (p Y + q Z)^2 with all
    data rational; split r into admissible pieces."""
    r0 = poly_gcd(f2, f0)
    A = f2 if r0.is_constant() else poly_divexact(f2, r0)
    B = f0 if r0.is_constant() else poly_divexact(f0, r0)
    cA, p_hat = _sqrt_of_even_powers(A)
    cB, q_hat = _sqrt_of_even_powers(B)
    s_poly = poly_divexact(f1, (r0 * p_hat * q_hat).scale(2))
    if not s_poly.is_constant():
        raise InternalInvariant("perfect-square structure mismatch")
    s = s_poly.constant_value()
    if s * s != cA * cB:
        raise InternalInvariant("perfect-square scaling mismatch")
    r = r0.scale(cA)
    p = p_hat
    q = q_hat.scale(s / cA)
    cap = min(d - 2 * max(0, p.total_degree()), e - 2 * max(0, q.total_degree()))
    return [ExtremeRayTerm(piece, p, q) for piece in _split_fully_rooted(r, cap, ctx)]


def _approx_root(w: RootWitness, ctx: _Ctx) -> Fraction:
    ctx.go_numeric("irrational touching point")
    refined = refine_witness(w, 80)
    mid = (refined.interval[0] + refined.interval[1]) / 2
    return mid.limit_denominator(10**15)


def _div_or_snap(p: RatPoly, q: RatPoly, ctx: _Ctx) -> RatPoly:
    quo, rem = poly_divmod(p, q)
    if not rem.is_zero() and ctx.exact:
        raise InternalInvariant("inexact division on the exact path")
    return quo


def _square_divisor_candidates(fa: RatPoly):
    """Factors g with g^2 | fa whose roots all lie in [0,1]; rational
    endpoint and interior roots come first, then square-free blocks that
    cover conjugate irrational pairs."""
    out = []
    for x0 in (Fraction(0), Fraction(1)):
        factor = X if x0 == 0 else X - ONE
        quo, rem = poly_divmod(fa, factor * factor)
        if rem.is_zero():
            out.append(factor if x0 == 0 else ONE_MINUS_X.scale(-1))
    for factor, mult in squarefree_decompose(fa):
        if mult >= 2 and not factor.is_constant() and _is_fully_rooted_01(factor):
            out.append(factor)
    return out


def _decompose(f2, f1, f0, d, e, ctx) -> List[ExtremeRayTerm]:
    ctx.spend()
    if f2.is_zero() and f1.is_zero() and f0.is_zero():
        return []
    if d < 0 or e < 0:
        raise InternalInvariant("cone caps went negative")

    # single-coefficient forms
    if f2.is_zero() and f1.is_zero():
        return [ExtremeRayTerm(piece, _ZERO, ONE)
                for piece in _split_fully_rooted(f0, e, ctx)]
    if f0.is_zero() and f1.is_zero():
        return [ExtremeRayTerm(piece, ONE, _ZERO)
                for piece in _split_fully_rooted(f2, d, ctx)]
    if f2.is_zero() or f0.is_zero():
        # PSD on every fiber forces f1 = 0 alongside a vanishing corner
        raise InternalInvariant("form with a vanishing corner but nonzero f1")

    disc = f1 * f1 - 4 * f2 * f0
    if disc.is_zero():
        return _perfect_square_terms(f2, f1, f0, d, e, ctx)

    # common zero of f2 and f0 at an endpoint: divide it out of all three
    for x0, factor, flip in (
        (Fraction(0), X, False),
        (Fraction(1), X - ONE, True),
    ):
        if _ev(f2, x0) == 0 and _ev(f0, x0) == 0:
            if _ev(f1, x0) != 0 and ctx.exact:
                raise InternalInvariant("PSD violated at a common endpoint zero")
            g2 = _div_or_snap(f2, factor, ctx)
            g1 = _div_or_snap(f1, factor, ctx)
            g0 = _div_or_snap(f0, factor, ctx)
            if flip:
                g2, g1, g0 = g2.scale(-1), g1.scale(-1), g0.scale(-1)
            inner = _decompose(g2, g1, g0, d - 1, e - 1, ctx)
            lin = ONE_MINUS_X if flip else X
            return [ExtremeRayTerm(t.r * lin, t.p, t.q) for t in inner]

    # square divisors of f2 (then of f0, via the Y <-> Z swap)
    for fa, fb, da, db, swapped in (
        (f2, f0, d, e, False),
        (f0, f2, e, d, True),
    ):
        for g in _square_divisor_candidates(fa):
            ga = _div_or_snap(fa, g * g, ctx)
            quo1, rem1 = poly_divmod(f1, g)
            if not rem1.is_zero():
                if ctx.exact:
                    raise InternalInvariant("PSD forces f1 to vanish with f2/f0")
                # numeric noise: keep the quotient
            inner = _decompose(ga, quo1, fb, da - 2 * g.total_degree(), db, ctx)
            terms = []
            for t in inner:
                if not t.q.is_zero():
                    quo, rem = poly_divmod(t.q, g)
                    if rem.is_zero():
                        terms.append(ExtremeRayTerm(t.r * g * g, t.p, quo))
                        continue
                terms.append(ExtremeRayTerm(t.r, t.p * g, t.q))
            return _swap_terms(terms) if swapped else terms

    # interior touching points of the discriminant (f2 > 0 there)
    terms = _try_interior_touch(f2, f1, f0, d, e, disc, ctx)
    if terms is not None:
        return terms

    # endpoint zeros: peel or shift
    terms = _try_endpoint(f2, f1, f0, d, e, disc, ctx)
    if terms is not None:
        return terms

    # strictly positive form: peel the largest admissible square multiple
    return _peel_positive(f2, f1, f0, d, e, disc, ctx)


def _try_interior_touch(f2, f1, f0, d, e, disc, ctx) -> Optional[List[ExtremeRayTerm]]:
    """A discriminant root inside (0,1): the zero direction has z != 0
    because interior f2 roots were divided out already; shift it into the
    Z^2 slot and divide its square out."""
    interior = []
    for w in isolate_roots(disc, 0, 1):
        root = identify_rational_root(w)
        if root is not None and not 0 < root < 1:
            continue
        interior.append((w, root))
    if not interior:
        return None
    if d > e:
        inner = _try_interior_touch(f0, f1, f2, e, d, disc, ctx)
        return _swap_terms(inner) if inner is not None else None
    interior.sort(
        key=lambda it: (it[1] is None, it[1] if it[1] is not None else it[0].interval[0])
    )
    w, root = interior[0]
    if root is None:
        root = _approx_root(w, ctx)
    v2 = _ev(f2, root)
    if v2 == 0:
        # an exact interior f2 root would have divided out; on the numeric
        # path nudge off the root
        if ctx.exact:
            raise InternalInvariant("undivided interior root of f2")
        root = root + Fraction(1, 10**12)
        v2 = _ev(f2, root)
    beta = -_ev(f1, root) / (2 * v2)
    h1 = f1 + f2.scale(2 * beta)
    h0 = f0 + f1.scale(beta) + f2.scale(beta * beta)
    factor = X - RatPoly.const(root)
    g1 = _div_or_snap(h1, factor, ctx)
    g0 = _div_or_snap(h0, factor * factor, ctx)
    inner = _decompose(f2, g1, g0, d, e - 2, ctx)
    return _shift_terms(_attach_factor_to_q(inner, factor), beta)


def _try_endpoint(f2, f1, f0, d, e, disc, ctx) -> Optional[List[ExtremeRayTerm]]:
    """Endpoint zeros of bar f that are not divisible: peel off the simple
    z = 0 zeros first, else shift an endpoint ratio zero into f0."""
    if _ev(f2, 0) == 0 or _ev(f2, 1) == 0:
        got = _peel_boundary(f2, f1, f0, d, e, disc, ctx)
        if got is not None:
            return got
    if _ev(f0, 0) == 0 or _ev(f0, 1) == 0:
        got = _peel_boundary(f0, f1, f2, e, d, disc, ctx)
        if got is not None:
            return _swap_terms(got)

    for x0 in (Fraction(0), Fraction(1)):
        if _ev(disc, x0) == 0:
            if d > e:
                inner = _try_endpoint(f0, f1, f2, e, d, disc, ctx)
                return _swap_terms(inner) if inner is not None else None
            v2 = _ev(f2, x0)
            if v2 == 0:
                continue  # handled by the peel branches above
            beta = -_ev(f1, x0) / (2 * v2)
            h1 = f1 + f2.scale(2 * beta)
            h0 = f0 + f1.scale(beta) + f2.scale(beta * beta)
            inner = _decompose_shifted(f2, h1, h0, d, e, x0, ctx)
            return _shift_terms(inner, beta)
    return None


def _decompose_shifted(f2, h1, h0, d, e, x0: Fraction, ctx) -> List[ExtremeRayTerm]:
    """After the shift h0(x0) = 0: divide its square out when possible,
    else peel against the now-boundary zero of the Z^2 slot."""
    factor = X if x0 == 0 else X - ONE
    quo, rem = poly_divmod(h0, factor * factor)
    if rem.is_zero():
        g1 = _div_or_snap(h1, factor, ctx)
        inner = _decompose(f2, g1, quo, d, e - 2, ctx)
        return _attach_factor_to_q(inner, factor)
    hdisc = h1 * h1 - 4 * f2 * h0
    got = _peel_boundary(h0, h1, f2, e, d, hdisc, ctx)
    if got is None:
        raise InternalInvariant("boundary peel failed after a shift")
    return _swap_terms(got)


def _peel_boundary(fa, f1, fb, da, db, disc, ctx) -> Optional[List[ExtremeRayTerm]]:
    """fa (the Y^2-slot coefficient in this orientation) has simple zeros
    at one or both endpoints.  Peel eps * sigma_b worth of the opposite
    square, where sigma_b collects fb's own simple endpoint factors:

        remainder = (fa, f1, fb - eps sigma_b)

    stays in the cone up to eps = min over [0,1] of
    (-disc / (sigma_a sigma_b)) / (4 fa / sigma_a), an exact rational
    minimization with positive denominator.  The remainder touches zero at
    the minimizer, which later strategies divide out."""
    sigma_a = ONE
    if _ev(fa, 0) == 0:
        sigma_a = sigma_a * X
    if _ev(fa, 1) == 0:
        sigma_a = sigma_a * ONE_MINUS_X
    if sigma_a.is_constant():
        return None
    sigma_b = ONE
    if _ev(fb, 0) == 0:
        sigma_b = sigma_b * X
    if _ev(fb, 1) == 0:
        sigma_b = sigma_b * ONE_MINUS_X
    ka = _div_or_snap(fa, sigma_a, ctx)
    num = _div_or_snap(-disc, sigma_a * sigma_b, ctx)
    got = minimize_ratio_01(num, ka.scale(4))
    if got is None:
        ctx.go_numeric("irrational boundary-peel minimum")
        got = _float_ratio_min(num, ka.scale(4))
    eps = got[0]
    if eps <= 0:
        return None
    pieces = _split_fully_rooted(sigma_b.scale(eps), db, ctx)
    peeled = [ExtremeRayTerm(piece, _ZERO, ONE) for piece in pieces]
    inner = _decompose(fa, f1, fb - sigma_b.scale(eps), da, db, ctx)
    return inner + peeled


def _float_ratio_min(num: RatPoly, den: RatPoly) -> Tuple[Fraction, Fraction]:
    nd, _ = to_dense(num)
    dd, _ = to_dense(den)
    best = None
    best_x = Fraction(0)
    for k in range(513):
        x = Fraction(k, 512)
        dv = sum(c * x**i for i, c in enumerate(dd))
        if dv <= 0:
            continue
        val = sum(c * x**i for i, c in enumerate(nd)) / dv
        if best is None or val < best:
            best, best_x = val, x
    if best is None:
        raise InternalInvariant("no positive denominator while sampling a ratio")
    return best * Fraction(4095, 4096), best_x


def _peel_positive(f2, f1, f0, d, e, disc, ctx) -> List[ExtremeRayTerm]:
    """No zeros on the strip: subtract the largest c with (f2, f1, f0 - c)
    still PSD, c = min (-disc)/(4 f2) (automatically <= min f0); the
    remainder touches zero, so the recursion proceeds there.  When that
    minimum is irrational, the symmetric Y^2 peel gets a chance first."""
    got = minimize_ratio_01(-disc, f2.scale(4))
    peel_y = False
    if got is None:
        alt = minimize_ratio_01(-disc, f0.scale(4))
        if alt is not None:
            got, peel_y = alt, True
    if got is None:
        ctx.go_numeric("irrational positive-peel minimum")
        got = _float_ratio_min(-disc, f2.scale(4))
    c = got[0]
    if c <= 0:
        raise InternalInvariant("positive form with a nonpositive peel")
    const = RatPoly.const(c)
    if peel_y:
        pieces = _split_fully_rooted(const, d, ctx)
        peeled = [ExtremeRayTerm(piece, ONE, _ZERO) for piece in pieces]
        inner = _decompose(f2 - const, f1, f0, d, e, ctx)
    else:
        pieces = _split_fully_rooted(const, e, ctx)
        peeled = [ExtremeRayTerm(piece, _ZERO, ONE) for piece in pieces]
        inner = _decompose(f2, f1, f0 - const, d, e, ctx)
    return inner + peeled


def extract_rays(qf: QuadForm, mode: str = "auto") -> Tuple[List[ExtremeRayTerm], bool]:
    """Decompose a member of the cone into extreme-ray terms; returns the
    list and an exactness flag.

    Raises ParityMismatch when d and e differ modulo 2 (the
    characterization does not apply) and NumericRequired in exact mode when
    an irrational touching point blocks the rational path."""
    if (qf.d - qf.e) % 2 != 0:
        raise ParityMismatch(f"caps d={qf.d}, e={qf.e} differ in parity")
    if not membership_check(qf):
        raise NotNonnegative("the form is not PSD over [0,1]")
    ctx = _Ctx(mode, budget=400 * (qf.d + qf.e + 2))
    terms = _decompose(qf.f2, qf.f1, qf.f0, qf.d, qf.e, ctx)
    terms = [t for t in terms if not t.r.is_zero()]
    if ctx.exact:
        total = RatPoly.zero()
        for t in terms:
            total = total + t.value()
        if not (total - qf.value()).is_zero():
            raise InternalInvariant("exact ray extraction does not reconstruct")
    return terms, ctx.exact


def term_is_valid(term: ExtremeRayTerm, d: int, e: int) -> bool:
    """The three extreme-ray conditions: coprimality, the root locus of r,
    and the degree equation (minimum over the slots actually present)."""
    if term.p.is_zero() and term.q.is_zero():
        return False
    if term.r.is_zero() or not is_nonneg_on_01(term.r):
        return False
    if not _is_fully_rooted_01(term.r):
        return False
    if not term.p.is_zero() and not term.q.is_zero():
        if not poly_gcd(term.p, term.q).is_constant():
            return False
    entries = []
    if not term.p.is_zero():
        if 2 * term.p.total_degree() > d:
            return False
        entries.append(d - 2 * term.p.total_degree())
    if not term.q.is_zero():
        if 2 * term.q.total_degree() > e:
            return False
        entries.append(e - 2 * term.q.total_degree())
    return max(0, term.r.total_degree()) == min(entries)


# ---------------------------------------------------------------------------
# the certificate
# ---------------------------------------------------------------------------


def assemble_quadratic(
    f: RatPoly, rays: Sequence[ExtremeRayTerm], mode: str = "auto"
) -> Certificate:
    """Regroup ray terms into f = sigma0 + sigma1 X(1-X) through the [0,1]
    decomposition of each r; both degrees stay within deg_X f + 3."""
    sigma0: List[WeightedSquare] = []
    sigma1: List[WeightedSquare] = []
    exact = True
    for term in rays:
        parts, part_exact = lukacs_01(term.r, mode)
        exact = exact and part_exact
        linear = term.p * Y + term.q  # dehomogenized at Z = 1
        for s in parts.t:
            sigma0.append(WeightedSquare(s.weight, s.poly * linear))
        for s in parts.u:
            sigma0.append(WeightedSquare(s.weight, s.poly * X * linear))
            sigma1.append(WeightedSquare(s.weight, s.poly * linear))
        for s in parts.v:
            sigma0.append(WeightedSquare(s.weight, s.poly * ONE_MINUS_X * linear))
            sigma1.append(WeightedSquare(s.weight, s.poly * linear))
        for s in parts.w:
            sigma1.append(WeightedSquare(s.weight, s.poly * linear))
    return _finish(f, sigma0, sigma1, "quadratic", None, exact)


def certify_quadratic(f: RatPoly, mode: str = "auto") -> Certificate:
    """End-to-end deg_Y <= 2 pipeline: form, membership, extraction,
    assembly."""
    if f.degree("Y") > 2:
        raise ValueError("certify_quadratic needs deg_Y f <= 2")
    if f.is_zero():
        return _finish(f, [], [], "quadratic", None, True)
    qf = quadform_from_poly(f)
    if not membership_check(qf):
        raise NotNonnegative(
            f"{render(f)} is negative on the strip", witness=_negativity_point(qf)
        )
    rays, _ = extract_rays(qf, mode)
    return assemble_quadratic(f, rays, mode)


def _negativity_point(qf: QuadForm) -> Optional[Tuple[Fraction, Fraction]]:
    """A rational (x, y) with f(x, y) < 0, found by scanning fibers."""
    for k in range(65):
        x = Fraction(k, 64)
        a = qf.f2.eval(X=x)
        b = qf.f1.eval(X=x)
        c = qf.f0.eval(X=x)
        if a < 0:
            y = Fraction(max(10, abs(b) + abs(c)) * 2)
            if a * y * y + b * y + c < 0:
                return (x, y)
        elif a > 0:
            y = -b / (2 * a)
            if a * y * y + b * y + c < 0:
                return (x, y)
        elif b != 0:
            y = -(c + 1) / b
            if b * y + c < 0:
                return (x, y)
        elif c < 0:
            return (x, Fraction(0))
    return None


def ray_debug_dump(rays: Sequence[ExtremeRayTerm]) -> str:
    """One line per term: r | p | q in the canonical grammar."""
    return "\n".join(f"{render(t.r)} | {render(t.p)} | {render(t.q)}" for t in rays)

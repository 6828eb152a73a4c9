"""The Polya expansion engine.

Given f(X, Y), its double lift F is homogeneous of degree d in (W, X).
Multiplying by (W+X)^N and collecting

    (W+X)^N F = sum_j  b_j(Y, Z) W^j X^(N+d-j)

yields the coefficient polynomials b_j, each homogeneous of degree m in
(Y, Z).  Once every b_j(Y, 1) is nonnegative on R, a certificate of
nonnegativity on the strip with degree at most N+d+m+1 follows by direct
assembly (see soscert).  This module computes the expansions incrementally
through the Pascal recurrence b_{j,N+1} = b_{j,N} + b_{j-1,N}, searches for
the smallest valid exponent N, evaluates the a-priori threshold that
guarantees success for strictly positive inputs, and certifies positive
lower bounds on min of bar-f over [0,1] x (unit circle) by interval
subdivision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

from ._intervals import IntervalQ, eval_box_horner
from .errors import (
    DegreeTooSmall,
    HypothesisViolated,
    InvalidBound,
    NotPositive,
    OddDegreeY,
    PolyaNotFound,
    ZeroPolynomial,
)
from .polyring import ONE, RatPoly, W, homogenize_bar, inf_norm, lift_F
from .realroots import (
    RootWitness,
    count_roots_closed_01,
    count_roots_in,
    is_nonneg_on_R,
    isolate_roots,
    root_bound,
    sign_at_root,
)


@dataclass(frozen=True)
class PolyaExpansion:
    """Exponent N plus the list b[0..N+d] of homogeneous (Y,Z) coefficients."""

    N: int
    d: int
    m: int
    b: Tuple[RatPoly, ...]

    def __len__(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class FBulletBound:
    """A certified positive rational lower bound for min of bar-f over
    [0,1] x (unit circle)."""

    lower: Fraction
    method: str  # "interval-subdivision" | "user-supplied"
    depth: int


@dataclass(frozen=True)
class HypothesisReport:
    """Reproducible diagnostics for the Polya pipeline hypotheses."""

    fully_mic: bool
    m_even: bool
    boundary_zeros: Tuple[Tuple[int, RootWitness], ...]
    boundary_line_vanishes: Tuple[bool, bool]
    interior_positive_sampled: bool
    dfdX_nonzero_at_zeros: bool


class BjCheck(NamedTuple):
    ok: bool
    failing_index: Optional[int]
    failing_poly: Optional[RatPoly]


def _base_coefficients(f: RatPoly) -> Tuple[List[RatPoly], int, int]:
    """c_j(Y,Z) with F = sum_j c_j W^j X^(d-j), plus (d, m)."""
    F = lift_F(f)
    d = max(0, f.degree("X"))
    m = max(0, f.degree("Y"))
    c: List[RatPoly] = [RatPoly.zero()] * (d + 1)
    for (w, x, y, z), coeff in F.items():
        c[w] = c[w] + RatPoly.monomial(coeff, y=y, z=z)
    return c, d, m


def _pascal_step(b: List[RatPoly]) -> List[RatPoly]:
    out = [RatPoly.zero()] * (len(b) + 1)
    for j, poly in enumerate(b):
        out[j] = out[j] + poly
        out[j + 1] = out[j + 1] + poly
    return out


def expand(f: RatPoly, N: int) -> PolyaExpansion:
    """Exact coefficients of (W+X)^N F in the W^j X^(N+d-j) basis.

    Computed directly as b_j = sum_k C(N, j-k) c_k, which agrees with N
    applications of the Pascal recurrence but costs O((N+d) d).
    """
    if f.is_zero():
        raise ZeroPolynomial("expand of the zero polynomial")
    if N < 0:
        raise InvalidBound("N must be nonnegative")
    c, d, m = _base_coefficients(f)
    b: List[RatPoly] = []
    for j in range(N + d + 1):
        acc = RatPoly.zero()
        for k in range(max(0, j - N), min(d, j) + 1):
            acc = acc + c[k].scale(math.comb(N, j - k))
        b.append(acc)
    return PolyaExpansion(N, d, m, tuple(b))


def all_bj_nonneg(e: PolyaExpansion) -> BjCheck:
    """True iff every b_j(Y, 1) is nonnegative on R.

    For even m this is equivalent to b_j >= 0 on the unit circle because
    each b_j is homogeneous of degree m.  The failing index is the least j
    that fails, independent of evaluation order.
    """
    if e.m % 2 == 1:
        raise OddDegreeY("the circle reduction needs even deg_Y")
    for j, poly in enumerate(e.b):
        on_line = poly.substitute("Z", ONE)
        if not is_nonneg_on_R(on_line):
            return BjCheck(False, j, on_line)
    return BjCheck(True, None, None)


def find_N_incremental(f: RatPoly, n_max: int) -> Tuple[int, PolyaExpansion]:
    """Smallest N <= n_max with all b_j nonnegative, built by the Pascal
    recurrence.  Raises PolyaNotFound (with the per-N failing-index trace)
    when no such N exists below the cap."""
    if f.is_zero():
        raise ZeroPolynomial("search over the zero polynomial")
    if n_max < 0:
        raise InvalidBound("n_max must be nonnegative")
    if max(0, f.degree("Y")) % 2 == 1:
        raise OddDegreeY("the circle reduction needs even deg_Y")
    b, d, m = _base_coefficients(f)
    trace: List[Tuple[int, int]] = []
    for N in range(n_max + 1):
        expansion = PolyaExpansion(N, d, m, tuple(b))
        check = all_bj_nonneg(expansion)
        if check.ok:
            return N, expansion
        trace.append((N, check.failing_index))
        b = _pascal_step(b)
    raise PolyaNotFound(n_max, trace)


def bound_N_positive(f: RatPoly, fb: FBulletBound) -> int:
    """Least N with N + d > (d-1)d(d+1)(m+1)||f||_inf / (2 * fb.lower).

    Valid whenever fb.lower really bounds min of bar-f from below: at that N
    every b_j is nonnegative on the circle.
    """
    prof = f.profile()
    if prof.is_zero:
        raise ZeroPolynomial("bound for the zero polynomial")
    d, m = prof.d, prof.m
    if d < 2:
        raise DegreeTooSmall("deg_X f < 2: use the low-degree constructions")
    if fb.lower <= 0:
        raise NotPositive("need a strictly positive lower bound")
    report = check_hypotheses(f)
    if not report.fully_mic:
        raise HypothesisViolated("f is not fully m-ic on [0,1]", report)
    threshold = Fraction((d - 1) * d * (d + 1) * (m + 1)) * inf_norm(f) / (2 * fb.lower)
    return max(0, math.floor(threshold) + 1 - d)


# ---------------------------------------------------------------------------
# certified lower bound for bar-f on [0,1] x circle
# ---------------------------------------------------------------------------

_PROBE_POINTS = [Fraction(k, 8) for k in range(9)]


def _bernstein_lower_2d(p: RatPoly, bx: IntervalQ, bw: IntervalQ) -> Fraction:
    """Lower bound of a polynomial in (X, W) over a box, from its Bernstein
    coefficients there (convex-hull property)."""
    u = RatPoly.var("X")
    v = RatPoly.var("W")
    q = p.substitute("X", RatPoly.const(bx.lo) + u.scale(bx.width()))
    q = q.substitute("W", RatPoly.const(bw.lo) + v.scale(bw.width()))
    nx = max(0, q.degree("X"))
    nw = max(0, q.degree("W"))
    coeffs = {}
    for (w_e, x_e, _, _), c in q.items():
        coeffs[(x_e, w_e)] = c
    best = None
    for i in range(nx + 1):
        for j in range(nw + 1):
            b = Fraction(0)
            for (k, l), a in coeffs.items():
                if k <= i and l <= j:
                    b += (
                        a
                        * math.comb(i, k)
                        * math.comb(j, l)
                        / (math.comb(nx, k) * math.comb(nw, l))
                    )
            if best is None or b < best:
                best = b
    return best if best is not None else Fraction(0)


def certify_f_bullet(
    f: RatPoly, depth_cap: int = 24, max_boxes: int = 20000
) -> Optional[FBulletBound]:
    """Certified positive rational lower bound on min of bar-f over
    x in [0,1], y^2 + z^2 = 1, by breadth-first interval subdivision of two
    rational circle charts; None when the bound cannot be driven positive
    within depth_cap (in particular when bar-f has a zero there)."""
    if f.is_zero():
        return None
    m = max(0, f.degree("Y"))
    fbar = homogenize_bar(f, m)
    # Rational charts of the circle: (y, z) = ((1-w^2), 2w)/(1+w^2) covers the
    # quarter y >= 0, z >= 0 for w in [0,1]; mirroring y covers y <= 0, z >= 0.
    # For even m the lower semicircle repeats the upper one; for odd m the
    # lower semicircle carries the negated values, handled by extra charts.
    forms = [fbar] if m % 2 == 0 else [fbar, -fbar]
    charts = []
    for form in forms:
        for y_sign in (1, -1):
            y_num = (ONE - W * W) if y_sign > 0 else (W * W - ONE)
            g = form.substitute("Y", y_num).substitute("Z", 2 * W)
            charts.append((g, form, y_sign))
    den = (ONE + W * W) ** m

    # cheap exact probes first: any nonpositive value settles it, and the
    # smallest probed value steers how far boxes are refined
    min_probe = None
    for g, _, _ in charts:
        for xv in _PROBE_POINTS:
            for wv in _PROBE_POINTS:
                val = g.eval(X=xv, W=wv)
                if val <= 0:
                    return None
                val /= (1 + wv * wv) ** m
                if min_probe is None or val < min_probe:
                    min_probe = val
    target = min_probe / 2

    def lower_on(ci: int, bx: IntervalQ, bw: IntervalQ) -> Fraction:
        g = charts[ci][0]
        num_lo = _bernstein_lower_2d(g, bx, bw)
        if num_lo <= 0:
            return num_lo
        # den = (1+w^2)^m is increasing on w >= 0, so its sup is exact
        den_hi = (1 + bw.hi * bw.hi) ** m
        return num_lo / den_hi

    unit = IntervalQ(Fraction(0), Fraction(1))
    queue = [(ci, unit, unit, 0) for ci in range(len(charts))]
    collected: List[Fraction] = []
    max_depth = 0
    while queue:
        if len(queue) > max_boxes:
            return None
        next_queue = []
        for ci, bx, bw, depth in queue:
            lo = lower_on(ci, bx, bw)
            if lo > 0 and (lo >= target or depth >= depth_cap):
                collected.append(lo)
                continue
            if depth >= depth_cap:
                return None
            # exact value at the box midpoint can refute positivity outright
            g = charts[ci][0]
            if lo <= 0 and g.eval(X=bx.midpoint(), W=bw.midpoint()) <= 0:
                return None
            if bx.width() >= bw.width():
                mid = bx.midpoint()
                next_queue.append((ci, IntervalQ(bx.lo, mid), bw, depth + 1))
                next_queue.append((ci, IntervalQ(mid, bx.hi), bw, depth + 1))
            else:
                mid = bw.midpoint()
                next_queue.append((ci, bx, IntervalQ(bw.lo, mid), depth + 1))
                next_queue.append((ci, bx, IntervalQ(mid, bw.hi), depth + 1))
            max_depth = max(max_depth, depth + 1)
        queue = next_queue
    if not collected:
        return None
    return FBulletBound(min(collected), "interval-subdivision", max_depth)


# ---------------------------------------------------------------------------
# hypothesis diagnostics
# ---------------------------------------------------------------------------

_SAMPLE_X = [Fraction(k, 7) for k in range(1, 7)] + [Fraction(1, 2)]
_SAMPLE_Y = [Fraction(0), Fraction(1, 3), Fraction(-1, 3), Fraction(1), Fraction(-1),
             Fraction(3), Fraction(-3), Fraction(10), Fraction(-10)]


def check_hypotheses(f: RatPoly) -> HypothesisReport:
    """Fill the full diagnostic report for the Polya pipeline."""
    if f.is_zero():
        raise ZeroPolynomial("hypothesis check of the zero polynomial")
    prof = f.profile()
    m = prof.m
    lead = f.coeff_in_var("Y", m)
    if lead.is_constant():
        fully_mic = not lead.is_zero()
    else:
        fully_mic = count_roots_closed_01(lead) == 0

    zeros = []
    vanishes = [False, False]
    dfdx_ok = True
    dfdX = f.derivative("X")
    for side in (0, 1):
        line = f.substitute("X", RatPoly.const(side))
        slope = dfdX.substitute("X", RatPoly.const(side))
        if line.is_zero():
            vanishes[side] = True
            # every Y is a zero on this edge; the derivative must be
            # root-free there for the boundary-zero hypothesis to make sense
            if slope.is_zero() or (
                not slope.is_constant()
                and count_roots_in(slope, -root_bound(slope), root_bound(slope)) > 0
            ):
                dfdx_ok = False
            continue
        if line.is_constant():
            continue
        bound = root_bound(line)
        for w in isolate_roots(line, -bound, bound):
            zeros.append((side, w))
            if slope.is_zero():
                dfdx_ok = False
            elif sign_at_root(slope, w) == 0:
                dfdx_ok = False

    interior_pos = True
    for xv in _SAMPLE_X:
        for yv in _SAMPLE_Y:
            if f.eval(X=xv, Y=yv) <= 0:
                interior_pos = False
                break
        if not interior_pos:
            break

    return HypothesisReport(
        fully_mic=fully_mic,
        m_even=(m % 2 == 0),
        boundary_zeros=tuple(zeros),
        boundary_line_vanishes=(vanishes[0], vanishes[1]),
        interior_positive_sampled=interior_pos,
        dfdX_nonzero_at_zeros=dfdx_ok,
    )


# ---------------------------------------------------------------------------
# effective-Polya formula helpers (reporting only; no pipeline consumer)
# ---------------------------------------------------------------------------


def effective_polya_threshold(d: int, g_norm: Fraction, lam: Fraction,
                              eps: Fraction = Fraction(0)) -> Fraction:
    """The exponent threshold (d-1) d ||g|| / (2 (1-eps) lambda): once
    N + d meets it, every coefficient of (W+X)^N g is positive for a
    (W,X)-homogeneous g with minimum lambda > 0 on the simplex."""
    if not 0 <= eps < 1:
        raise ValueError("eps must lie in [0, 1)")
    if lam <= 0:
        raise NotPositive("lambda must be positive")
    return Fraction((d - 1) * d) * g_norm / (2 * (1 - eps) * lam)


def effective_polya_floor(N: int, d: int, j: int, eps: Fraction, lam: Fraction) -> Fraction:
    """Guaranteed coefficient floor N! (N+d)^d / (j! (N+d-j)!) * eps * lambda
    under the threshold above."""
    if not 0 <= j <= N + d:
        raise ValueError("index out of range")
    return (
        Fraction(math.factorial(N) * (N + d) ** d,
                 math.factorial(j) * math.factorial(N + d - j))
        * eps
        * lam
    )

"""Certificate assembly and verification.

A certificate for f >= 0 on [0,1] x R is the identity

    f = sigma0 + sigma1 * X*(1-X)

with sigma0 and sigma1 stored as lists of weighted squares (weight > 0 kept
separate from the squared polynomial to preserve rationality).  Three
assembly paths produce certificates: from a valid Polya expansion, from the
deg_X <= 1 closed forms, and (in quadstrip) from an extreme-ray
decomposition.  The verifier recomputes everything from scratch and never
trusts stored fields.

Exactness policy: a certificate is labeled "exact" if and only if the
reconstruction defect is the zero polynomial.  When floating point root
finding enters (irrational squares), coefficients are converted back to
exact rationals, the defect is computed exactly, and the certificate is
labeled "numeric" with its true residual.  Nothing is ever silently exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    FormatError,
    InternalInvariant,
    NotNonnegative,
    NotNonnegativeOn01,
    NumericRequired,
    PolyParseError,
    UnknownVariable,
    ZeroPolynomial,
)
from .polya import PolyaExpansion
from .polyring import ONE, RatPoly, X, inf_norm, parse_poly, render
from .realroots import (
    count_roots_in,
    is_nonneg_on_01,
    is_nonneg_on_R,
    isolate_roots,
    identify_rational_root,
    leading_coeff,
    negativity_witness_on_01,
    poly_divexact,
    root_bound,
    squarefree_decompose,
    to_dense,
)

ONE_MINUS_X = ONE - X
X_ONE_MINUS_X = X * ONE_MINUS_X

PIPELINES = ("polya", "quadratic", "degx1", "degx0")


@dataclass(frozen=True)
class WeightedSquare:
    """One term weight * poly**2 of a sum of squares."""

    weight: Fraction
    poly: RatPoly

    def value(self) -> RatPoly:
        return (self.poly * self.poly).scale(self.weight)


def sum_of_squares_value(squares: Sequence[WeightedSquare]) -> RatPoly:
    total = RatPoly.zero()
    for s in squares:
        total = total + s.value()
    return total


class SosResult(Tuple[List[WeightedSquare], bool]):
    """(squares, exact) pair returned by the SOS splitters."""

    def __new__(cls, squares, exact):
        return super().__new__(cls, (list(squares), bool(exact)))

    @property
    def squares(self):
        return self[0]

    @property
    def exact(self):
        return self[1]


@dataclass(frozen=True)
class Lukacs01:
    """r = t + u*X + v*(1-X) + w*X*(1-X) with all four parts SOS and
    deg t, deg uX, deg v(1-X), deg wX(1-X) <= deg r."""

    t: Tuple[WeightedSquare, ...]
    u: Tuple[WeightedSquare, ...]
    v: Tuple[WeightedSquare, ...]
    w: Tuple[WeightedSquare, ...]

    def value(self) -> RatPoly:
        return (
            sum_of_squares_value(self.t)
            + sum_of_squares_value(self.u) * X
            + sum_of_squares_value(self.v) * ONE_MINUS_X
            + sum_of_squares_value(self.w) * X_ONE_MINUS_X
        )


@dataclass
class Certificate:
    f: RatPoly
    sigma0: List[WeightedSquare]
    sigma1: List[WeightedSquare]
    pipeline: str
    mode: str  # "exact" | "numeric"
    n_used: Optional[int]
    degrees: Tuple[int, int]  # (deg sigma0, deg sigma1*X*(1-X))
    residual: Fraction  # exact inf-norm of the reconstruction defect

    def sigma0_value(self) -> RatPoly:
        return sum_of_squares_value(self.sigma0)

    def sigma1_value(self) -> RatPoly:
        return sum_of_squares_value(self.sigma1)

    def defect(self) -> RatPoly:
        return self.f - self.sigma0_value() - self.sigma1_value() * X_ONE_MINUS_X


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: List[CheckResult]
    residual: Fraction

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]


# ---------------------------------------------------------------------------
# univariate SOS splitting
# ---------------------------------------------------------------------------


def _var_of(p: RatPoly) -> str:
    used = p.varset()
    if len(used) > 1:
        raise ValueError("expected a univariate polynomial")
    return used.pop() if used else "Y"


def _complete_square(rem: RatPoly, var: str) -> List[WeightedSquare]:
    """Monic positive-definite quadratic c0 + c1 v + v^2 as two squares."""
    dense, _ = to_dense(rem)
    c0, c1 = dense[0], dense[1]
    v = RatPoly.var(var)
    shift = v + RatPoly.const(c1 / 2)
    rest = c0 - c1 * c1 / 4
    out = [WeightedSquare(Fraction(1), shift)]
    if rest != 0:
        out.append(WeightedSquare(rest, ONE))
    return out


def _psd_rank1_peel(gram, basis: List[RatPoly]) -> Optional[List[WeightedSquare]]:
    """Exact PSD test by repeated rank-1 elimination; on success returns the
    corresponding weighted squares."""
    n = len(gram)
    work = [[Fraction(g) for g in row] for row in gram]
    out: List[WeightedSquare] = []
    remaining = set(range(n))
    while remaining:
        if any(work[i][i] < 0 for i in remaining):
            return None
        pivot = None
        best = Fraction(0)
        for i in remaining:
            if work[i][i] > best:
                pivot, best = i, work[i][i]
        if pivot is None:
            # zero diagonal: PSD forces the whole remaining block to vanish
            for i in remaining:
                for j in remaining:
                    if work[i][j] != 0:
                        return None
            break
        w = work[pivot][pivot]
        vec = [work[pivot][j] / w for j in range(n)]
        poly = RatPoly.zero()
        for j, c in enumerate(vec):
            if c:
                poly = poly + basis[j].scale(c)
        out.append(WeightedSquare(w, poly))
        for r in range(n):
            for c in range(n):
                work[r][c] -= w * vec[r] * vec[c]
        remaining.discard(pivot)
    return out


def _quartic_gram_split(rem: RatPoly, var: str) -> Optional[List[WeightedSquare]]:
    """Exact SOS of a monic positive-definite quartic via the one-parameter
    Gram matrix family, searching for a rational PSD member."""
    dense, _ = to_dense(rem)
    d0, c, b, a = dense[0], dense[1], dense[2], dense[3]
    v = RatPoly.var(var)
    basis = [ONE, v, v * v]

    def gram(t: Fraction):
        return [
            [d0, c / 2, t],
            [c / 2, b - 2 * t, a / 2],
            [t, a / 2, Fraction(1)],
        ]

    # feasible t window scanned numerically, then verified exactly
    lo = -math.sqrt(max(0.0, float(d0))) - 1.0
    hi = min(float(b) / 2 + 1.0, math.sqrt(max(0.0, float(d0))) + 1.0)
    feas = []
    for k in range(81):
        t = lo + (hi - lo) * k / 80
        eigs = np.linalg.eigvalsh(np.array(gram(Fraction(t).limit_denominator(10**6)), dtype=float))
        if eigs[0] > -1e-12:
            feas.append(t)
    candidates: List[Fraction] = []
    if feas:
        tlo, thi = min(feas), max(feas)
        mid = Fraction((tlo + thi) / 2).limit_denominator(10**4)
        candidates.extend([mid, Fraction(tlo).limit_denominator(100),
                           Fraction(thi).limit_denominator(100)])
        span = thi - tlo
        for shrink in (0.25, 0.75):
            candidates.append(Fraction(tlo + span * shrink).limit_denominator(1000))
    candidates.extend([Fraction(0), b / 2 - 1, -abs(c)])
    seen = set()
    for t in candidates:
        if t in seen:
            continue
        seen.add(t)
        squares = _psd_rank1_peel(gram(t), basis)
        if squares is not None:
            return squares
    return None


def _two_square_numeric(rem: RatPoly, var: str) -> List[WeightedSquare]:
    """Float factorization rem ~ |q|^2 = (Re q)^2 + (Im q)^2 for a monic
    positive-definite even-degree polynomial; coefficients come back as
    exact rationals of the computed floats."""
    dense, _ = to_dense(rem)
    deg = len(dense) - 1
    coeffs = [float(c) for c in reversed(dense)]  # descending for numpy
    roots = np.roots(coeffs)
    upper = [r for r in roots if r.imag > 0]
    if len(upper) != deg // 2:
        roots = sorted(roots, key=lambda r: -r.imag)
        upper = roots[: deg // 2]
    q = np.poly(upper)  # monic, complex coefficients, highest degree first
    re = [Fraction(float(c.real)) for c in q]
    im = [Fraction(float(c.imag)) for c in q]
    v = RatPoly.var(var)
    re_poly = RatPoly.zero()
    im_poly = RatPoly.zero()
    n = len(q) - 1
    for k, (cr, ci) in enumerate(zip(re, im)):
        power = n - k
        if cr:
            re_poly = re_poly + (v**power).scale(cr)
        if ci:
            im_poly = im_poly + (v**power).scale(ci)
    out = [WeightedSquare(Fraction(1), re_poly)]
    if not im_poly.is_zero():
        out.append(WeightedSquare(Fraction(1), im_poly))
    return out


def _sos_positive_definite(rem: RatPoly, var: str, mode: str) -> SosResult:
    """SOS of a monic positive-definite polynomial of even degree."""
    deg = rem.total_degree()
    if deg == 0:
        return SosResult([WeightedSquare(rem.constant_value(), ONE)], True)
    if deg == 2:
        return SosResult(_complete_square(rem, var), True)
    if deg == 4:
        squares = _quartic_gram_split(rem, var)
        if squares is not None:
            return SosResult(squares, True)
    if mode == "exact":
        raise NumericRequired(
            f"no exact rational SOS found for degree-{deg} positive factor"
        )
    return SosResult(_two_square_numeric(rem, var), False)


def sos_univariate(p: RatPoly, mode: str = "auto") -> SosResult:
    """Write a univariate p >= 0 on R as a weighted sum of squares with each
    term's degree bounded by deg p.

    Exact route: even-multiplicity content times a positive-definite factor
    handled by completing the square (deg 2) or a rational Gram matrix
    (deg 4).  Higher-degree positive factors fall back to a numeric
    two-square split (with exact residual accounting by the caller); an
    exact absorption of the defect is attempted before giving up exactness.
    """
    if mode not in ("auto", "exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    if not is_nonneg_on_R(p):
        raise NotNonnegative(f"{render(p)} is negative somewhere on R")
    if p.is_zero():
        return SosResult([], True)
    var = _var_of(p)
    if p.is_constant():
        return SosResult([WeightedSquare(p.constant_value(), ONE)], True)

    lc = leading_coeff(p)
    even = ONE
    rem = ONE
    for factor, mult in squarefree_decompose(p):
        if mult // 2:
            even = even * factor ** (mult // 2)
        if mult % 2:
            rem = rem * factor

    if rem.is_constant():
        return SosResult([WeightedSquare(lc, even)], True)

    if mode == "numeric":
        split = SosResult(_two_square_numeric(rem, var), False)
    else:
        split = _sos_positive_definite(rem, var, mode)

    squares = [WeightedSquare(lc * s.weight, even * s.poly) for s in split.squares]
    if split.exact:
        return SosResult(squares, True)

    # exact defect of the numeric split; absorb it when it is itself
    # certifiably a sum of squares along the exact route
    defect = p - sum_of_squares_value(squares)
    if defect.is_zero():
        return SosResult(squares, True)
    if is_nonneg_on_R(defect):
        try:
            extra = sos_univariate(defect, mode="exact")
            return SosResult(squares + extra.squares, True)
        except (NumericRequired, NotNonnegative):
            pass
    return SosResult(squares, False)


# ---------------------------------------------------------------------------
# Lukacs-style decomposition on [0,1]
# ---------------------------------------------------------------------------


class _Quad:
    """Work representation t + u*X + v*(1-X) + w*X*(1-X), each bucket a list
    of weighted squares.  The multiplication rules keep every bucket's
    effective degree within the degree of the represented polynomial."""

    __slots__ = ("t", "u", "v", "w")

    def __init__(self, t=(), u=(), v=(), w=()):
        self.t = list(t)
        self.u = list(u)
        self.v = list(v)
        self.w = list(w)

    @staticmethod
    def _scaled(squares, c: Fraction):
        if c == 0:
            return []
        return [WeightedSquare(s.weight * c, s.poly) for s in squares]

    @staticmethod
    def _times(squares, poly: RatPoly):
        return [WeightedSquare(s.weight, s.poly * poly) for s in squares]

    def add(self, other: "_Quad") -> "_Quad":
        return _Quad(self.t + other.t, self.u + other.u,
                     self.v + other.v, self.w + other.w)

    def scale(self, c: Fraction) -> "_Quad":
        return _Quad(self._scaled(self.t, c), self._scaled(self.u, c),
                     self._scaled(self.v, c), self._scaled(self.w, c))

    def mul_x(self) -> "_Quad":
        # (t + uX + v(1-X) + wX(1-X)) X = uX^2 + tX + wX^2(1-X) + vX(1-X)
        return _Quad(
            t=self._times(self.u, X),
            u=self.t,
            v=self._times(self.w, X),
            w=self.v,
        )

    def mul_one_minus_x(self) -> "_Quad":
        return _Quad(
            t=self._times(self.v, ONE_MINUS_X),
            u=self._times(self.w, ONE_MINUS_X),
            v=self.t,
            w=self.u,
        )

    def mul_affine_x(self, c0: Fraction, c1: Fraction) -> "_Quad":
        """Multiply by c0 + c1*X with c0, c1 >= 0."""
        return self.scale(c0).add(self.mul_x().scale(c1))

    def mul_affine_one_minus_x(self, c0: Fraction, c1: Fraction) -> "_Quad":
        return self.scale(c0).add(self.mul_one_minus_x().scale(c1))

    def mul_square(self, poly: RatPoly) -> "_Quad":
        return _Quad(self._times(self.t, poly), self._times(self.u, poly),
                     self._times(self.v, poly), self._times(self.w, poly))

    def as_lukacs(self) -> Lukacs01:
        return Lukacs01(tuple(self.t), tuple(self.u), tuple(self.v), tuple(self.w))


def lukacs_01(r: RatPoly, mode: str = "auto") -> Tuple[Lukacs01, bool]:
    """Four-part decomposition r = t + uX + v(1-X) + wX(1-X) for r >= 0 on
    [0,1]; each part is an SOS list and the part degrees stay within deg r.

    Exact whenever the roots of r inside [0,1] are at the endpoints or of
    even multiplicity, the roots outside are rational, and the leftover
    positive-definite factor splits exactly; otherwise numeric, with the
    residual accounted for by the certificate verifier.
    """
    if mode not in ("auto", "exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    if r.varset() - {"X"}:
        raise ValueError("lukacs_01 expects a polynomial in X only")
    if not is_nonneg_on_01(r):
        raise NotNonnegativeOn01(
            f"{render(r)} is negative somewhere on [0,1]",
            witness=negativity_witness_on_01(r),
        )
    if r.is_zero():
        return _Quad().as_lukacs(), True
    if r.is_constant():
        return _Quad(t=[WeightedSquare(r.constant_value(), ONE)]).as_lukacs(), True

    even = ONE
    for factor, mult in squarefree_decompose(r):
        if mult // 2:
            even = even * factor ** (mult // 2)
    core = r
    if not even.is_constant():
        core = _divexact_rat(r, even * even)

    # strip the at-most-simple roots at the interval ends
    times_x = 0
    times_1mx = 0
    if core.eval(X=0) == 0:
        core = _divexact_rat(core, X)
        times_x = 1
    if core.eval(X=1) == 0:
        core = _divexact_rat(core, X - 1).scale(-1)
        times_1mx = 1

    # rational roots outside [0,1] become cone pieces (xi - X) or (X - xi)
    pieces: List[Tuple[str, Fraction]] = []
    sign = 1
    exact = True
    while not core.is_constant():
        found = None
        bound = root_bound(core)
        for w in isolate_roots(core, -bound, bound):
            root = identify_rational_root(w, max_rounds=48)
            if root is not None:
                found = root
                break
        if found is None:
            break
        if 0 <= found <= 1:
            raise InternalInvariant("unexpected [0,1] root after stripping")
        core = _divexact_rat(core, X - RatPoly.const(found))
        if found > 1:
            pieces.append(("gt", found))
            sign = -sign
        else:
            pieces.append(("lt", found))

    positive = core.scale(sign)
    if positive.is_constant():
        base = SosResult([WeightedSquare(positive.constant_value(), ONE)], True)
    else:
        remaining_real = count_roots_in(
            positive, -root_bound(positive), root_bound(positive)
        )
        if remaining_real == 0:
            lc = leading_coeff(positive)
            base = _sos_positive_definite(
                positive.scale(1 / lc), "X",
                "numeric" if mode == "numeric" else mode,
            )
            base = SosResult(
                [WeightedSquare(lc * s.weight, s.poly) for s in base.squares],
                base.exact,
            )
        else:
            # irrational real roots remain: numeric handling
            if mode == "exact":
                raise NumericRequired("irrational roots outside [0,1]")
            base, extra_pieces = _numeric_linear_pieces(positive)
            pieces.extend(extra_pieces)
            exact = False

    quad = _Quad(t=base.squares)
    exact = exact and base.exact
    for kind, root in pieces:
        if kind == "gt":
            quad = quad.mul_affine_one_minus_x(root - 1, Fraction(1))
        else:
            quad = quad.mul_affine_x(-root, Fraction(1))
    for _ in range(times_x):
        quad = quad.mul_x()
    for _ in range(times_1mx):
        quad = quad.mul_one_minus_x()
    if not even.is_constant():
        quad = quad.mul_square(even)
    return quad.as_lukacs(), exact


def _numeric_linear_pieces(p: RatPoly):
    """Split off float real roots (all outside [0,1]) as cone pieces and
    return the SOS of the complex-root remainder."""
    dense, var = to_dense(p)
    coeffs = [float(c) for c in reversed(dense)]
    roots = np.roots(coeffs)
    pieces = []
    remainder = RatPoly.const(dense[-1])
    v = RatPoly.var(var)
    complex_part = []
    for rt in roots:
        if abs(rt.imag) < 1e-9:
            val = Fraction(float(rt.real))
            if 0 <= val <= 1:  # defensively push to the nearest outside point
                val = Fraction(-1, 10**9) if val < Fraction(1, 2) else 1 + Fraction(1, 10**9)
            pieces.append(("gt", val) if val > 1 else ("lt", val))
        else:
            complex_part.append(rt)
    sign = -1 if sum(1 for k, _ in pieces if k == "gt") % 2 else 1
    lc = dense[-1] * sign
    if lc <= 0:
        raise InternalInvariant("numeric split lost positivity")
    upper = [rt for rt in complex_part if rt.imag > 0]
    basis_squares = [WeightedSquare(lc, ONE)]
    if upper:
        q = np.poly(upper)
        re_p = RatPoly.zero()
        im_p = RatPoly.zero()
        n = len(q) - 1
        for k, cc in enumerate(q):
            power = n - k
            if cc.real:
                re_p = re_p + (v**power).scale(Fraction(float(cc.real)))
            if cc.imag:
                im_p = im_p + (v**power).scale(Fraction(float(cc.imag)))
        basis_squares = [WeightedSquare(lc, re_p)]
        if not im_p.is_zero():
            basis_squares.append(WeightedSquare(lc, im_p))
    return SosResult(basis_squares, False), pieces


def _divexact_rat(p: RatPoly, q: RatPoly) -> RatPoly:
    if q.is_constant():
        return p.scale(1 / q.constant_value())
    return poly_divexact(p, q)


# ---------------------------------------------------------------------------
# assembly paths
# ---------------------------------------------------------------------------


def _degrees_of(sigma0, sigma1) -> Tuple[int, int]:
    d0 = sum_of_squares_value(sigma0).total_degree()
    s1 = sum_of_squares_value(sigma1) * X_ONE_MINUS_X
    d1 = s1.total_degree()
    return (max(0, d0), max(0, d1))


def _finish(f, sigma0, sigma1, pipeline, n_used, claim_exact) -> Certificate:
    cert = Certificate(
        f=f,
        sigma0=sigma0,
        sigma1=sigma1,
        pipeline=pipeline,
        mode="exact",
        n_used=n_used,
        degrees=_degrees_of(sigma0, sigma1),
        residual=Fraction(0),
    )
    defect = cert.defect()
    residual = inf_norm(defect)
    cert.residual = residual
    cert.mode = "exact" if residual == 0 else "numeric"
    if claim_exact and residual != 0:
        raise InternalInvariant("exact assembly produced a nonzero defect")
    return cert


def assemble_from_polya(
    f: RatPoly, expansion: PolyaExpansion, sos_results: Sequence[SosResult]
) -> Certificate:
    """Assemble f = sigma0 + sigma1 X(1-X) from SOS splits of the expansion
    coefficients b_j(Y,1), following the even/odd N+d schemes with the
    degree bound N + d + m + 1."""
    n_total = expansion.N + expansion.d
    if len(sos_results) != n_total + 1:
        raise InternalInvariant(
            f"expected {n_total + 1} SOS lists, got {len(sos_results)}"
        )
    sigma0: List[WeightedSquare] = []
    sigma1: List[WeightedSquare] = []
    exact = all(res.exact for res in sos_results)

    for j, res in enumerate(sos_results):
        if n_total % 2 == 0:
            if j % 2 == 0:
                mult = ONE_MINUS_X ** (j // 2) * X ** ((n_total - j) // 2)
                target = sigma0
            else:
                mult = ONE_MINUS_X ** ((j - 1) // 2) * X ** ((n_total - j - 1) // 2)
                target = sigma1
            for s in res.squares:
                target.append(WeightedSquare(s.weight, s.poly * mult))
        else:
            if j % 2 == 0:
                m0 = ONE_MINUS_X ** (j // 2) * X ** ((n_total - j + 1) // 2)
                m1 = ONE_MINUS_X ** (j // 2) * X ** ((n_total - j - 1) // 2)
            else:
                m0 = ONE_MINUS_X ** ((j + 1) // 2) * X ** ((n_total - j) // 2)
                m1 = ONE_MINUS_X ** ((j - 1) // 2) * X ** ((n_total - j) // 2)
            for s in res.squares:
                sigma0.append(WeightedSquare(s.weight, s.poly * m0))
                sigma1.append(WeightedSquare(s.weight, s.poly * m1))

    return _finish(f, sigma0, sigma1, "polya", expansion.N, exact)


def assemble_degx1(f: RatPoly, mode: str = "auto") -> Certificate:
    """Closed-form certificate for deg_X f <= 1:

        f = f(1,Y) X + f(0,Y) (1-X)
        sigma0 = sos(f(1,Y)) X^2 + sos(f(0,Y)) (1-X)^2
        sigma1 = sos(f(1,Y)) + sos(f(0,Y))

    with degrees bounded by m + 2; deg_X f = 0 degenerates to sigma0 =
    sos(f), sigma1 = 0 with degrees bounded by m."""
    d = f.degree("X")
    if d > 1:
        raise ValueError("assemble_degx1 requires deg_X f <= 1")
    if f.is_zero():
        return _finish(f, [], [], "degx0", None, True)
    if d <= 0:
        try:
            res = sos_univariate(f, mode)
        except NotNonnegative as exc:
            raise NotNonnegative(f"f is negative on R: {exc}", exc.witness)
        return _finish(f, res.squares, [], "degx0", None, res.exact)

    p0 = f.substitute("X", RatPoly.zero())
    p1 = f.substitute("X", ONE)
    try:
        res0 = sos_univariate(p0, mode)
    except NotNonnegative as exc:
        raise NotNonnegative(f"f(0,Y) is negative on R: {exc}", exc.witness)
    try:
        res1 = sos_univariate(p1, mode)
    except NotNonnegative as exc:
        raise NotNonnegative(f"f(1,Y) is negative on R: {exc}", exc.witness)

    sigma0 = [WeightedSquare(s.weight, s.poly * X) for s in res1.squares]
    sigma0 += [WeightedSquare(s.weight, s.poly * ONE_MINUS_X) for s in res0.squares]
    sigma1 = list(res1.squares) + list(res0.squares)
    return _finish(f, sigma0, sigma1, "degx1", None, res0.exact and res1.exact)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def pipeline_degree_cap(cert: Certificate) -> Optional[int]:
    prof = cert.f.profile()
    d, m = prof.d, prof.m
    if cert.pipeline == "polya":
        if cert.n_used is None:
            return None
        return cert.n_used + d + m + 1
    if cert.pipeline == "quadratic":
        return d + 3
    if cert.pipeline == "degx1":
        return m + 2
    if cert.pipeline == "degx0":
        return m
    return None


def verify(cert: Certificate, tol: float = 1e-8) -> VerificationReport:
    """Recompute the identity, the weight signs and the degree bound from
    scratch; every check lands in the report, failures are entries, not
    exceptions."""
    checks: List[CheckResult] = []

    weights_ok = all(s.weight > 0 for s in cert.sigma0 + cert.sigma1)
    checks.append(CheckResult("weights_positive", weights_ok))

    defect = cert.defect()
    residual = inf_norm(defect)
    if cert.mode == "exact":
        checks.append(
            CheckResult(
                "identity_exact",
                defect.is_zero(),
                "" if defect.is_zero() else f"residual {float(residual):.3e}",
            )
        )
    else:
        cap = Fraction(tol) * max(Fraction(1), inf_norm(cert.f))
        checks.append(
            CheckResult(
                "residual_within_tol",
                residual <= cap,
                f"residual {float(residual):.3e} vs cap {float(cap):.3e}",
            )
        )

    degrees = _degrees_of(cert.sigma0, cert.sigma1)
    checks.append(
        CheckResult(
            "degrees_recorded",
            degrees == tuple(cert.degrees),
            f"recomputed {degrees}, recorded {tuple(cert.degrees)}",
        )
    )
    cap_deg = pipeline_degree_cap(cert)
    if cap_deg is None:
        checks.append(CheckResult("degree_bound", False, "unknown pipeline or missing N"))
    else:
        checks.append(
            CheckResult(
                "degree_bound",
                degrees[0] <= cap_deg and degrees[1] <= cap_deg,
                f"degrees {degrees} vs bound {cap_deg}",
            )
        )
    checks.append(
        CheckResult("pipeline_known", cert.pipeline in PIPELINES, cert.pipeline)
    )
    return VerificationReport(checks, residual)


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------


def _weight_to_json(w: Fraction, mode: str):
    if mode == "exact":
        return str(w)
    return float(w)


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "f": render(cert.f),
        "pipeline": cert.pipeline,
        "mode": cert.mode,
        "N": cert.n_used,
        "sigma0": [
            {"weight": _weight_to_json(s.weight, cert.mode), "poly": render(s.poly)}
            for s in cert.sigma0
        ],
        "sigma1": [
            {"weight": _weight_to_json(s.weight, cert.mode), "poly": render(s.poly)}
            for s in cert.sigma1
        ],
        "degrees": [cert.degrees[0], cert.degrees[1]],
        "residual": "0" if cert.mode == "exact" else float(cert.residual),
    }


def certificate_to_json(cert: Certificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2)


def _weight_from_json(raw) -> Fraction:
    if isinstance(raw, str):
        return Fraction(raw)
    if isinstance(raw, (int, float)):
        return Fraction(raw)
    raise FormatError(f"bad weight {raw!r}")


def _squares_from_json(raw) -> List[WeightedSquare]:
    if not isinstance(raw, list):
        raise FormatError("sigma lists must be arrays")
    out = []
    for entry in raw:
        if not isinstance(entry, dict) or "weight" not in entry or "poly" not in entry:
            raise FormatError("each square needs 'weight' and 'poly'")
        try:
            poly = parse_poly(entry["poly"], allowed=("X", "Y"))
        except (PolyParseError, UnknownVariable) as exc:
            raise FormatError(f"bad poly text: {exc}")
        out.append(WeightedSquare(_weight_from_json(entry["weight"]), poly))
    return out


def certificate_from_dict(data: dict) -> Certificate:
    if not isinstance(data, dict):
        raise FormatError("certificate must be a JSON object")
    for key in ("f", "pipeline", "mode", "sigma0", "sigma1", "degrees"):
        if key not in data:
            raise FormatError(f"missing field {key!r}")
    try:
        f = parse_poly(data["f"], allowed=("X", "Y"))
    except (PolyParseError, UnknownVariable) as exc:
        raise FormatError(f"bad f text: {exc}")
    mode = data["mode"]
    if mode not in ("exact", "numeric"):
        raise FormatError(f"bad mode {mode!r}")
    degrees = data["degrees"]
    if (
        not isinstance(degrees, list)
        or len(degrees) != 2
        or not all(isinstance(x, int) for x in degrees)
    ):
        raise FormatError("degrees must be a pair of integers")
    n_used = data.get("N")
    if n_used is not None and not isinstance(n_used, int):
        raise FormatError("N must be an integer or null")
    raw_res = data.get("residual", "0")
    residual = Fraction(raw_res) if isinstance(raw_res, str) else Fraction(float(raw_res))
    return Certificate(
        f=f,
        sigma0=_squares_from_json(data["sigma0"]),
        sigma1=_squares_from_json(data["sigma1"]),
        pipeline=data["pipeline"],
        mode=mode,
        n_used=n_used,
        degrees=(degrees[0], degrees[1]),
        residual=residual,
    )


def certificate_from_json(text: str) -> Certificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}")
    return certificate_from_dict(data)

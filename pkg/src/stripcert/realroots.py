"""Exact univariate real-root machinery.

Everything here is decision-complete over Q: Sturm chains for root counting,
Yun square-free decomposition, bisection-based root isolation with rational
witness intervals, nonnegativity tests on R and on [0,1], and exact
minimization of polynomials and rational functions over [0,1].

Univariate polynomials arrive as :class:`RatPoly` values using at most one
variable; internally they become dense coefficient lists of Fractions.
Intervals follow the half-open convention (a, b], so adjacent intervals tile
without double counting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import InternalInvariant, ZeroPolynomial
from .polyring import RatPoly

Dense = List[Fraction]


# ---------------------------------------------------------------------------
# dense representation
# ---------------------------------------------------------------------------


def _trim(coeffs: Dense) -> Dense:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def to_dense(p: RatPoly) -> Tuple[Dense, str]:
    """Dense coefficient list (ascending powers) plus the variable name."""
    used = p.varset()
    if len(used) > 1:
        raise ValueError(f"polynomial is not univariate: uses {sorted(used)}")
    var = used.pop() if used else "X"
    n = max(0, p.degree(var))
    coeffs = [Fraction(0)] * (n + 1)
    for exp, c in p.items():
        coeffs[sum(exp)] = c
    return _trim(coeffs), var


def from_dense(coeffs: Dense, var: str = "X") -> RatPoly:
    p = RatPoly.zero()
    for i, c in enumerate(coeffs):
        if c:
            p = p + RatPoly.monomial(c, **{var.lower(): i})
    return p


def _deg(p: Dense) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def _eval(p: Dense, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _add(p: Dense, q: Dense) -> Dense:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _neg(p: Dense) -> Dense:
    return [-c for c in p]

def _sub(p: Dense, q: Dense) -> Dense:
    return _add(p, _neg(q))


def _mul(p: Dense, q: Dense) -> Dense:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return _trim(out)


def _scale(p: Dense, c: Fraction) -> Dense:
    if c == 0:
        return []
    return [a * c for a in p]


def _divmod(p: Dense, q: Dense) -> Tuple[Dense, Dense]:
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(p)
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    dq = _deg(q)
    lead = q[-1]
    while _deg(rem) >= dq:
        shift = _deg(rem) - dq
        factor = rem[-1] / lead
        quo[shift] = factor
        for i, c in enumerate(q):
            rem[shift + i] -= factor * c
        _trim(rem)
    return _trim(quo), rem


def _divexact(p: Dense, q: Dense) -> Dense:
    quo, rem = _divmod(p, q)
    if rem:
        raise InternalInvariant("expected exact polynomial division")
    return quo


def _derivative(p: Dense) -> Dense:
    return _trim([p[i] * i for i in range(1, len(p))])


def _monic(p: Dense) -> Dense:
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def _gcd(p: Dense, q: Dense) -> Dense:
    a, b = list(p), list(q)
    while b:
        a, b = b, _divmod(a, b)[1]
        # keep coefficients small; gcd is defined up to a constant anyway
        b = _monic(b) if b else b
    return _monic(a)


def _cauchy_bound(p: Dense) -> Fraction:
    """All real roots of p lie in (-B, B]."""
    if _deg(p) < 1:
        return Fraction(1)
    lead = abs(p[-1])
    return Fraction(1) + max(abs(c) for c in p[:-1]) / lead


# ---------------------------------------------------------------------------
# Sturm chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SturmChain:
    """Signed remainder sequence p, p', -rem(...), ... as RatPoly values."""

    sequence: Tuple[RatPoly, ...]

    def variations_at(self, x) -> int:
        x = Fraction(x)
        dense = [to_dense(q)[0] for q in self.sequence]
        return _variations([_eval(d, x) for d in dense])


def _variations(values) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _sturm_dense(p: Dense) -> List[Dense]:
    chain = [list(p)]
    d = _derivative(p)
    if d:
        chain.append(d)
        while _deg(chain[-1]) > 0:
            rem = _divmod(chain[-2], chain[-1])[1]
            if not rem:
                break
            chain.append(_neg(rem))
    return chain


def sturm_chain(p: RatPoly) -> SturmChain:
    if p.is_zero():
        raise ZeroPolynomial("Sturm chain of the zero polynomial")
    dense, var = to_dense(p)
    return SturmChain(tuple(from_dense(q, var) for q in _sturm_dense(dense)))


def _count_dense(chain: List[Dense], a: Fraction, b: Fraction) -> int:
    """Distinct roots in (a, b] for a chain built from a square-free poly."""
    va = _variations([_eval(q, a) for q in chain])
    vb = _variations([_eval(q, b) for q in chain])
    return va - vb


def _squarefree_part(p: Dense) -> Dense:
    if _deg(p) <= 0:
        return _monic(p)
    g = _gcd(p, _derivative(p))
    if _deg(g) <= 0:
        return _monic(p)
    return _monic(_divexact(p, g))


def count_roots_in(p: RatPoly, a, b) -> int:
    """Number of distinct real roots of p in (a, b]."""
    if p.is_zero():
        raise ZeroPolynomial("root counting needs a nonzero polynomial")
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("empty interval: need a < b")
    dense, _ = to_dense(p)
    sf = _squarefree_part(dense)
    if _deg(sf) <= 0:
        return 0
    return _count_dense(_sturm_dense(sf), a, b)


def count_roots_closed_01(p: RatPoly) -> int:
    """Distinct real roots in the closed interval [0, 1]."""
    dense, _ = to_dense(p)
    at0 = 1 if _eval(dense, Fraction(0)) == 0 else 0
    return count_roots_in(p, 0, 1) + at0


# ---------------------------------------------------------------------------
# square-free decomposition (Yun)
# ---------------------------------------------------------------------------


def squarefree_decompose(p: RatPoly):
    """Yun decomposition p = lc(p) * prod f_i^{m_i} with monic square-free
    pairwise-coprime factors.  Constants decompose to an empty list.
    """
    if p.is_zero():
        raise ZeroPolynomial("square-free decomposition of zero")
    dense, var = to_dense(p)
    if _deg(dense) <= 0:
        return []
    f = _monic(dense)
    df = _derivative(f)
    a = _gcd(f, df)
    out = []
    if _deg(a) <= 0:
        return [(from_dense(f, var), 1)]
    b = _divexact(f, a)
    c = _divexact(df, a)
    d = _sub(c, _derivative(b))
    i = 1
    while _deg(b) > 0:
        a = _gcd(b, d)
        if _deg(a) > 0:
            out.append((from_dense(a, var), i))
        b = _divexact(b, a)
        c = _divexact(d, a)
        d = _sub(c, _derivative(b))
        i += 1
    return out


def leading_coeff(p: RatPoly) -> Fraction:
    dense, _ = to_dense(p)
    if not dense:
        return Fraction(0)
    return dense[-1]


def poly_divmod(p: RatPoly, q: RatPoly) -> Tuple[RatPoly, RatPoly]:
    """Univariate division with remainder, as RatPoly values."""
    pd, pvar = to_dense(p)
    qd, qvar = to_dense(q)
    var = pvar if len(pd) >= len(qd) else qvar
    quo, rem = _divmod(pd, qd)
    return from_dense(quo, var), from_dense(rem, var)


def poly_divexact(p: RatPoly, q: RatPoly) -> RatPoly:
    """Exact univariate division; raises InternalInvariant on a remainder."""
    quo, rem = poly_divmod(p, q)
    if not rem.is_zero():
        raise InternalInvariant("expected exact polynomial division")
    return quo


def poly_gcd(p: RatPoly, q: RatPoly) -> RatPoly:
    """Monic univariate gcd."""
    pd, pvar = to_dense(p)
    qd, qvar = to_dense(q)
    var = pvar if len(pd) >= len(qd) else qvar
    return from_dense(_gcd(pd, qd), var)


# ---------------------------------------------------------------------------
# root isolation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootWitness:
    """One isolated real root: a square-free defining polynomial, a rational
    half-open interval (a, b] containing exactly that root of it, and the
    multiplicity with respect to the original input."""

    defining: RatPoly
    interval: Tuple[Fraction, Fraction]
    multiplicity: int

    def midpoint(self) -> Fraction:
        a, b = self.interval
        return (a + b) / 2

    def is_rational_at(self) -> Optional[Fraction]:
        """The root itself when it sits at the right endpoint, else None."""
        dense, _ = to_dense(self.defining)
        b = self.interval[1]
        return b if _eval(dense, b) == 0 else None


def _shrink_left(f: Dense, chain: List[Dense], lo: Fraction, hi: Fraction) -> Fraction:
    """Move lo upward until f(lo) != 0 while keeping the single root inside."""
    step = (hi - lo) / 2
    cand = lo + step
    while True:
        if _eval(f, cand) != 0 and _count_dense(chain, cand, hi) == 1:
            return cand
        step /= 2
        cand = lo + step
        if step == 0:  # pragma: no cover - unreachable with exact rationals
            raise InternalInvariant("failed to shrink isolation interval")


def _isolate_squarefree(f: Dense, a: Fraction, b: Fraction) -> List[Tuple[Fraction, Fraction]]:
    chain = _sturm_dense(f)
    total = _count_dense(chain, a, b)
    out = []
    queue = [(a, b, total)]
    while queue:
        lo, hi, count = queue.pop()
        if count == 0:
            continue
        if count == 1:
            if _eval(f, lo) == 0:
                lo = _shrink_left(f, chain, lo, hi)
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        left = _count_dense(chain, lo, mid)
        queue.append((lo, mid, left))
        queue.append((mid, hi, count - left))
    return sorted(out)


def _refine_interval(f: Dense, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Halve an isolating interval of a square-free f, keeping its root."""
    mid = (lo + hi) / 2
    fmid = _eval(f, mid)
    if fmid == 0:
        # the root is exactly mid: bracket it from below
        cand = (lo + mid) / 2
        while _eval(f, cand) == 0 or _count_dense(_sturm_dense(f), cand, mid) != 1:
            cand = (cand + mid) / 2
        return (cand, mid)
    if _eval(f, lo) * fmid < 0:
        return (lo, mid)
    return (mid, hi)


def refine_witness(w: RootWitness, rounds: int = 1) -> RootWitness:
    dense, _ = to_dense(w.defining)
    lo, hi = w.interval
    for _ in range(rounds):
        lo, hi = _refine_interval(dense, lo, hi)
    return RootWitness(w.defining, (lo, hi), w.multiplicity)


def isolate_roots(p: RatPoly, a, b) -> List[RootWitness]:
    """Disjoint isolating intervals for all real roots of p in (a, b]."""
    if p.is_zero():
        raise ZeroPolynomial("root isolation needs a nonzero polynomial")
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("empty interval: need a < b")
    witnesses: List[RootWitness] = []
    for factor, mult in squarefree_decompose(p):
        dense, _ = to_dense(factor)
        for lo, hi in _isolate_squarefree(dense, a, b):
            witnesses.append(RootWitness(factor, (lo, hi), mult))
    # different factors are coprime, so refinement separates their intervals
    changed = True
    while changed:
        changed = False
        witnesses.sort(key=lambda w: w.interval)
        for i in range(len(witnesses) - 1):
            u, v = witnesses[i], witnesses[i + 1]
            if u.interval[1] > v.interval[0]:
                witnesses[i] = refine_witness(u)
                witnesses[i + 1] = refine_witness(v)
                changed = True
    return witnesses


# ---------------------------------------------------------------------------
# rational identification and signs at algebraic points
# ---------------------------------------------------------------------------


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest-denominator rational in the closed interval [lo, hi]."""
    if lo > hi:
        raise ValueError("empty interval")
    fl = math.floor(lo)
    if fl + 1 <= hi:
        if lo <= fl:
            return Fraction(fl)
        return Fraction(fl + 1)
    if lo == fl:
        return Fraction(fl)
    frac = _simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / frac


def identify_rational_root(w: RootWitness, max_rounds: int = 64) -> Optional[Fraction]:
    """The root as an exact rational if it is one, else None."""
    dense, _ = to_dense(w.defining)
    lo, hi = w.interval
    if _eval(dense, hi) == 0:
        return hi
    for _ in range(max_rounds):
        cand = _simplest_between(lo, hi)
        if _eval(dense, cand) == 0:
            return cand
        lo, hi = _refine_interval(dense, lo, hi)
        if _eval(dense, hi) == 0:
            return hi
    return None


def sign_at_root(h: RatPoly, w: RootWitness, max_rounds: int = 256) -> int:
    """Exact sign of h at the algebraic root described by the witness."""
    if h.is_zero():
        return 0
    hd, _ = to_dense(h)
    fd, _ = to_dense(w.defining)
    g = _gcd(fd, hd)
    lo, hi = w.interval
    if _deg(g) > 0:
        # the root is a common root iff g has a root in the isolating interval
        gchain = _sturm_dense(g)
        if _count_dense(gchain, lo, hi) > 0:
            # g | defining, whose only root here is w's root
            return 0
    hchain = _sturm_dense(_squarefree_part(hd))
    for _ in range(max_rounds):
        if _eval(hd, lo) != 0 and _count_dense(hchain, lo, hi) == 0:
            val = _eval(hd, (lo + hi) / 2)
            if val == 0:  # midpoint accidentally a root: refine more
                lo, hi = _refine_interval(fd, lo, hi)
                continue
            return 1 if val > 0 else -1
        lo, hi = _refine_interval(fd, lo, hi)
    raise InternalInvariant("sign_at_root failed to separate")  # pragma: no cover


# ---------------------------------------------------------------------------
# nonnegativity decisions
# ---------------------------------------------------------------------------


def is_nonneg_on_R(p: RatPoly) -> bool:
    """Exact decision of p(t) >= 0 for all real t."""
    if p.is_zero():
        return True
    dense, _ = to_dense(p)
    if _deg(dense) == 0:
        return dense[0] > 0
    if _deg(dense) % 2 == 1 or dense[-1] < 0:
        return False
    bound = _cauchy_bound(dense)
    for factor, mult in squarefree_decompose(p):
        if mult % 2 == 1:
            fd, _ = to_dense(factor)
            if _deg(fd) >= 1 and _count_dense(_sturm_dense(fd), -bound, bound) > 0:
                return False
    return True


def is_nonneg_on_01(p: RatPoly) -> bool:
    """Exact decision of p >= 0 on the closed interval [0, 1]."""
    if p.is_zero():
        return True
    dense, _ = to_dense(p)
    if _eval(dense, Fraction(0)) < 0 or _eval(dense, Fraction(1)) < 0:
        return False
    if _deg(dense) == 0:
        return dense[0] > 0
    # a sign change inside (0,1) happens exactly at an odd-multiplicity root
    for factor, mult in squarefree_decompose(p):
        if mult % 2 == 1:
            fd, _ = to_dense(factor)
            if _deg(fd) < 1:
                continue
            inside = _count_dense(_sturm_dense(fd), Fraction(0), Fraction(1))
            if _eval(fd, Fraction(1)) == 0:
                inside -= 1
            if inside > 0:
                return False
    # constant sign on (0,1); one non-root sample decides it
    n = _deg(dense)
    for k in range(1, n + 2):
        v = _eval(dense, Fraction(k, n + 2))
        if v != 0:
            return v > 0
    raise InternalInvariant("nonzero polynomial vanished at deg+1 points")  # pragma: no cover


def negativity_witness_on_01(p: RatPoly, samples: int = 64) -> Optional[Fraction]:
    """A rational x in [0,1] with p(x) < 0, when one exists (best effort by
    refinement; None only if p >= 0 on [0,1])."""
    if is_nonneg_on_01(p):
        return None
    dense, _ = to_dense(p)
    for k in range(samples + 1):
        x = Fraction(k, samples)
        if _eval(dense, x) < 0:
            return x
    # fall back to bisection around odd roots
    grid = samples
    while True:
        grid *= 2
        for k in range(grid + 1):
            x = Fraction(k, grid)
            if _eval(dense, x) < 0:
                return x


def root_bound(p: RatPoly) -> Fraction:
    dense, _ = to_dense(p)
    return _cauchy_bound(dense)


# ---------------------------------------------------------------------------
# exact minimization over [0,1]
# ---------------------------------------------------------------------------


def minimize_ratio_01(num: RatPoly, den: RatPoly) -> Optional[Tuple[Fraction, Fraction]]:
    """Exact (value, argmin) of num/den over [0,1], or None when the minimum
    is attained only at an unidentified irrational point.

    Requires den > 0 on [0,1].  Candidates are the endpoints and the interior
    critical points; irrational critical points are compared exactly against
    the best rational candidate via Sturm-based sign evaluation.
    """
    nd, nv = to_dense(num)
    dd, dv = to_dense(den)
    if not dd:
        raise ZeroDivisionError("zero denominator")
    var = nv if _deg(nd) > 0 else dv

    def value_at(x: Fraction) -> Fraction:
        return _eval(nd, x) / _eval(dd, x)

    best_v, best_x = value_at(Fraction(0)), Fraction(0)
    v1 = value_at(Fraction(1))
    if v1 < best_v:
        best_v, best_x = v1, Fraction(1)

    crit = _sub(_mul(_derivative(nd), dd), _mul(nd, _derivative(dd)))
    if not crit or _deg(crit) == 0:
        return best_v, best_x

    crit_poly = from_dense(crit, var)
    pending = []
    for w in isolate_roots(crit_poly, Fraction(0), Fraction(1)):
        root = identify_rational_root(w, max_rounds=48)
        if root is not None:
            if root == 1:
                continue
            v = value_at(root)
            if v < best_v:
                best_v, best_x = v, root
        else:
            pending.append(w)
    for w in pending:
        # sign of num - best_v * den at the irrational critical point
        h = num - den.scale(best_v)
        s = sign_at_root(h, w)
        if s < 0:
            return None  # the true minimum is irrational
    return best_v, best_x


def minimize_poly_01(p: RatPoly) -> Optional[Tuple[Fraction, Fraction]]:
    return minimize_ratio_01(p, RatPoly.const(1))

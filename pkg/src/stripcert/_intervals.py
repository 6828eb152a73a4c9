"""Interval arithmetic with exact rational endpoints.

Used by the certified lower-bound search: because endpoints are Fractions,
no directed rounding is needed and every enclosure is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

from .polyring import VARS, RatPoly


@dataclass(frozen=True)
class IntervalQ:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @staticmethod
    def point(v) -> "IntervalQ":
        v = Fraction(v)
        return IntervalQ(v, v)

    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other: "IntervalQ") -> "IntervalQ":
        return IntervalQ(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "IntervalQ") -> "IntervalQ":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return IntervalQ(min(products), max(products))

    def scale(self, c: Fraction) -> "IntervalQ":
        a, b = self.lo * c, self.hi * c
        return IntervalQ(min(a, b), max(a, b))

    def power(self, n: int) -> "IntervalQ":
        if n == 0:
            return IntervalQ.point(1)
        lo_n, hi_n = self.lo**n, self.hi**n
        if n % 2 == 1:
            return IntervalQ(lo_n, hi_n)
        if self.lo >= 0:
            return IntervalQ(lo_n, hi_n)
        if self.hi <= 0:
            return IntervalQ(hi_n, lo_n)
        return IntervalQ(Fraction(0), max(lo_n, hi_n))

    def divide_by_positive(self, den: "IntervalQ") -> "IntervalQ":
        if den.lo <= 0:
            raise ValueError("denominator interval must be strictly positive")
        candidates = (
            self.lo / den.lo,
            self.lo / den.hi,
            self.hi / den.lo,
            self.hi / den.hi,
        )
        return IntervalQ(min(candidates), max(candidates))


def eval_box(p: RatPoly, box: Dict[str, IntervalQ]) -> IntervalQ:
    """Monomial-wise interval enclosure of p over a box."""
    total = IntervalQ.point(0)
    for exp, coeff in p.items():
        term = IntervalQ.point(coeff)
        for i, e in enumerate(exp):
            if e:
                term = term * box[VARS[i]].power(e)
        total = total + term
    return total


def eval_box_horner(p: RatPoly, box: Dict[str, IntervalQ]) -> IntervalQ:
    """Nested-Horner interval enclosure; much tighter than monomial-wise
    evaluation when powers of one variable dominate."""
    used = [v for v in VARS if p.degree(v) > 0]
    if not used:
        c = p.coeff((0, 0, 0, 0)) if not p.is_zero() else 0
        return IntervalQ.point(c)
    var = max(used, key=lambda v: p.degree(v))
    n = p.degree(var)
    iv = box[var]
    acc = eval_box_horner(p.coeff_in_var(var, n), box)
    for k in range(n - 1, -1, -1):
        acc = acc * iv + eval_box_horner(p.coeff_in_var(var, k), box)
    return acc

"""Exact sparse polynomial arithmetic over the rationals.

The single carrier type is :class:`RatPoly`: a sparse map from exponent
vectors (w, x, y, z) to nonzero ``Fraction`` coefficients.  All arithmetic
is exact; no floating point value ever enters this module.  The four
variables W, X, Y, Z are fixed; polynomials simply use a subset of them.

Besides ring arithmetic the module provides the two lifting operators used
by the strip certificate pipelines (Y-homogenization with Z, and the double
lift that also homogenizes X against W), the two coefficient norms, the
canonical text rendering and the matching parser.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .errors import (
    InvalidTarget,
    NotHomogeneous,
    PolyParseError,
    UnknownVariable,
    ZeroPolynomial,
)

VARS = ("W", "X", "Y", "Z")
_VAR_INDEX = {name: i for i, name in enumerate(VARS)}

Exponent = Tuple[int, int, int, int]

_ZERO_EXP: Exponent = (0, 0, 0, 0)


def _q(value) -> Fraction:
    """Coerce ints / strings / Fractions to Fraction (floats are accepted
    and converted exactly; callers in numeric mode rely on this)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value)
    return Fraction(value)


@dataclass(frozen=True)
class DegreeProfile:
    """Per-variable and total degrees; the zero polynomial is flagged."""

    is_zero: bool
    total: int
    deg_w: int
    deg_x: int
    deg_y: int
    deg_z: int

    @property
    def d(self) -> int:
        """X-degree (the parameter d of the certificate pipelines)."""
        return self.deg_x

    @property
    def m(self) -> int:
        """Y-degree (the parameter m of the certificate pipelines)."""
        return self.deg_y


_ZERO_PROFILE = DegreeProfile(True, 0, 0, 0, 0, 0)


class RatPoly:
    """Immutable sparse polynomial in W, X, Y, Z over Q.

    ``terms`` maps exponent 4-tuples to nonzero Fractions.  Instances are
    value objects: hashable, comparable by content, safe to share.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Fraction] | None = None):
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = _q(coeff)
                if c != 0:
                    if len(exp) != 4 or any(e < 0 for e in exp):
                        raise ValueError(f"bad exponent vector {exp!r}")
                    clean[tuple(exp)] = c
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero() -> "RatPoly":
        return _ZERO

    @staticmethod
    def const(value) -> "RatPoly":
        return RatPoly({_ZERO_EXP: _q(value)})

    @staticmethod
    def var(name: str) -> "RatPoly":
        exp = [0, 0, 0, 0]
        exp[_VAR_INDEX[name]] = 1
        return RatPoly({tuple(exp): Fraction(1)})

    @staticmethod
    def monomial(coeff, w=0, x=0, y=0, z=0) -> "RatPoly":
        return RatPoly({(w, x, y, z): _q(coeff)})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def varset(self) -> set:
        used = set()
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(VARS[i])
        return used

    def profile(self) -> DegreeProfile:
        if not self._terms:
            return _ZERO_PROFILE
        total = max(sum(exp) for exp in self._terms)
        degs = [max(exp[i] for exp in self._terms) for i in range(4)]
        return DegreeProfile(False, total, *degs)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(exp) for exp in self._terms)

    def degree(self, name: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        i = _VAR_INDEX[name]
        return max(exp[i] for exp in self._terms)

    def coeff(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (raises if nonconstant)."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) != {_ZERO_EXP}:
            raise ValueError("polynomial is not constant")
        return self._terms[_ZERO_EXP]

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {_ZERO_EXP}

    def coeff_in_var(self, name: str, power: int) -> "RatPoly":
        """Coefficient of name**power, a polynomial in the other variables."""
        i = _VAR_INDEX[name]
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            if exp[i] == power:
                reduced = list(exp)
                reduced[i] = 0
                out[tuple(reduced)] = c
        return RatPoly(out)

    def is_homogeneous_in(self, names: Iterable[str]) -> bool:
        idx = [_VAR_INDEX[n] for n in names]
        degs = {sum(exp[i] for i in idx) for exp in self._terms}
        return len(degs) <= 1

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "RatPoly":
        other = _coerce(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return _wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return _wrap({exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other) -> "RatPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "RatPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "RatPoly":
        other = _coerce(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                s = out.get(exp, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return _wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = RatPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, value) -> "RatPoly":
        c = _q(value)
        if c == 0:
            return _ZERO
        return _wrap({exp: co * c for exp, co in self._terms.items()})

    def derivative(self, name: str) -> "RatPoly":
        i = _VAR_INDEX[name]
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            if exp[i] > 0:
                reduced = list(exp)
                reduced[i] -= 1
                out[tuple(reduced)] = c * exp[i]
        return RatPoly(out)

    def substitute(self, name: str, replacement: "RatPoly") -> "RatPoly":
        """Substitute a polynomial for one variable (exact)."""
        replacement = _coerce(replacement)
        i = _VAR_INDEX[name]
        powers: Dict[int, RatPoly] = {0: RatPoly.const(1)}

        def power(k: int) -> RatPoly:
            if k not in powers:
                powers[k] = power(k - 1) * replacement
            return powers[k]

        result = _ZERO
        for exp, c in self._terms.items():
            rest = list(exp)
            k = rest[i]
            rest[i] = 0
            result = result + RatPoly({tuple(rest): c}) * power(k)
        return result

    def eval(self, **values) -> Fraction:
        """Evaluate at a rational point; every used variable must be given."""
        point = {}
        for name, val in values.items():
            point[_VAR_INDEX[name]] = _q(val)
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for i, e in enumerate(exp):
                if e:
                    if i not in point:
                        raise ValueError(f"no value supplied for {VARS[i]}")
                    term *= point[i] ** e
            total += term
        return total

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatPoly.const(other)
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"RatPoly({render(self)})"


_ZERO = RatPoly()


def _wrap(terms: Dict[Exponent, Fraction]) -> RatPoly:
    p = RatPoly.__new__(RatPoly)
    object.__setattr__(p, "_terms", terms)
    object.__setattr__(p, "_hash", None)
    return p


def _coerce(value) -> RatPoly:
    if isinstance(value, RatPoly):
        return value
    return RatPoly.const(value)


# Convenience singletons used throughout the package.
W = RatPoly.var("W")
X = RatPoly.var("X")
Y = RatPoly.var("Y")
Z = RatPoly.var("Z")
ONE = RatPoly.const(1)
ONE_MINUS_X = ONE - X


def _grlex_key(exp: Exponent):
    # graded-lex, descending: higher total degree first, then lexicographically
    # larger exponent vector (W > X > Y > Z) first.
    return (-sum(exp), tuple(-e for e in exp))


def render(p: RatPoly) -> str:
    """Canonical text form: graded-lex term order, rationals as p/q."""
    if p.is_zero():
        return "0"
    parts = []
    for exp in sorted(p._terms, key=_grlex_key):
        c = p._terms[exp]
        mono = "*".join(
            f"{VARS[i]}^{e}" if e > 1 else VARS[i] for i, e in enumerate(exp) if e
        )
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{' + ' if c > 0 else ' - '}{body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# Parsing.  Grammar (whitespace-insensitive):
#   expr   := ['+'|'-'] term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := atom ['^' integer]
#   atom   := rational | variable | '(' expr ')'
#   rational := integer ['/' integer]
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, allowed: tuple):
        self.text = text
        self.pos = 0
        self.allowed = allowed

    def error(self, message):
        raise PolyParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        if self.pos < len(self.text):
            return self.text[self.pos]
        return ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def parse(self) -> RatPoly:
        result = self.parse_expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return result

    def parse_expr(self) -> RatPoly:
        negative = False
        while True:
            if self.take("-"):
                negative = not negative
            elif self.take("+"):
                pass
            else:
                break
        total = self.parse_term()
        if negative:
            total = -total
        while True:
            if self.take("+"):
                total = total + self.parse_term()
            elif self.take("-"):
                total = total - self.parse_term()
            else:
                return total

    def parse_term(self) -> RatPoly:
        result = self.parse_factor()
        while self.take("*"):
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> RatPoly:
        negative = False
        while True:
            if self.take("-"):
                negative = not negative
            elif self.take("+"):
                pass
            else:
                break
        atom = self.parse_atom()
        if self.take("^"):
            exp = self.parse_integer()
            atom = atom**exp
        return -atom if negative else atom

    def parse_integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def parse_atom(self) -> RatPoly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.parse_expr()
            if not self.take(")"):
                self.error("expected ')'")
            return inner
        if ch.isdigit():
            num = self.parse_integer()
            if self.take("/"):
                den = self.parse_integer()
                if den == 0:
                    self.error("zero denominator")
                return RatPoly.const(Fraction(num, den))
            return RatPoly.const(num)
        if ch.isalpha():
            pos = self.pos
            name = ch
            self.pos += 1
            # reject multi-letter names outright
            if self.pos < len(self.text) and self.text[self.pos].isalpha():
                while self.pos < len(self.text) and self.text[self.pos].isalpha():
                    name += self.text[self.pos]
                    self.pos += 1
                raise UnknownVariable(name, pos, self.allowed)
            if name not in self.allowed:
                raise UnknownVariable(name, pos, self.allowed)
            return RatPoly.var(name)
        if ch == "":
            self.error("unexpected end of input")
        self.error(f"unexpected {ch!r}")


def parse_poly(text: str, allowed: tuple = ("X", "Y")) -> RatPoly:
    """Parse the canonical text form.  ``allowed`` restricts variable names;
    the command line accepts X and Y only, internal tools may allow all four.
    """
    return _Parser(text, tuple(allowed)).parse()


# ---------------------------------------------------------------------------
# Lifting operators and norms.
# ---------------------------------------------------------------------------


def homogenize_bar(f: RatPoly, target_m: int) -> RatPoly:
    """Homogenize in (Y, Z) to degree target_m: each Y^i picks up Z^(m-i).

    Substituting Z = 1 recovers f.
    """
    if f.varset() - {"X", "Y"}:
        raise ValueError("input must use only X and Y")
    deg_y = max(0, f.degree("Y"))
    if target_m < deg_y:
        raise InvalidTarget(f"target_m={target_m} < deg_Y f={deg_y}")
    out: Dict[Exponent, Fraction] = {}
    for (w, x, y, z), c in f.items():
        out[(w, x, y, target_m - y)] = c
    return RatPoly(out)


def lift_F(f: RatPoly) -> RatPoly:
    """Double lift: X^j becomes X^j (W+X)^(d-j) and Y^i becomes Y^i Z^(m-i).

    The result is homogeneous of degree d = deg_X f in (W, X) and of degree
    m = deg_Y f in (Y, Z); substituting W = 1-X, Z = 1 recovers f.
    """
    if f.is_zero():
        raise ZeroPolynomial("lift_F of the zero polynomial")
    if f.varset() - {"X", "Y"}:
        raise ValueError("input must use only X and Y")
    d = max(0, f.degree("X"))
    m = max(0, f.degree("Y"))
    w_plus_x = W + X
    wx_powers = [ONE]
    for _ in range(d):
        wx_powers.append(wx_powers[-1] * w_plus_x)
    result = _ZERO
    for (w, x, y, z), c in f.items():
        result = result + RatPoly.monomial(c, w=0, x=x, y=y, z=m - y) * wx_powers[d - x]
    return result


def inf_norm(f: RatPoly) -> Fraction:
    """Largest coefficient magnitude; 0 only for the zero polynomial."""
    if f.is_zero():
        return Fraction(0)
    return max(abs(c) for _, c in f.items())


def polya_norm(g: RatPoly) -> Fraction:
    """max_j |coeff of W^j X^(d-j)| / C(d, j) for g homogeneous in (W, X)."""
    if g.varset() - {"W", "X"}:
        raise ValueError("input must use only W and X")
    if g.is_zero():
        return Fraction(0)
    if not g.is_homogeneous_in(("W", "X")):
        raise NotHomogeneous("polya_norm needs a (W,X)-homogeneous input")
    d = g.total_degree()
    best = Fraction(0)
    for (w, x, _, _), c in g.items():
        best = max(best, abs(c) / math.comb(d, w))
    return best

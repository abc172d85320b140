"""Exact arithmetic in Q[q] and Q(q), orbit-partition polynomials, and
membership tests for the inertia eigenvalue families.

Polynomials are dense coefficient tuples over ``fractions.Fraction`` (no
floating point anywhere).  Rational functions are kept reduced with a monic
denominator so equality is structural.  The eigenvalue families are

* full:        n * q^u * prod_i (q^{r_i} - 1)
* semisimple:  n * prod_i (q^{r_i} - 1)          (u forced to 0)
* unipotent:   q^u                                (n = 1, no factors)

with n a positive integer.  ``spectrum_decompose`` recovers (n, u, {r_i})
or reports non-membership.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class Polynomial:
    """A univariate polynomial over Q in the formal variable q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *args):  # immutable by construction
        raise AttributeError("Polynomial is immutable")

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial((1,))

    @staticmethod
    def constant(c) -> "Polynomial":
        return Polynomial((Fraction(c),))

    @staticmethod
    def q() -> "Polynomial":
        return Polynomial((0, 1))

    @staticmethod
    def monomial(c, k: int) -> "Polynomial":
        return Polynomial((0,) * k + (Fraction(c),))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def valuation(self) -> int:
        """Multiplicity of the root q = 0 (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "Polynomial":
        other = _coerce_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            tuple(self.coefficient(i) + other.coefficient(i) for i in range(n))
        )

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        return self + (-_coerce_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _coerce_poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _coerce_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        other = _coerce_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq, dr = other.degree, len(rem) - 1
        quot = [Fraction(0)] * max(dr - dq + 1, 0)
        lead = other.coeffs[-1]
        while dr >= dq and any(c != 0 for c in rem):
            while dr >= 0 and rem[dr] == 0:
                dr -= 1
            if dr < dq:
                break
            f = rem[dr] / lead
            quot[dr - dq] = f
            for i, c in enumerate(other.coeffs):
                rem[dr - dq + i] -= f * c
            dr -= 1
        return Polynomial(tuple(quot)), Polynomial(tuple(rem))

    def __floordiv__(self, other) -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other) -> "Polynomial":
        return self.divmod(other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        quot, rem = self.divmod(other)
        if not rem.is_zero():
            raise ValueError(f"{self} is not divisible by {other}")
        return quot

    def __truediv__(self, other) -> "RationalFunction":
        return RationalFunction(self, _coerce_poly(other))

    def evaluate(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Polynomial(tuple(c / lead for c in self.coeffs))

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integer_content(self) -> int:
        """gcd of the (integer) coefficients; 0 for the zero polynomial."""
        if not self.has_integer_coeffs():
            raise ValueError("polynomial does not have integer coefficients")
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c.numerator))
        return g

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def _coerce_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.constant(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Polynomial")


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


Q = Polynomial.q()
ONE = Polynomial.one()


class RationalFunction:
    """A reduced ratio of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = Polynomial.zero(), ONE
        else:
            g = poly_gcd(num, den)
            num, den = num.exact_div(g), den.exact_div(g)
            lead = den.coeffs[-1]
            if lead != 1:
                num = num * Polynomial.constant(1 / lead)
                den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *args):
        raise AttributeError("RationalFunction is immutable")

    @staticmethod
    def zero() -> "RationalFunction":
        return RationalFunction(Polynomial.zero())

    @staticmethod
    def one() -> "RationalFunction":
        return RationalFunction(ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFunction(_coerce_poly(other))
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __add__(self, other) -> "RationalFunction":
        other = _coerce_rf(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        return self + (-_coerce_rf(other))

    def __rsub__(self, other) -> "RationalFunction":
        return _coerce_rf(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = _coerce_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = _coerce_rf(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return _coerce_rf(other) / self

    def evaluate(self, x) -> Fraction:
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at q = {x}")
        return self.num.evaluate(x) / d

    def __str__(self) -> str:
        if self.is_polynomial():
            return format_polynomial(self.num)
        return f"({format_polynomial(self.num)})/({format_polynomial(self.den)})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"


def _coerce_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(_coerce_poly(x))


# ---------------------------------------------------------------------------
# printing and parsing


def format_polynomial(p: Polynomial) -> str:
    """Canonical descending-power form, e.g. ``q^2 - 2*q + 1``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coefficient(k)
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "q" if k == 1 else f"q^{k}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_TOKEN_RE = re.compile(r"\s*(\d+|q|\*\*|[-+*/^()])")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character at {text[pos:]!r}")
        tok = m.group(1)
        tokens.append("^" if tok == "**" else tok)
        pos = m.end()
    return tokens


class _ExprParser:
    """Recursive-descent parser for +, -, *, /, ^ expressions in q.

    Adjacency acts as multiplication, so ``2(q-1)`` and ``2q`` parse.
    Evaluation happens in Q(q); callers needing a polynomial check the
    denominator afterwards.
    """

    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> RationalFunction:
        value = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing tokens at {self.toks[self.i:]}")
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.signed_factor()
        while True:
            nxt = self.peek()
            if nxt in ("*", "/"):
                op = self.take()
                rhs = self.signed_factor()
                value = value * rhs if op == "*" else value / rhs
            elif nxt is not None and (nxt == "(" or nxt == "q" or nxt.isdigit()):
                value = value * self.signed_factor()
            else:
                return value

    def signed_factor(self) -> RationalFunction:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        value = self.atom()
        while self.peek() == "^":
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            value = _pow_rf(value, int(tok))
        return value if sign > 0 else -value

    def atom(self) -> RationalFunction:
        tok = self.take()
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise ValueError("unbalanced parenthesis")
            return value
        if tok == "q":
            return RationalFunction(Q)
        if tok is not None and tok.isdigit():
            return RationalFunction(Polynomial.constant(int(tok)))
        raise ValueError(f"unexpected token {tok!r}")


def _pow_rf(value: RationalFunction, k: int) -> RationalFunction:
    out = RationalFunction.one()
    for _ in range(k):
        out = out * value
    return out


def parse_rational_function(text: str) -> RationalFunction:
    """Parse an expression in q; supports + - * / ^ and parentheses."""
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty expression")
    return _ExprParser(_tokenize(stripped)).parse()


def parse_polynomial(text: str) -> Polynomial:
    """Parse an expression that reduces to a polynomial in q."""
    value = parse_rational_function(text)
    if not value.is_polynomial():
        raise ValueError(f"{text!r} is not a polynomial")
    return value.num


# ---------------------------------------------------------------------------
# partitions and eigenvalue families


@dataclass(frozen=True)
class Partition:
    """A partition recorded by block-size multiplicities.

    ``counts[i]`` is the number of blocks of size i+1; trailing zeros are
    trimmed.  The weight is the partitioned integer.
    """

    counts: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in cs):
            raise ValueError("multiplicities must be nonnegative")
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "counts", cs)

    @staticmethod
    def from_orbit_sizes(sizes) -> "Partition":
        sizes = list(sizes)
        if not sizes:
            return Partition(())
        counts = [0] * max(sizes)
        for s in sizes:
            counts[s - 1] += 1
        return Partition(tuple(counts))

    @property
    def weight(self) -> int:
        return sum((i + 1) * c for i, c in enumerate(self.counts))

    @property
    def blocks(self) -> int:
        return sum(self.counts)

    def sort_key(self) -> tuple:
        """Well-ordering: weight, then number of blocks, then lexicographic."""
        return (self.weight, self.blocks, self.counts)

    def display(self) -> str:
        """Multiplicities padded out to the weight, e.g. ``(1, 1, 0)``."""
        padded = list(self.counts) + [0] * (self.weight - len(self.counts))
        if not padded:
            return "()"
        return "(" + ", ".join(str(c) for c in padded) + ")"

    def __str__(self) -> str:
        return self.display()


def partition_polynomial(p: Partition) -> Polynomial:
    """The expanded product over block sizes i of (q^i - 1)^{multiplicity}."""
    out = Polynomial.one()
    for i, c in enumerate(p.counts, start=1):
        if c:
            out = out * (Polynomial.monomial(1, i) - ONE) ** c
    return out


@dataclass(frozen=True)
class SpectrumDecomposition:
    """p = n * q^u * prod (q^{r} - 1) over the multiset ``factors``."""

    n: int
    u: int
    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    def reconstruct(self) -> Polynomial:
        out = Polynomial.monomial(self.n, self.u)
        for r in self.factors:
            out = out * (Polynomial.monomial(1, r) - ONE)
        return out


FAMILIES = ("full", "semisimple", "unipotent")


def spectrum_decompose(p: Polynomial, family: str = "full") -> SpectrumDecomposition | None:
    """Decompose p as n * q^u * prod (q^{r_i} - 1), or None if impossible.

    The factor extraction is greedy from the residual degree downward; the
    result is independent of extraction order because q^d - 1 divides
    q^r - 1 exactly when d divides r.  Family "semisimple" additionally
    rejects u > 0 and "unipotent" rejects n != 1 or any factors.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if p.is_zero():
        raise ValueError("the zero polynomial is not in any spectrum family")
    if not p.has_integer_coeffs():
        raise ValueError("spectrum membership needs integer coefficients")
    if p.leading() < 0:
        return None
    u = p.valuation()
    residue = p.exact_div(Polynomial.monomial(1, u)) if u else p
    n = residue.integer_content()
    residue = Polynomial(tuple(c / n for c in residue.coeffs))
    factors = []
    while residue.degree > 0:
        for r in range(residue.degree, 0, -1):
            quot, rem = residue.divmod(Polynomial.monomial(1, r) - ONE)
            if rem.is_zero():
                factors.append(r)
                residue = quot
                break
        else:
            return None
    if residue != ONE:
        return None
    if family == "semisimple" and u > 0:
        return None
    if family == "unipotent" and (n != 1 or factors):
        return None
    return SpectrumDecomposition(n=n, u=u, factors=tuple(factors))

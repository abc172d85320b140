"""The Grothendieck group of finite groupoids and its inertia operators.

Elements are finite Q-linear combinations of classes [BG] of classifying
groupoids of finite groups, indexed by canonical GroupKeys.  The operators:

* ``inertia``           sends [BG] to the sum of [B Z_G(g)] over conjugacy
                        classes g of G;
* ``iterated_inertia``  applies inertia k times;
* ``inertia_r``         sends [BG] to the sum of [B stabilizer] over orbits
                        of ordered r-tuples of distinct pairwise-commuting
                        elements (r = 0 is the identity operator);
* ``projection``        extracts the eigencomponent of inertia for the
                        integer eigenvalue k via the alternating binomial
                        sum over the inertia_r family;
* ``product``           is the bilinear extension of [BG][BH] = [B(GxH)].

All coefficients are exact rationals.  Per-group operator values are cached
on the registry, so repeated projections are cheap.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .groups import (
    FiniteGroup,
    GroupKey,
    GroupRegistry,
    canonical_key,
    default_registry,
    direct_product,
)


class GroupoidClass:
    """A finite Q-linear combination of classes [BG]; zero terms are purged."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[GroupKey, Fraction] = {}
        for key, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c != 0:
                clean[key] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("GroupoidClass is immutable")

    @staticmethod
    def zero() -> "GroupoidClass":
        return GroupoidClass()

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key: GroupKey) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def support(self) -> list[GroupKey]:
        return sorted(self.terms, key=lambda k: k.label)

    def items(self):
        """(key, coefficient) pairs sorted by label."""
        return [(k, self.terms[k]) for k in self.support()]

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupoidClass) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "GroupoidClass") -> "GroupoidClass":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return GroupoidClass(out)

    def __sub__(self, other: "GroupoidClass") -> "GroupoidClass":
        return self + (-other)

    def __neg__(self) -> "GroupoidClass":
        return GroupoidClass({k: -c for k, c in self.terms.items()})

    def __mul__(self, scalar) -> "GroupoidClass":
        s = Fraction(scalar)
        return GroupoidClass({k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"GroupoidClass({format_element(self)!r})"


def class_of(group: FiniteGroup, registry: GroupRegistry | None = None) -> GroupoidClass:
    """The basis class [BG] of the isomorphism class of ``group``."""
    return GroupoidClass({canonical_key(group, registry): Fraction(1)})


def _registry(registry: GroupRegistry | None) -> GroupRegistry:
    return registry or default_registry()


# ---------------------------------------------------------------------------
# per-group operator columns, cached on the registry


def _inertia_of_label(label: str, reg: GroupRegistry) -> GroupoidClass:
    cached = reg.op_cache.get(("inertia", label))
    if cached is not None:
        return cached
    group = reg.group(label)
    center_order = group.center().group.order
    terms: dict[GroupKey, Fraction] = {}
    for cls in group.conjugacy_classes():
        cent = cls.centralizer.group
        if len(cls.members) > 1:
            # triangularity rests on these strict inequalities
            assert center_order < cent.order < group.order, (
                f"centralizer order chain violated for {label}"
            )
        key = canonical_key(cent, reg)
        terms[key] = terms.get(key, Fraction(0)) + 1
    result = GroupoidClass(terms)
    reg.op_cache[("inertia", label)] = result
    return result


def _inertia_r_of_label(label: str, r: int, reg: GroupRegistry) -> GroupoidClass:
    cached = reg.op_cache.get(("inertia_r", label, r))
    if cached is not None:
        return cached
    group = reg.group(label)
    if r == 0:
        result = GroupoidClass({GroupKey(label): Fraction(1)})
    elif group.is_abelian():
        # every tuple is central: r! * C(n, r) singleton orbits
        count = factorial(r) * comb(group.order, r)
        result = GroupoidClass({GroupKey(label): Fraction(count)})
    else:
        terms: dict[GroupKey, Fraction] = {}
        for _, pointwise, multiplicity in group.commuting_set_orbit_data(r):
            key = canonical_key(pointwise.group, reg)
            terms[key] = terms.get(key, Fraction(0)) + multiplicity
        result = GroupoidClass(terms)
    reg.op_cache[("inertia_r", label, r)] = result
    return result


def _max_tuple_length(label: str, reg: GroupRegistry) -> int:
    """Largest r admitting r distinct pairwise-commuting elements."""
    cached = reg.op_cache.get(("rmax", label))
    if cached is not None:
        return cached
    group = reg.group(label)
    if group.is_abelian():
        rmax = group.order
    else:
        r = 1
        while not _inertia_r_of_label(label, r + 1, reg).is_zero():
            r += 1
        rmax = r
    reg.op_cache[("rmax", label)] = rmax
    return rmax


# ---------------------------------------------------------------------------
# the operators


def inertia(x: GroupoidClass, registry: GroupRegistry | None = None) -> GroupoidClass:
    """Linear extension of [BG] -> sum of [B Z_G(g)] over conjugacy classes."""
    reg = _registry(registry)
    out = GroupoidClass.zero()
    for key, coeff in x.terms.items():
        out = out + coeff * _inertia_of_label(key.label, reg)
    return out


def iterated_inertia(x: GroupoidClass, k: int, registry: GroupRegistry | None = None) -> GroupoidClass:
    """Inertia applied k times."""
    if k < 0:
        raise ValueError("iteration count must be nonnegative")
    for _ in range(k):
        x = inertia(x, registry)
    return x


def inertia_r(x: GroupoidClass, r: int, registry: GroupRegistry | None = None) -> GroupoidClass:
    """Linear extension of the distinct-commuting-r-tuple operator."""
    if r < 0:
        raise ValueError("tuple length must be nonnegative")
    reg = _registry(registry)
    out = GroupoidClass.zero()
    for key, coeff in x.terms.items():
        out = out + coeff * _inertia_r_of_label(key.label, r, reg)
    return out


def projection(x: GroupoidClass, k: int, registry: GroupRegistry | None = None) -> GroupoidClass:
    """Eigencomponent of x for the inertia eigenvalue k.

    Computed as the finite alternating sum over r >= k of
    (-1)^(r+k)/r! * C(r, k) * inertia_r(x); the sum stops at the largest
    tuple length supported by any class in x.
    """
    if k < 0:
        raise ValueError("eigenvalue index must be nonnegative")
    reg = _registry(registry)
    if x.is_zero():
        return x
    rmax = max(_max_tuple_length(key.label, reg) for key in x.terms)
    out = GroupoidClass.zero()
    for r in range(k, rmax + 1):
        coeff = Fraction((-1) ** (r + k) * comb(r, k), factorial(r))
        out = out + coeff * inertia_r(x, r, reg)
    return out


def product(x: GroupoidClass, y: GroupoidClass, registry: GroupRegistry | None = None,
            order_cap: int | None = None) -> GroupoidClass:
    """Bilinear extension of [BG] * [BH] = [B(G x H)]."""
    reg = _registry(registry)
    out: dict[GroupKey, Fraction] = {}
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            cache_key = ("product", kx.label, ky.label)
            key = reg.op_cache.get(cache_key)
            if key is None:
                g = direct_product(reg.group(kx.label), reg.group(ky.label), order_cap=order_cap)
                key = canonical_key(g, reg)
                reg.op_cache[cache_key] = key
            out[key] = out.get(key, Fraction(0)) + cx * cy
    return GroupoidClass(out)


def filtration_degree(x: GroupoidClass, registry: GroupRegistry | None = None) -> int | None:
    """Minimum center order over the support; None for the zero element."""
    reg = _registry(registry)
    if x.is_zero():
        return None
    return min(reg.group(key.label).center().group.order for key in x.terms)


# ---------------------------------------------------------------------------
# signed Stirling numbers of the first kind


class StirlingTable:
    """Triangular table of signed Stirling numbers of the first kind.

    s(0,0) = 1, s(r,0) = 0 for r > 0, and
    s(r+1, k) = s(r, k-1) - r * s(r, k).
    """

    def __init__(self, max_r: int):
        rows = [[1]]
        for r in range(1, max_r + 1):
            prev = rows[-1]
            row = [0] * (r + 1)
            for k in range(1, r + 1):
                above = prev[k] if k < len(prev) else 0
                row[k] = prev[k - 1] - (r - 1) * above
            rows.append(row)
        self.rows = rows

    def value(self, r: int, k: int) -> int:
        if r < 0 or k < 0:
            raise ValueError("indices must be nonnegative")
        if k > r:
            return 0
        return self.rows[r][k]


@lru_cache(maxsize=None)
def _stirling_table(max_r: int) -> StirlingTable:
    return StirlingTable(max_r)


def stirling_first_kind(r: int, k: int) -> int:
    """Signed Stirling number of the first kind s(r, k)."""
    if k > r:
        return 0
    return _stirling_table(max(r, 1)).value(r, k)


# ---------------------------------------------------------------------------
# text and JSON forms


_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)\*\[B ([^\]]+)\]")


def format_element(x: GroupoidClass) -> str:
    """Signed Q-linear combination, e.g. ``2*[B D4] - 1/2*[B Z3]``."""
    if x.is_zero():
        return "0"
    parts = []
    for key, coeff in x.items():
        body = f"{abs(coeff)}*[B {key.label}]"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


def parse_element(text: str) -> GroupoidClass:
    """Inverse of format_element; labels are resolved lazily by operators."""
    stripped = text.strip()
    if stripped == "0":
        return GroupoidClass.zero()
    terms: dict[GroupKey, Fraction] = {}
    pos = 0
    first = True
    while pos < len(stripped):
        m = _TERM_RE.match(stripped, pos)
        if not m:
            raise ValueError(f"unparsable element at {stripped[pos:]!r}")
        sign, coeff, label = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing sign before {stripped[pos:]!r}")
        value = Fraction(coeff)
        if sign == "-":
            value = -value
        key = GroupKey(label.strip())
        terms[key] = terms.get(key, Fraction(0)) + value
        pos = m.end()
        first = False
    return GroupoidClass(terms)


def element_to_json(x: GroupoidClass) -> list[dict]:
    return [
        {"label": key.label, "numerator": c.numerator, "denominator": c.denominator}
        for key, c in x.items()
    ]


def element_from_json(data) -> GroupoidClass:
    terms: dict[GroupKey, Fraction] = {}
    for row in data:
        key = GroupKey(row["label"])
        c = Fraction(row["numerator"], row["denominator"])
        terms[key] = terms.get(key, Fraction(0)) + c
    return GroupoidClass(terms)

"""Motivic classes of quasi-split tori by equivariant flag inclusion-exclusion.

A permutation group acting on {1, ..., r} encodes the Galois twist of a
rank-r quasi-split torus.  The motive of the torus is computed by summing
(-1)^length * q^{|smallest subset|} over strict chains of subsets of the
base set ("flags"): orbits of flags fixed by the whole group contribute to
the coefficient of the base class [X], and orbits with a proper stabilizer H
contribute to symbolic cover terms [Xbar/H].  The fixed-orbit sum always
collapses to the product over orbit sizes i of (q^i - 1)^(number of
i-orbits), which the code asserts.

Points are 0-based internally; parsing and printing of the action is done
1-based by the CLI layer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FlagCapExceededError
from .perms import Permutation, close_under_products
from .qfield import Partition, Polynomial, partition_polynomial

DEFAULT_FLAG_CAP = 8


class PermAction:
    """A permutation group acting on {0, ..., r-1}, kept as its full closure."""

    def __init__(self, r: int, generators=()):
        if r < 1:
            raise ValueError("the acted-on set must be nonempty")
        self.r = r
        gens = []
        for g in generators:
            if g.degree > r:
                raise ValueError(f"generator degree {g.degree} exceeds {r}")
            if g.degree < r:
                g = Permutation(g.images + tuple(range(g.degree, r)))
            gens.append(g)
        self.generators = tuple(gens)
        self.elements = tuple(close_under_products(list(self.generators), r))

    @property
    def order(self) -> int:
        return len(self.elements)

    def point_orbits(self) -> list[tuple[int, ...]]:
        """Orbits on points, each sorted, ordered by smallest point."""
        seen: set[int] = set()
        orbits = []
        for p in range(self.r):
            if p in seen:
                continue
            orbit = {g(p) for g in self.elements}
            seen |= orbit
            orbits.append(tuple(sorted(orbit)))
        return orbits


def orbit_partition(action: PermAction) -> Partition:
    """The partition of r recorded by orbit-size multiplicities."""
    return Partition.from_orbit_sizes(len(o) for o in action.point_orbits())


@dataclass(frozen=True)
class Flag:
    """A strict chain of subsets starting at the full base set.

    ``chain[0]`` is {0, ..., r-1} and each later entry is a proper subset of
    its predecessor; the final entry may be empty.
    """

    chain: tuple[frozenset, ...]

    @property
    def length(self) -> int:
        return len(self.chain) - 1

    @property
    def smallest(self) -> frozenset:
        return self.chain[-1]

    def sort_key(self) -> tuple:
        return tuple(tuple(sorted(part)) for part in self.chain)

    def display(self, one_based: bool = False) -> str:
        shift = 1 if one_based else 0
        parts = [
            "{" + " ".join(str(p + shift) for p in sorted(part)) + "}"
            for part in self.chain
        ]
        return " > ".join(parts)


def enumerate_flags(r: int, cap: int | None = None) -> list[Flag]:
    """All strict subset chains starting at the full set, length 0 included.

    Deterministic order: a chain precedes its extensions, and next subsets
    are scanned by descending size then ascending sorted content.
    """
    limit = DEFAULT_FLAG_CAP if cap is None else cap
    if r > limit:
        raise FlagCapExceededError(f"rank {r} exceeds flag cap {limit}")
    if r < 1:
        raise ValueError("rank must be positive")
    full = frozenset(range(r))
    out: list[Flag] = []

    def proper_subsets(current: frozenset):
        elems = sorted(current)
        n = len(elems)
        subsets = []
        for mask in range((1 << n) - 2, -1, -1):
            subset = frozenset(elems[i] for i in range(n) if mask >> i & 1)
            subsets.append(subset)
        subsets.sort(key=lambda s: (-len(s), tuple(sorted(s))))
        return subsets

    def extend(chain: tuple[frozenset, ...]):
        out.append(Flag(chain))
        for subset in proper_subsets(chain[-1]):
            extend(chain + (subset,))

    extend((full,))
    return out


@dataclass(frozen=True)
class FlagOrbit:
    representative: Flag
    stabilizer: tuple[Permutation, ...]
    orbit_size: int


def _apply(g: Permutation, flag: Flag) -> Flag:
    return Flag(tuple(frozenset(g(p) for p in part) for part in flag.chain))


def flag_orbits(action: PermAction, cap: int | None = None) -> list[FlagOrbit]:
    """Orbits of flags under the action, with setwise stabilizers.

    The stabilizer fixes every subset of the chain setwise; orbit size times
    stabilizer order equals the group order.
    """
    flags = enumerate_flags(action.r, cap=cap)
    seen: set[Flag] = set()
    orbits = []
    for flag in flags:
        if flag in seen:
            continue
        images = {}
        for g in action.elements:
            images.setdefault(_apply(g, flag), []).append(g)
        stab = tuple(images[flag])
        seen.update(images)
        orbits.append(FlagOrbit(flag, stab, len(images)))
    return orbits


@dataclass(frozen=True)
class CoverTerm:
    """A symbolic summand coefficient * [Xbar / stabilizer]."""

    stabilizer: tuple[Permutation, ...]
    coefficient: Polynomial


@dataclass(frozen=True)
class MotiveExpr:
    """base_coefficient * [X] plus cover terms over proper stabilizers."""

    base_coefficient: Polynomial
    cover_terms: tuple[CoverTerm, ...]


def _subgroup_conjugacy_canonical(stab, action: PermAction) -> tuple[Permutation, ...]:
    """Smallest conjugate of the subgroup, as a sorted element tuple."""
    best = None
    stab_set = set(stab)
    for g in action.elements:
        ginv = g.inverse()
        conj = sorted((g * h * ginv).images for h in stab_set)
        if best is None or conj < best:
            best = conj
    return tuple(Permutation(images) for images in best)


def torus_motive(action: PermAction, cap: int | None = None) -> MotiveExpr:
    """Motive of the quasi-split torus twisted by the action.

    The base coefficient collects orbits fixed by the whole group and is
    checked against the orbit-partition product; cover terms are keyed by
    the stabilizer subgroup up to conjugacy, zero coefficients dropped.
    """
    group_order = action.order
    base = Polynomial.zero()
    covers: dict[tuple, tuple[tuple[Permutation, ...], Polynomial]] = {}
    for orbit in flag_orbits(action, cap=cap):
        weight = Polynomial.monomial(
            (-1) ** orbit.representative.length, len(orbit.representative.smallest)
        )
        if len(orbit.stabilizer) == group_order:
            base = base + weight
        else:
            canon = _subgroup_conjugacy_canonical(orbit.stabilizer, action)
            key = tuple(h.images for h in canon)
            prev = covers.get(key)
            covers[key] = (canon, weight if prev is None else prev[1] + weight)
    expected = partition_polynomial(orbit_partition(action))
    if base != expected:
        raise AssertionError(
            f"fixed-flag sum {base} differs from orbit product {expected}"
        )
    terms = tuple(
        CoverTerm(stab, coeff)
        for key, (stab, coeff) in sorted(covers.items(), key=lambda kv: (len(kv[0]), kv[0]))
        if not coeff.is_zero()
    )
    return MotiveExpr(base_coefficient=base, cover_terms=terms)

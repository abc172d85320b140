"""Exact finite-group machinery on explicit Cayley tables.

Groups are materialized as full multiplication tables and every algorithm is
exhaustive; the intended instances are tiny (orders in the tens), so
correctness and determinism win over asymptotics.  The module provides
conjugacy classes with centralizers, centers, direct products, orbits of
commuting tuples under simultaneous conjugation, isomorphism testing, and a
process-local registry that assigns canonical labels to isomorphism classes
(``trivial``, ``Z4``, ``Z2 x Z2``, ``D4``, ``S3``, ``Q8``, ...).
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from math import factorial

from .errors import InvalidCayleyTableError, OrderCapExceededError, UnknownClassError
from .perms import Permutation, close_under_products

DEFAULT_ORDER_CAP = 10000


class FiniteGroup:
    """A finite group given by its Cayley table.

    Elements are the indices ``0 .. order-1``; ``cayley[a][b]`` is the index
    of the product a*b.  Instances are immutable after construction and cache
    derived data (element orders, conjugacy classes, ...).
    """

    def __init__(self, cayley, identity: int, inverses, name: str | None = None):
        self.cayley = tuple(tuple(row) for row in cayley)
        self.order = len(self.cayley)
        self.identity = identity
        self.inverses = tuple(inverses)
        self.name = name
        self._element_orders: tuple[int, ...] | None = None
        self._is_abelian: bool | None = None
        self._conjugacy: list[ConjugacyClass] | None = None
        self._fingerprint: tuple | None = None

    def __repr__(self) -> str:
        label = self.name or "?"
        return f"FiniteGroup({label}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conjugate(self, g: int, a: int) -> int:
        """g * a * g^-1."""
        return self.cayley[self.cayley[g][a]][self.inverses[g]]

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        return self.element_orders()[a]

    def element_orders(self) -> tuple[int, ...]:
        if self._element_orders is None:
            orders = []
            for a in self.elements():
                k, x = 1, a
                while x != self.identity:
                    x = self.cayley[x][a]
                    k += 1
                orders.append(k)
            self._element_orders = tuple(orders)
        return self._element_orders

    def is_abelian(self) -> bool:
        if self._is_abelian is None:
            self._is_abelian = all(
                self.cayley[a][b] == self.cayley[b][a]
                for a in self.elements()
                for b in range(a + 1, self.order)
            )
        return self._is_abelian

    def subgroup(self, members) -> "Subgroup":
        """The subgroup on the given (closed) element set, with embedding."""
        emb = tuple(sorted(set(members)))
        pos = {e: i for i, e in enumerate(emb)}
        try:
            cayley = [[pos[self.cayley[a][b]] for b in emb] for a in emb]
        except KeyError as exc:
            raise ValueError(f"element set not closed under multiplication: {exc}") from exc
        if self.identity not in pos:
            raise ValueError("element set does not contain the identity")
        identity = pos[self.identity]
        inverses = [pos[self.inverses[e]] for e in emb]
        return Subgroup(FiniteGroup(cayley, identity, inverses), emb)

    def closure(self, seed) -> list[int]:
        """Closure of a subset (plus identity) under multiplication."""
        seen = {self.identity} | set(seed)
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(seen):
                    for c in (self.cayley[a][b], self.cayley[b][a]):
                        if c not in seen:
                            seen.add(c)
                            nxt.append(c)
            frontier = nxt
        return sorted(seen)

    def generating_set(self) -> list[int]:
        """A small generating set, grown greedily in element order."""
        gens: list[int] = []
        closed = {self.identity}
        for a in self.elements():
            if a not in closed:
                gens.append(a)
                closed = set(self.closure(gens))
                if len(closed) == self.order:
                    break
        return gens

    def conjugacy_classes(self) -> list["ConjugacyClass"]:
        """Conjugacy classes sorted by (size, representative order, representative)."""
        if self._conjugacy is not None:
            return self._conjugacy
        unassigned = set(self.elements())
        classes = []
        for a in self.elements():
            if a not in unassigned:
                continue
            members = {self.conjugate(g, a) for g in self.elements()}
            unassigned -= members
            rep = min(members)
            classes.append(
                ConjugacyClass(
                    representative=rep,
                    members=tuple(sorted(members)),
                    centralizer=self.centralizer([rep]),
                )
            )
        classes.sort(key=lambda c: (len(c.members), self.element_order(c.representative), c.representative))
        self._conjugacy = classes
        return classes

    def centralizer(self, subset) -> "Subgroup":
        """The joint centralizer {h : hs = sh for all s in subset}."""
        subset = list(subset)
        if not subset:
            raise ValueError("centralizer of an empty set is the whole group; pass [identity]")
        members = [
            h
            for h in self.elements()
            if all(self.cayley[h][s] == self.cayley[s][h] for s in subset)
        ]
        return self.subgroup(members)

    def center(self) -> "Subgroup":
        """The subgroup of elements whose conjugacy class is a singleton."""
        members = [
            c.representative for c in self.conjugacy_classes() if len(c.members) == 1
        ]
        return self.subgroup(members)

    def derived_subgroup_order(self) -> int:
        commutators = {
            self.cayley[self.inverses[a]][self.cayley[self.inverses[b]][self.cayley[a][b]]]
            for a in self.elements()
            for b in self.elements()
        }
        return len(self.closure(commutators))

    def fingerprint(self) -> tuple:
        """Isomorphism-invariant filter used before any isomorphism search."""
        if self._fingerprint is None:
            self._fingerprint = (
                self.order,
                self.is_abelian(),
                tuple(sorted(self.element_orders())),
                self.center().group.order,
                tuple(sorted(len(c.members) for c in self.conjugacy_classes())),
                self.derived_subgroup_order(),
            )
        return self._fingerprint

    def _commuting_with(self) -> list[set]:
        """For each a, the set of b != a with ab = ba."""
        return [
            {
                b
                for b in self.elements()
                if b != a and self.cayley[a][b] == self.cayley[b][a]
            }
            for a in self.elements()
        ]

    def commuting_tuple_orbits(self, r: int) -> list["CommutingTupleOrbit"]:
        """Orbits of ordered r-tuples of distinct pairwise-commuting elements.

        Orbits are under simultaneous conjugation; the stabilizer of a tuple
        is the joint centralizer of its entries.  ``r = 0`` yields the single
        empty tuple with stabilizer the whole group.  Output is sorted by
        (lexicographically minimal) representative.
        """
        if r < 0:
            raise ValueError("tuple length must be nonnegative")
        if r == 0:
            return [CommutingTupleOrbit((), 1, self.subgroup(self.elements()))]
        comm = self._commuting_with()
        orbits: list[CommutingTupleOrbit] = []
        seen: set[tuple[int, ...]] = set()

        def visit(prefix: tuple[int, ...], candidates: set):
            if len(prefix) == r:
                if prefix in seen:
                    return
                stab = []
                orbit = set()
                for g in self.elements():
                    image = tuple(self.conjugate(g, s) for s in prefix)
                    orbit.add(image)
                    if image == prefix:
                        stab.append(g)
                seen.update(orbit)
                orbits.append(
                    CommutingTupleOrbit(prefix, len(orbit), self.subgroup(stab))
                )
                return
            for nxt in sorted(candidates):
                visit(prefix + (nxt,), candidates & comm[nxt])

        visit((), set(self.elements()))
        orbits.sort(key=lambda o: o.representative)
        return orbits

    def commuting_set_orbit_data(self, r: int) -> list[tuple[tuple[int, ...], "Subgroup", int]]:
        """Conjugation orbits of unordered r-sets of commuting elements.

        Returns (sorted representative set, joint centralizer, m) where m is
        the number of ordered-tuple orbits lying over the set orbit, namely
        r! * |Z(S)| / |N(S)| for the setwise stabilizer N.  This is the cheap
        route to the tuple-orbit census: every ordering of a set has the same
        joint centralizer, so orbit classes only depend on the set orbit.
        """
        if r < 1:
            raise ValueError("set size must be at least 1")
        comm = self._commuting_with()
        out = []
        seen: set[frozenset] = set()

        def visit(seq: tuple[int, ...], candidates: set):
            if len(seq) == r:
                key = frozenset(seq)
                if key in seen:
                    return
                setwise = 0
                orbit = set()
                for g in self.elements():
                    image = frozenset(self.conjugate(g, s) for s in seq)
                    orbit.add(image)
                    if image == key:
                        setwise += 1
                seen.update(orbit)
                pointwise = self.centralizer(seq)
                m = factorial(r) * pointwise.group.order // setwise
                out.append((seq, pointwise, m))
                return
            for nxt in sorted(c for c in candidates if not seq or c > seq[-1]):
                visit(seq + (nxt,), candidates & comm[nxt])

        visit((), set(self.elements()))
        out.sort(key=lambda row: row[0])
        return out


@dataclass(frozen=True)
class Subgroup:
    """A subgroup re-indexed as a standalone group, with its embedding.

    ``embedding[i]`` is the parent index of subgroup element i.
    """

    group: FiniteGroup
    embedding: tuple[int, ...]


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: tuple[int, ...]
    centralizer: Subgroup


@dataclass(frozen=True)
class CommutingTupleOrbit:
    """An orbit of ordered commuting tuples under simultaneous conjugation."""

    representative: tuple[int, ...]
    orbit_size: int
    stabilizer: Subgroup


# ---------------------------------------------------------------------------
# constructors


def group_from_generators(
    generators: list[Permutation],
    order_cap: int | None = None,
    name: str | None = None,
) -> FiniteGroup:
    """Close a list of equal-degree permutations into a Cayley-table group.

    Element 0 is the identity.  Raises OrderCapExceededError when the closure
    grows past ``order_cap`` (default 10000).
    """
    cap = DEFAULT_ORDER_CAP if order_cap is None else order_cap
    degree = generators[0].degree if generators else 1
    if any(g.degree != degree for g in generators):
        raise ValueError("generators must share a common degree")
    elements = _closure_capped(generators, degree, cap)
    index = {p: i for i, p in enumerate(elements)}
    cayley = [[index[a * b] for b in elements] for a in elements]
    inverses = [index[a.inverse()] for a in elements]
    return FiniteGroup(cayley, 0, inverses, name=name)


def _closure_capped(generators, degree, cap):
    identity = Permutation.identity(degree)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = g * p
                if q not in seen:
                    if len(seen) >= cap:
                        raise OrderCapExceededError(
                            f"closure exceeds order cap {cap}"
                        )
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    rest = sorted((p for p in seen if p != identity), key=lambda p: p.images)
    return [identity] + rest


def group_from_cayley_table(table, name: str | None = None) -> FiniteGroup:
    """Validate a square multiplication table and wrap it as a group.

    Raises InvalidCayleyTableError naming the failing pair/triple when the
    table has no two-sided identity, lacks inverses, or is not associative.
    """
    rows = [list(row) for row in table]
    n = len(rows)
    if n == 0:
        raise InvalidCayleyTableError("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InvalidCayleyTableError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not (isinstance(v, int) and 0 <= v < n):
                raise InvalidCayleyTableError(
                    f"entry ({i},{j}) = {v!r} out of range", witness=(i, j)
                )
    identity = None
    for e in range(n):
        if all(rows[e][a] == a and rows[a][e] == a for a in range(n)):
            identity = e
            break
    if identity is None:
        raise InvalidCayleyTableError("no two-sided identity element")
    inverses = []
    for a in range(n):
        inv = next((b for b in range(n) if rows[a][b] == identity and rows[b][a] == identity), None)
        if inv is None:
            raise InvalidCayleyTableError(f"element {a} has no two-sided inverse", witness=(a,))
        inverses.append(inv)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                    raise InvalidCayleyTableError(
                        f"associativity fails at triple ({a},{b},{c})",
                        witness=(a, b, c),
                    )
    return FiniteGroup(rows, identity, inverses, name=name)


def direct_product(g: FiniteGroup, h: FiniteGroup, order_cap: int | None = None) -> FiniteGroup:
    """Componentwise product; element a*|H|+b encodes the pair (a, b)."""
    cap = DEFAULT_ORDER_CAP if order_cap is None else order_cap
    n = g.order * h.order
    if n > cap:
        raise OrderCapExceededError(f"product order {n} exceeds cap {cap}")
    hn = h.order
    cayley = [
        [g.cayley[a1][a2] * hn + h.cayley[b1][b2] for a2 in g.elements() for b2 in h.elements()]
        for a1 in g.elements()
        for b1 in h.elements()
    ]
    identity = g.identity * hn + h.identity
    inverses = [g.inverses[x // hn] * hn + h.inverses[x % hn] for x in range(n)]
    name = f"{g.name} x {h.name}" if g.name and h.name else None
    return FiniteGroup(cayley, identity, inverses, name=name)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], 0, [0], name="trivial")


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    cayley = [[(a + b) % n for b in range(n)] for a in range(n)]
    inverses = [(-a) % n for a in range(n)]
    return FiniteGroup(cayley, 0, inverses, name=f"Z{n}")


def abelian_group(orders) -> FiniteGroup:
    """Direct product of cyclic groups of the given orders."""
    g = cyclic_group(orders[0]) if orders else trivial_group()
    for m in orders[1:]:
        g = direct_product(g, cyclic_group(m))
    g.name = " x ".join(f"Z{m}" for m in orders) if orders else "trivial"
    return g


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: rotations r^i and reflections r^i s."""
    if n < 1:
        raise ValueError("n must be positive")

    def enc(i, j):
        return i + n * j

    cayley = [[0] * (2 * n) for _ in range(2 * n)]
    for i1 in range(n):
        for j1 in range(2):
            for i2 in range(n):
                for j2 in range(2):
                    i = (i1 + (i2 if j1 == 0 else -i2)) % n
                    cayley[enc(i1, j1)][enc(i2, j2)] = enc(i, (j1 + j2) % 2)
    inverses = [0] * (2 * n)
    for i in range(n):
        inverses[enc(i, 0)] = enc((-i) % n, 0)
        inverses[enc(i, 1)] = enc(i, 1)
    return FiniteGroup(cayley, 0, inverses, name=f"D{n}")


def symmetric_group(n: int) -> FiniteGroup:
    """Symmetric group on n letters; elements in lexicographic one-line order."""
    if n < 1:
        raise ValueError("n must be positive")
    if factorial(n) > DEFAULT_ORDER_CAP:
        raise OrderCapExceededError(f"{n}! exceeds order cap {DEFAULT_ORDER_CAP}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    compose = lambda p, q: tuple(p[q[x]] for x in range(n))
    cayley = [[index[compose(p, q)] for q in perms] for p in perms]
    inverses = []
    for p in perms:
        inv = [0] * n
        for i, j in enumerate(p):
            inv[j] = i
        inverses.append(index[tuple(inv)])
    return FiniteGroup(cayley, 0, inverses, name=f"S{n}")


def quaternion_group() -> FiniteGroup:
    """The quaternion group of order 8 on {±1, ±i, ±j, ±k}."""
    # element 2u + s: unit u in (1, i, j, k), sign s (0 -> +, 1 -> -)
    unit_mul = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }
    n = 8
    cayley = [[0] * n for _ in range(n)]
    for u1 in range(4):
        for s1 in range(2):
            for u2 in range(4):
                for s2 in range(2):
                    u, s = unit_mul[(u1, u2)]
                    cayley[2 * u1 + s1][2 * u2 + s2] = 2 * u + (s + s1 + s2) % 2
    identity = 0
    inverses = [next(b for b in range(n) if cayley[a][b] == identity) for a in range(n)]
    return FiniteGroup(cayley, identity, inverses, name="Q8")


def group_from_permutation_text(text: str, one_based: bool = False, order_cap: int | None = None) -> FiniteGroup:
    """Build a group from a generator string like ``"(0 1 2)(3 4), (0 1)"``."""
    from .perms import parse_generators

    gens = parse_generators(text, one_based=one_based)
    return group_from_generators(gens, order_cap=order_cap)


# ---------------------------------------------------------------------------
# isomorphism


def are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    """Fingerprint filter, then backtracking search on generator images."""
    if g.fingerprint() != h.fingerprint():
        return False
    if g.is_abelian():
        # both abelian with equal element-order statistics: isomorphic
        return True
    return _find_isomorphism(g, h) is not None


def _find_isomorphism(g: FiniteGroup, h: FiniteGroup):
    gens = g.generating_set()
    prefix_sizes = [len(g.closure(gens[: i + 1])) for i in range(len(gens))]
    h_by_order: dict[int, list[int]] = {}
    for x in h.elements():
        h_by_order.setdefault(h.element_order(x), []).append(x)

    # BFS parents so a full map extends from generator images alone
    parent: dict[int, tuple[int, int]] = {}
    bfs = [g.identity]
    seen = {g.identity}
    qi = 0
    while qi < len(bfs):
        e = bfs[qi]
        qi += 1
        for k, gen in enumerate(gens):
            f = g.cayley[e][gen]
            if f not in seen:
                seen.add(f)
                parent[f] = (e, k)
                bfs.append(f)

    def build_and_check(images):
        phi = {g.identity: h.identity}
        for e in bfs[1:]:
            p, k = parent[e]
            phi[e] = h.cayley[phi[p]][images[k]]
        if len(set(phi.values())) != g.order:
            return None
        for a in g.elements():
            fa = phi[a]
            row = g.cayley[a]
            for b in g.elements():
                if phi[row[b]] != h.cayley[fa][phi[b]]:
                    return None
        return phi

    def search(i, images):
        if i == len(gens):
            return build_and_check(images)
        want_order = g.element_order(gens[i])
        current = set(h.closure(images)) if images else {h.identity}
        for cand in h_by_order.get(want_order, []):
            if cand in current:
                continue
            if len(h.closure(images + [cand])) != prefix_sizes[i]:
                continue
            found = search(i + 1, images + [cand])
            if found is not None:
                return found
        return None

    if not gens:
        return {g.identity: h.identity}
    return search(0, [])


def abelian_invariant_factors(g: FiniteGroup) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... (ascending) of a finite abelian group.

    Matched against candidate types by element-order statistics, which
    determine an abelian group up to isomorphism.
    """
    if not g.is_abelian():
        raise ValueError("group is not abelian")
    target = sorted(g.element_orders())
    for cand in _abelian_candidates(g.order):
        if _abelian_order_stats(cand) == target:
            return cand
    raise AssertionError(f"no abelian type matches order {g.order}")  # pragma: no cover


def _prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(k: int) -> list[tuple[int, ...]]:
    if k == 0:
        return [()]
    out = []

    def rec(remaining, maxpart, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            rec(remaining - p, p, acc + [p])

    rec(k, k, [])
    return out


def _abelian_candidates(n: int) -> list[tuple[int, ...]]:
    """All invariant-factor chains (ascending, d_i | d_{i+1}) of order n."""
    if n == 1:
        return [(1,)]
    primes = sorted(_prime_factorization(n).items())
    per_prime = [_partitions(e) for _, e in primes]
    cands = []
    for combo in itertools.product(*per_prime):
        depth = max(len(part) for part in combo)
        factors = []
        for i in range(depth):
            f = 1
            for (p, _), part in zip(primes, combo):
                if i < len(part):
                    f *= p ** part[i]
            factors.append(f)
        # factors currently descending; report ascending
        cands.append(tuple(reversed(factors)))
    return cands


def _abelian_order_stats(factors: tuple[int, ...]) -> list[int]:
    from math import gcd, lcm

    orders = []
    for combo in itertools.product(*[range(d) for d in factors]):
        orders.append(lcm(*(d // gcd(x, d) for x, d in zip(combo, factors))) if factors else 1)
    return sorted(orders)


# ---------------------------------------------------------------------------
# canonical keys and the registry


@dataclass(frozen=True)
class GroupKey:
    """Canonical name of an isomorphism class; equality is by label."""

    label: str
    fingerprint: tuple = field(compare=False, hash=False, repr=False, default=())

    def __str__(self) -> str:
        return self.label


class GroupRegistry:
    """Process-local mapping from isomorphism classes to canonical labels.

    The first representative seen for a class is registered under a built-in
    catalog name when one matches (trivial, Z_n and products, S_n, D_n, Q8)
    and under a fresh ``G<order>_<k>`` label otherwise.  Lookup is a
    fingerprint filter followed by a certified isomorphism search.  Reads are
    lock-free; insertion is guarded.
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._groups: dict[str, FiniteGroup] = {}
        self._by_fingerprint: dict[tuple, list[str]] = {}
        self._generic_count: dict[int, int] = {}
        self.op_cache: dict = {}

    def key_of(self, g: FiniteGroup) -> GroupKey:
        fp = g.fingerprint()
        for label in self._by_fingerprint.get(fp, []):
            if are_isomorphic(g, self._groups[label]):
                return GroupKey(label, fp)
        with self._lock:
            for label in self._by_fingerprint.get(fp, []):
                if are_isomorphic(g, self._groups[label]):
                    return GroupKey(label, fp)
            label = self._canonical_label(g)
            self._groups[label] = g
            self._by_fingerprint.setdefault(fp, []).append(label)
            return GroupKey(label, fp)

    def _canonical_label(self, g: FiniteGroup) -> str:
        n = g.order
        if n == 1:
            return "trivial"
        if g.is_abelian():
            factors = abelian_invariant_factors(g)
            return " x ".join(f"Z{d}" for d in factors)
        for k in range(3, 7):
            if factorial(k) == n and are_isomorphic(g, symmetric_group(k)):
                return f"S{k}"
        if n % 2 == 0 and n >= 6 and are_isomorphic(g, dihedral_group(n // 2)):
            return f"D{n // 2}"
        if n == 8 and are_isomorphic(g, quaternion_group()):
            return "Q8"
        count = self._generic_count.get(n, 0) + 1
        self._generic_count[n] = count
        return f"G{n}_{count}"

    def group(self, label: str) -> FiniteGroup:
        try:
            return self._groups[label]
        except KeyError:
            raise UnknownClassError(f"no registered group with label {label!r}") from None

    def has_label(self, label: str) -> bool:
        return label in self._groups


_default_registry = GroupRegistry()


def default_registry() -> GroupRegistry:
    return _default_registry


def canonical_key(g: FiniteGroup, registry: GroupRegistry | None = None) -> GroupKey:
    """The canonical GroupKey of g's isomorphism class."""
    return (registry or _default_registry).key_of(g)

"""Permutations of {0, ..., n-1} with cycle-notation parsing and printing.

Permutations compose right-to-left: ``(p * q)(x) == p(q(x))``.  The text
grammar accepts products of cycles such as ``"(0 1 2)(3 4)"`` and a comma
separated list of those for generator lists; ``one_based=True`` shifts all
points by one, so ``"(1 2)"`` means the swap of the first two points.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., degree-1}; ``images[i]`` is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(degree)))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.degree)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        k = 1
        p = self
        while not p.is_identity():
            p = p * self
            k += 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each rotated to start at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self, one_based: bool = False) -> str:
        shift = 1 if one_based else 0
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p + shift) for p in cyc) + ")" for cyc in cycs)

    def __str__(self) -> str:
        return self.cycle_string()


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None, one_based: bool = False) -> Permutation:
    """Parse a product of cycles, e.g. ``"(0 1 2)(3 4)"``.

    Points within a cycle may be separated by spaces or commas.  The degree is
    inferred from the largest point unless given.  ``"()"`` and the empty
    string denote the identity (degree required or taken as 0).
    """
    text = text.strip()
    body = text.replace("()", "")
    cycles: list[list[int]] = []
    consumed = 0
    for m in _CYCLE_RE.finditer(body):
        consumed += len(m.group(0))
        entries = [e for e in re.split(r"[\s,]+", m.group(1).strip()) if e]
        if not entries:
            continue
        pts = [int(e) for e in entries]
        if one_based:
            pts = [p - 1 for p in pts]
        if any(p < 0 for p in pts):
            raise ValueError(f"point out of range in cycle {m.group(0)!r}")
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle {m.group(0)!r}")
        cycles.append(pts)
    if re.sub(r"\s+", "", body)[consumed:]:
        raise ValueError(f"unparsable permutation {text!r}")
    top = max((p for cyc in cycles for p in cyc), default=-1)
    if degree is None:
        degree = top + 1
    elif top >= degree:
        raise ValueError(f"point {top + (1 if one_based else 0)} outside degree {degree}")
    images = list(range(degree))
    for cyc in cycles:
        for i, p in enumerate(cyc):
            images[p] = cyc[(i + 1) % len(cyc)]
    return Permutation(tuple(images))


def parse_generators(text: str, degree: int | None = None, one_based: bool = False) -> list[Permutation]:
    """Parse a comma-separated generator list like ``"(0 1 2)(3 4), (0 1)"``.

    Commas inside parentheses separate cycle points, commas outside separate
    generators.  All generators are padded to a common degree.
    """
    parts: list[str] = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    parts = [p for p in (part.strip() for part in parts) if p]
    gens = [parse_permutation(p, degree=None, one_based=one_based) for p in parts]
    top = max((g.degree for g in gens), default=0)
    if degree is None:
        degree = top
    elif top > degree:
        raise ValueError(f"generator degree {top} exceeds {degree}")
    return [
        Permutation(g.images + tuple(range(g.degree, degree))) if g.degree < degree else g
        for g in gens
    ]


def close_under_products(generators: list[Permutation], degree: int) -> list[Permutation]:
    """The subgroup of Sym(degree) generated by ``generators``.

    Returns the identity first, remaining elements sorted by image tuple.
    """
    identity = Permutation.identity(degree)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = g * p
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    rest = sorted((p for p in seen if p != identity), key=lambda p: p.images)
    return [identity] + rest

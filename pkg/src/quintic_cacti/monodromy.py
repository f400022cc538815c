"""Brute-force monodromy model used to cross-check the cactus enumeration.

A cactus is encoded by an ordered tuple of transpositions whose product
(left to right) is the reference cycle ``rho = (1 2 ... n)``.  Sheet ``i``
is oval ``i`` and the support of the ``l``-th transposition is the gluing
labelled ``l``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .cactus import (Equivalence, FirstCactus, SecondCactus, X, Y,
                     enumerate_first, enumerate_second, first_key,
                     make_first_cactus, make_second_cactus, second_key)
from .errors import BigSelfGluing, DegreeOutOfRange, SizeMismatch

QUADRANGLE, TRIANGLE = "quadrangle", "triangle"


@dataclass(frozen=True)
class Perm:
    """Permutation of ``{1..n}``; ``images[i - 1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, p: int) -> int:
        return self.images[p - 1]

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def cycle(cls, n: int, *points: int) -> "Perm":
        images = list(range(1, n + 1))
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Perm":
        return cls.cycle(n, a, b)

    def inverse(self) -> "Perm":
        images = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            images[j - 1] = i
        return Perm(tuple(images))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.images, start=1) if i != j)

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc, p = [], start
            while p not in seen:
                seen.add(p)
                cyc.append(p)
                p = self(p)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"


def compose(a: Perm, b: Perm) -> Perm:
    """Left-to-right product: apply ``a`` first, then ``b``."""
    if a.n != b.n:
        raise SizeMismatch(f"cannot compose permutations of {a.n} and {b.n} points")
    return Perm(tuple(b(a(p)) for p in range(1, a.n + 1)))


def product(perms, n: int) -> Perm:
    out = Perm.identity(n)
    for p in perms:
        out = compose(out, p)
    return out


def cycle_type(a: Perm) -> list[int]:
    return sorted((len(c) for c in a.cycles()), reverse=True)


def reference_cycle(n: int) -> Perm:
    return Perm.cycle(n, *range(1, n + 1))


def transpositions(n: int) -> list[Perm]:
    return [Perm.transposition(n, a, b) for a, b in itertools.combinations(range(1, n + 1), 2)]


@dataclass(frozen=True)
class MonodromyTuple:
    kind: str
    parts: tuple[Perm, ...]

    @property
    def n(self) -> int:
        return self.parts[0].n

    def conjugate(self, g: Perm) -> "MonodromyTuple":
        gi = g.inverse()
        return MonodromyTuple(self.kind, tuple(compose(compose(gi, p), g) for p in self.parts))

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def _search(n: int) -> Iterator[tuple[Perm, ...]]:
    # depth-first over transposition tuples; the remaining factor must still be
    # writable with the transpositions left (n - #cycles <= remaining)
    rho = reference_cycle(n)
    trans = transpositions(n)
    m = n - 1

    def rec(prefix, partial):
        left = m - len(prefix)
        rest = compose(partial.inverse(), rho)
        if n - len(rest.cycles()) > left:
            return
        if left == 0:
            yield tuple(prefix)
            return
        for t in trans:
            prefix.append(t)
            yield from rec(prefix, compose(partial, t))
            prefix.pop()

    yield from rec([], Perm.identity(n))


def enumerate_tuples(n: int, kind: str = QUADRANGLE) -> list[MonodromyTuple]:
    """All ordered ``(n-1)``-tuples of transpositions with product ``rho``.

    For ``kind="triangle"`` (degree 5 only) the last part is the transposition
    of the interior critical value.
    """
    if not 3 <= n <= 7:
        raise DegreeOutOfRange(f"n={n} outside [3, 7]")
    if kind not in (QUADRANGLE, TRIANGLE):
        raise ValueError(f"unknown tuple kind {kind!r}")
    if kind == TRIANGLE and n != 5:
        raise DegreeOutOfRange("triangle tuples are defined for n=5 only")
    return [MonodromyTuple(kind, parts) for parts in _search(n)]


def brute_force_count(n: int) -> int:
    """Literal filter over every ordered tuple; only sensible for n <= 5."""
    rho = reference_cycle(n)
    return sum(product(parts, n) == rho
               for parts in itertools.product(transpositions(n), repeat=n - 1))


def tuple_to_first(t: MonodromyTuple) -> FirstCactus:
    return make_first_cactus(t.n, [(l, p.support()) for l, p in enumerate(t.parts)])


def tuple_to_second(t: MonodromyTuple) -> SecondCactus:
    """Read a triangle tuple as a second-type cactus.

    The inner transposition exchanges the two sheets of the big oval; an
    outer gluing touching the lower of them gets chamber ``x``.
    """
    *outer, inner = t.parts
    a, b = inner.support()
    edges = []
    for l, p in enumerate(outer):
        if p == inner:
            raise BigSelfGluing(f"part {l} equals the inner transposition")
        u, v = p.support()
        if v in (a, b):
            u, v = v, u
        if u in (a, b):
            edges.append((l, ("B", v), X if u == a else Y))
        else:
            edges.append((l, (u, v), None))
    return make_second_cactus(edges, big="B")


def conjugation_orbits(tuples: list[MonodromyTuple]) -> list[list[MonodromyTuple]]:
    """Orbits under simultaneous conjugation by the powers of ``rho``."""
    if not tuples:
        return []
    n = tuples[0].n
    rho = reference_cycle(n)
    remaining = set(tuples)
    orbits = []
    for t in tuples:
        if t not in remaining:
            continue
        orbit, cur = [], t
        while cur not in orbit:
            orbit.append(cur)
            cur = cur.conjugate(rho)
        remaining -= set(orbit)
        orbits.append(orbit)
    return orbits


@dataclass(frozen=True)
class OracleReport:
    n: int
    tuples: int
    orbits: int
    per_tree: tuple[int, ...]
    fixed_classes: int
    rotated_classes: int
    agree: bool
    triangle: dict | None = None


def _multiplicity(keys: list[bytes]) -> tuple[int, ...]:
    return tuple(sorted(set(Counter(keys).values())))


def oracle_report(n: int) -> OracleReport:
    if not 3 <= n <= 6:
        raise DegreeOutOfRange(f"n={n} outside [3, 6]")
    quads = enumerate_tuples(n)
    trees = [tuple_to_first(t) for t in quads]
    fixed = [first_key(c, Equivalence.FIXED) for c in trees]
    rotated = {first_key(c, Equivalence.ROTATED) for c in trees}
    orbits = conjugation_orbits(quads)
    orbit_constant = all(len({first_key(tuple_to_first(t), Equivalence.FIXED) for t in o}) == 1
                         for o in orbits)
    atlas_fixed = {c.canonical_key for c in enumerate_first(n, Equivalence.FIXED)}
    atlas_rot = {c.canonical_key for c in enumerate_first(n, Equivalence.ROTATED)}
    agree = (set(fixed) == atlas_fixed and rotated == atlas_rot
             and len(orbits) == len(atlas_fixed) and orbit_constant)

    triangle = None
    if n == 5:
        tris = enumerate_tuples(5, TRIANGLE)
        keys = [second_key(tuple_to_second(t), Equivalence.FIXED) for t in tris]
        t_orbits = conjugation_orbits(tris)
        atlas2 = {c.canonical_key for c in enumerate_second(Equivalence.FIXED)}
        rot2 = {second_key(tuple_to_second(t), Equivalence.ROTATED) for t in tris}
        triangle = {
            "tuples": len(tris),
            "orbits": len(t_orbits),
            "per_class": _multiplicity(keys),
            "fixed_classes": len(set(keys)),
            "rotated_classes": len(rot2),
            "agree": (set(keys) == atlas2 and len(t_orbits) == len(atlas2)
                      and rot2 == {c.canonical_key for c in enumerate_second()}),
        }
        agree = agree and triangle["agree"]

    return OracleReport(n, len(quads), len(orbits), _multiplicity(fixed),
                        len(set(fixed)), len(rotated), agree, triangle)

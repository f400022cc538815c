"""Plane cacti of the two families, their canonical forms and enumeration.

A first-type cactus is a tree of ``n`` ovals whose ``n - 1`` gluing points
carry distinct labels from ``Z_{n-1}``.  Every oval reads the labels in the
same counter-clockwise order, so the plane picture is fully determined by
the edge-labelled tree.

A second-type cactus (degree 5 only) has one big oval ``B`` and three small
ovals glued along three edges labelled ``0, 1, 2``.  The big oval carries
every label twice; the *chamber* tag (``"x"`` or ``"y"``) of a ``B``-incident
edge records which copy is used.  With the reference cut in the ``(2, 0)``
gaps the big oval reads ``(x,0) (x,1) (x,2) (y,0) (y,1) (y,2)``.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

import networkx as nx

from .errors import (BadChamber, BadLabels, BigSelfGluing, DegreeOutOfRange,
                     NotATree, SelfLoop, UnknownClassId)

X, Y = "x", "y"
CHAMBERS = (X, Y)
MIN_DEGREE, MAX_DEGREE = 3, 8
SECOND_LABELS = 3

_SEP = 0xFF


class Equivalence(str, Enum):
    FIXED = "fixed"
    ROTATED = "rotated"

    @classmethod
    def parse(cls, value: "Equivalence | str") -> "Equivalence":
        if isinstance(value, cls):
            return value
        aliases = {"fixed": cls.FIXED, "fixed_labels": cls.FIXED,
                   "rotated": cls.ROTATED, "with_rotation": cls.ROTATED}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown equivalence {value!r}") from None


class Family(str, Enum):
    FIRST = "first"
    SECOND = "second"


def _sort_key(v):
    return (type(v).__name__, str(v))


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FirstCactus:
    """Edge-labelled tree; ``edges[l]`` holds the two ovals glued at label ``l``."""

    degree: int
    edges: tuple[tuple[Hashable, Hashable], ...]

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for pair in self.edges for v in pair)

    def labeled_edges(self) -> list[tuple[int, tuple[Hashable, Hashable]]]:
        return list(enumerate(self.edges))

    def incident(self, v) -> list[int]:
        return [l for l, pair in enumerate(self.edges) if v in pair]

    def shifted(self, s: int) -> "FirstCactus":
        """Rename every label ``l`` to ``l + s`` (mod ``n - 1``)."""
        m = len(self.edges)
        new = [None] * m
        for l, pair in enumerate(self.edges):
            new[(l + s) % m] = pair
        return FirstCactus(self.degree, tuple(new))


@dataclass(frozen=True)
class SecondCactus:
    """Big oval plus three small ovals.

    ``edges[l] = (u, v, chamber)``; when the big oval is an endpoint it is
    stored as ``u`` and ``chamber`` is ``"x"`` or ``"y"``, otherwise ``None``.
    """

    big: Hashable
    smalls: frozenset
    edges: tuple[tuple[Hashable, Hashable, str | None], ...]

    degree = 5

    @property
    def vertices(self) -> frozenset:
        return self.smalls | {self.big}

    def labeled_edges(self):
        return list(enumerate(self.edges))

    def incident(self, v) -> list[int]:
        return [l for l, (a, b, _) in enumerate(self.edges) if v in (a, b)]

    def attachments(self) -> dict[int, str]:
        """Chamber tag of every big-oval gluing, keyed by label."""
        return {l: c for l, (_, _, c) in enumerate(self.edges) if c is not None}

    def swapped(self) -> "SecondCactus":
        swap = {X: Y, Y: X, None: None}
        return SecondCactus(self.big, self.smalls,
                            tuple((a, b, swap[c]) for a, b, c in self.edges))


@dataclass(frozen=True)
class CactusClass:
    family: Family
    degree: int
    equivalence: Equivalence
    canonical_key: bytes
    atlas_index: int | None = field(default=None, compare=False)

    @property
    def representative(self) -> FirstCactus | SecondCactus:
        if self.family is Family.FIRST:
            return _decode_first(self.canonical_key)
        return _decode_second(self.canonical_key)

    @property
    def key_hex(self) -> str:
        return self.canonical_key.hex()


@dataclass(frozen=True)
class MarkedPoint:
    label: int | None
    kind: str  # "plain", "gluing" or "inner-dot"
    edge: int | None = None
    chamber: str | None = None


@dataclass(frozen=True)
class PlaneCactus:
    """Boundary walk of every oval, in counter-clockwise order."""

    family: Family
    ovals: tuple[tuple[Hashable, tuple[MarkedPoint, ...]], ...]
    big: Hashable | None = None

    def walk(self, oval) -> tuple[MarkedPoint, ...]:
        return dict(self.ovals)[oval]

    def validate(self) -> None:
        """Check the combinatorial cactus conditions on the rendered walks."""
        seen = defaultdict(list)
        for oval, points in self.ovals:
            for p in points:
                if p.kind == "gluing":
                    seen[p.edge].append((oval, p.label))
        for edge, where in seen.items():
            if len(where) != 2 or where[0][0] == where[1][0]:
                raise NotATree(f"gluing {edge} appears on {len(where)} ovals")
            if where[0][1] != where[1][1] or where[0][1] != edge:
                raise BadLabels(f"gluing {edge} carries inconsistent labels")


# ---------------------------------------------------------------------------
# Construction and validation
# ---------------------------------------------------------------------------

def _check_tree(vertices: Iterable, pairs: Sequence[tuple], n: int) -> None:
    g = nx.MultiGraph()
    g.add_nodes_from(vertices)
    g.add_edges_from(pairs)
    if g.number_of_nodes() != n:
        raise NotATree(f"expected {n} ovals, got {g.number_of_nodes()}")
    if not nx.is_tree(g):
        raise NotATree("gluing graph is not a tree")


def _check_labels(labels: Sequence, count: int) -> None:
    if any(not isinstance(l, int) or isinstance(l, bool) for l in labels) or \
            sorted(labels) != list(range(count)):
        raise BadLabels(f"labels {list(labels)} do not exhaust Z_{count}")


def make_first_cactus(degree: int, edges) -> FirstCactus:
    """Validate ``edges`` (pairs ``(label, (u, v))``) as a first-type cactus."""
    if not MIN_DEGREE <= degree <= MAX_DEGREE:
        raise DegreeOutOfRange(f"degree {degree} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
    edges = [(l, tuple(pair)) for l, pair in edges]
    for l, (u, v) in edges:
        if u == v:
            raise SelfLoop(f"edge {l} glues oval {u!r} to itself")
    _check_labels([l for l, _ in edges], degree - 1)
    pairs = [pair for _, pair in sorted(edges)]
    _check_tree({v for p in pairs for v in p}, pairs, degree)
    return FirstCactus(degree, tuple(pairs))


def make_second_cactus(edges, big: Hashable = "B") -> SecondCactus:
    """Validate ``edges`` given as ``(label, (u, v), chamber)`` triples."""
    rows = []
    for l, (u, v), chamber in edges:
        if u == big and v == big:
            raise BigSelfGluing(f"edge {l} glues the big oval to itself")
        if u == v:
            raise SelfLoop(f"edge {l} glues oval {u!r} to itself")
        if v == big:
            u, v = v, u
        if u == big:
            if chamber not in CHAMBERS:
                raise BadChamber(f"edge {l} touches the big oval without a chamber tag")
        elif chamber is not None:
            raise BadChamber(f"edge {l} has a chamber tag but avoids the big oval")
        rows.append((l, (u, v, chamber)))
    _check_labels([l for l, _ in rows], SECOND_LABELS)
    rows.sort(key=lambda r: r[0])
    triples = tuple(t for _, t in rows)
    smalls = frozenset(x for a, b, _ in triples for x in (a, b)) - {big}
    _check_tree(smalls | {big}, [(a, b) for a, b, _ in triples], 4)
    return SecondCactus(big, smalls, triples)


# ---------------------------------------------------------------------------
# Canonical keys
#
# An edge-labelled tree is determined by the family of label sets incident to
# its vertices, so the sorted family is a complete invariant under vertex
# re-identification.  Label rotation and chamber swap are handled by taking
# the minimum over the finite orbit.
# ---------------------------------------------------------------------------

def _encode(blocks: Iterable[Iterable[int]]) -> bytes:
    out = bytearray()
    for b in blocks:
        out.extend(b)
        out.append(_SEP)
    return bytes(out)


def _split(key: bytes) -> list[list[int]]:
    blocks, cur = [], []
    for byte in key:
        if byte == _SEP:
            blocks.append(cur)
            cur = []
        else:
            cur.append(byte)
    return blocks


def _first_key(c: FirstCactus) -> bytes:
    inc = defaultdict(list)
    for l, (u, v) in enumerate(c.edges):
        inc[u].append(l)
        inc[v].append(l)
    return _encode(sorted(tuple(sorted(ls)) for ls in inc.values()))


def _decode_first(key: bytes) -> FirstCactus:
    blocks = _split(key)
    ends = defaultdict(list)
    for i, block in enumerate(blocks):
        for l in block:
            ends[l].append(i)
    return FirstCactus(len(blocks), tuple(tuple(ends[l]) for l in range(len(ends))))


def _second_key(c: SecondCactus) -> bytes:
    big = sorted(2 * l + CHAMBERS.index(ch) for l, ch in c.attachments().items())
    inc = defaultdict(list)
    for s in c.smalls:
        inc[s]
    for l, (a, b, _) in enumerate(c.edges):
        for v in (a, b):
            if v != c.big:
                inc[v].append(l)
    return _encode([big] + sorted(tuple(sorted(ls)) for ls in inc.values()))


def _decode_second(key: bytes) -> SecondCactus:
    big_block, *small_blocks = _split(key)
    ends = defaultdict(list)
    chamber = {}
    for code in big_block:
        l, ch = divmod(code, 2)
        ends[l].append("B")
        chamber[l] = CHAMBERS[ch]
    for i, block in enumerate(small_blocks):
        for l in block:
            ends[l].append(i)
    edges = tuple((ends[l][0], ends[l][1], chamber.get(l)) for l in range(SECOND_LABELS))
    return SecondCactus("B", frozenset(range(len(small_blocks))), edges)


def rotate_second(c: SecondCactus) -> SecondCactus:
    """Shift every label by one and re-read the chambers of the big oval.

    After the shift the big oval reads ``1,2,0,1,2,0``; re-cutting it in the
    new ``(2, 0)`` gaps moves ``(x,2), (y,0), (y,1)`` into one chamber.
    """
    new = [None] * SECOND_LABELS
    for l, (a, b, ch) in enumerate(c.edges):
        if ch == X:
            ch = X if l == 2 else Y
        elif ch == Y:
            ch = X if l in (0, 1) else Y
        new[(l + 1) % SECOND_LABELS] = (a, b, ch)
    return SecondCactus(c.big, c.smalls, tuple(new))


def _first_orbit(c: FirstCactus, equivalence: Equivalence):
    shifts = range(len(c.edges)) if equivalence is Equivalence.ROTATED else (0,)
    return (c.shifted(s) for s in shifts)


def _second_orbit(c: SecondCactus, equivalence: Equivalence):
    steps = SECOND_LABELS if equivalence is Equivalence.ROTATED else 1
    for _ in range(steps):
        yield c
        yield c.swapped()
        c = rotate_second(c)


def first_key(c: FirstCactus, equivalence="rotated") -> bytes:
    equivalence = Equivalence.parse(equivalence)
    return min(_first_key(x) for x in _first_orbit(c, equivalence))


def second_key(c: SecondCactus, equivalence="rotated") -> bytes:
    equivalence = Equivalence.parse(equivalence)
    return min(_second_key(x) for x in _second_orbit(c, equivalence))


def canonical_first(c: FirstCactus, equivalence="rotated") -> CactusClass:
    equivalence = Equivalence.parse(equivalence)
    key = first_key(c, equivalence)
    index = _atlas_index(Family.FIRST, c.degree, equivalence).get(key)
    return CactusClass(Family.FIRST, c.degree, equivalence, key, index)


def canonical_second(c: SecondCactus, equivalence="rotated") -> CactusClass:
    equivalence = Equivalence.parse(equivalence)
    key = second_key(c, equivalence)
    index = _atlas_index(Family.SECOND, 5, equivalence).get(key)
    return CactusClass(Family.SECOND, 5, equivalence, key, index)


def canonical(c, equivalence="rotated") -> CactusClass:
    if isinstance(c, SecondCactus):
        return canonical_second(c, equivalence)
    return canonical_first(c, equivalence)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _labeled_trees(degree: int):
    """Yield every edge-labelled tree on ``degree`` ovals (with repetitions).

    A vertex-labelled tree rooted at 0 becomes edge-labelled by giving the
    parent edge of vertex ``v`` the label ``v - 1``; every edge-labelled tree
    arises ``degree`` times, once per choice of root.
    """
    for seq in itertools.product(range(degree), repeat=degree - 2):
        g = nx.from_prufer_sequence(list(seq))
        parent = nx.predecessor(g, 0)
        yield FirstCactus(degree, tuple((parent[v][0], v) for v in range(1, degree)))


@lru_cache(maxsize=None)
def _first_keys(degree: int, equivalence: Equivalence) -> tuple[bytes, ...]:
    return tuple(sorted({first_key(t, equivalence) for t in _labeled_trees(degree)}))


def enumerate_first(degree: int = 5, equivalence="rotated") -> list[CactusClass]:
    """One class per first-type cactus, ordered by canonical key."""
    equivalence = Equivalence.parse(equivalence)
    if not MIN_DEGREE <= degree <= MAX_DEGREE:
        raise DegreeOutOfRange(f"degree {degree} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
    return [CactusClass(Family.FIRST, degree, equivalence, k, i)
            for i, k in enumerate(_first_keys(degree, equivalence))]


def _second_candidates():
    for cls in enumerate_first(4, Equivalence.FIXED):
        tree = cls.representative
        for big in sorted(tree.vertices):
            at_big = tree.incident(big)
            for tags in itertools.product(CHAMBERS, repeat=len(at_big)):
                chamber = dict(zip(at_big, tags))
                edges = [(l, pair, chamber.get(l)) for l, pair in tree.labeled_edges()]
                yield make_second_cactus(edges, big=big)


@lru_cache(maxsize=None)
def _second_keys(equivalence: Equivalence) -> tuple[bytes, ...]:
    return tuple(sorted({second_key(c, equivalence) for c in _second_candidates()}))


def enumerate_second(equivalence="rotated") -> list[CactusClass]:
    equivalence = Equivalence.parse(equivalence)
    return [CactusClass(Family.SECOND, 5, equivalence, k, i)
            for i, k in enumerate(_second_keys(equivalence))]


def enumerate_family(family, degree: int = 5, equivalence="rotated") -> list[CactusClass]:
    if Family(family) is Family.SECOND:
        if degree != 5:
            raise DegreeOutOfRange("second-type cacti exist for degree 5 only")
        return enumerate_second(equivalence)
    return enumerate_first(degree, equivalence)


@lru_cache(maxsize=None)
def _atlas_index_cached(family: Family, degree: int, equivalence: Equivalence):
    keys = _first_keys(degree, equivalence) if family is Family.FIRST \
        else _second_keys(equivalence)
    return {k: i for i, k in enumerate(keys)}


def _atlas_index(family, degree, equivalence) -> dict[bytes, int]:
    # indexing a large degree would force a slow enumeration; leave it unset
    if family is Family.FIRST and degree > 6:
        return {}
    return _atlas_index_cached(family, degree, equivalence)


def class_by_index(family, index: int, degree: int = 5,
                   equivalence="rotated") -> CactusClass:
    classes = enumerate_family(family, degree, equivalence)
    if not 0 <= index < len(classes):
        raise UnknownClassId(f"no {Family(family).value}-type class #{index}")
    return classes[index]


# ---------------------------------------------------------------------------
# Rendering data
# ---------------------------------------------------------------------------

def boundary_walks(c: FirstCactus | SecondCactus) -> PlaneCactus:
    if isinstance(c, SecondCactus):
        ovals = []
        at_big = c.attachments()
        hexagon = tuple(
            MarkedPoint(l, "gluing", l, ch) if at_big.get(l) == ch
            else MarkedPoint(l, "plain", None, ch)
            for ch in CHAMBERS for l in range(SECOND_LABELS))
        ovals.append((c.big, hexagon))
        for s in sorted(c.smalls, key=_sort_key):
            glued = set(c.incident(s))
            points = tuple(MarkedPoint(l, "gluing", l) if l in glued else MarkedPoint(l, "plain")
                           for l in range(SECOND_LABELS))
            ovals.append((s, points + (MarkedPoint(None, "inner-dot"),)))
        return PlaneCactus(Family.SECOND, tuple(ovals), c.big)

    ovals = []
    for v in sorted(c.vertices, key=_sort_key):
        glued = set(c.incident(v))
        ovals.append((v, tuple(MarkedPoint(l, "gluing", l) if l in glued else MarkedPoint(l, "plain")
                               for l in range(len(c.edges)))))
    return PlaneCactus(Family.FIRST, tuple(ovals))


def _degree_map(c) -> Counter:
    deg = Counter({v: 0 for v in c.vertices})
    for _, e in c.labeled_edges():
        deg[e[0]] += 1
        deg[e[1]] += 1
    return deg


def _path_labels(c: FirstCactus) -> list[int]:
    deg = _degree_map(c)
    start = min((v for v, d in deg.items() if d == 1), key=_sort_key)
    seq, cur = [], start
    while True:
        step = [(l, pair) for l, pair in c.labeled_edges() if cur in pair and l not in seq]
        if not step:
            return seq
        l, (a, b) = step[0]
        seq.append(l)
        cur = b if a == cur else a


def shape_descriptor(c: FirstCactus | SecondCactus) -> str:
    """Short human-readable shape tag, e.g. ``chain(0,1,3,2)`` or ``star-B(x,y,x)``."""
    deg = _degree_map(c)
    if isinstance(c, SecondCactus):
        at_big = c.attachments()
        tags = [at_big[l] for l in sorted(at_big)]
        if tags and tags[0] == Y:
            tags = [X if t == Y else Y for t in tags]
        pattern = ",".join(tags)
        big_deg = deg[c.big]
        if big_deg == 3:
            return f"star-B({pattern})"
        if big_deg == 2:
            return f"big-middle-path({pattern})"
        if max(deg.values()) == 3:
            return "star-small"
        return "big-end-path"

    n, m = c.degree, len(c.edges)
    if max(deg.values()) == n - 1:
        return "star"
    if max(deg.values()) == 2:
        seq = _path_labels(c)
        best = min(tuple((l + s) % m for l in path)
                   for path in (seq, seq[::-1]) for s in range(m))
        return "chain(" + ",".join(map(str, best)) + ")"
    if n == 5:
        center = next(v for v, d in deg.items() if d == 3)
        for branch in c.incident(center):
            a, b = c.edges[branch]
            mid = b if a == center else a
            if deg[mid] == 2:
                tail = next(l for l in c.incident(mid) if l != branch)
                return f"T-shape({(tail - branch) % m})"
    return "tree(" + ",".join(map(str, sorted(deg.values(), reverse=True))) + ")"


def shape_family(descriptor: str) -> str:
    return descriptor.split("(", 1)[0]


def shape_census(classes: Iterable[CactusClass]) -> dict[str, int]:
    return dict(Counter(shape_family(shape_descriptor(c.representative)) for c in classes))


# ---------------------------------------------------------------------------
# Atlas file
# ---------------------------------------------------------------------------

def class_record(cls: CactusClass) -> dict:
    rep = cls.representative
    if isinstance(rep, SecondCactus):
        edges = [[l, str(a), str(b)] for l, (a, b, _) in rep.labeled_edges()]
        chambers = {str(l): ch for l, ch in sorted(rep.attachments().items())}
    else:
        edges = [[l, a, b] for l, (a, b) in rep.labeled_edges()]
        chambers = None
    return {
        "atlas_index": cls.atlas_index,
        "canonical_key": cls.key_hex,
        "edges": edges,
        "chambers": chambers,
        "shape_descriptor": shape_descriptor(rep),
    }


def atlas_document(family, degree: int = 5, equivalence="rotated") -> dict:
    equivalence = Equivalence.parse(equivalence)
    classes = enumerate_family(family, degree, equivalence)
    return {
        "family": Family(family).value,
        "degree": degree,
        "equivalence": equivalence.value,
        "classes": [class_record(c) for c in classes],
    }


def atlas_json(family, degree: int = 5, equivalence="rotated") -> str:
    return json.dumps(atlas_document(family, degree, equivalence), indent=2, sort_keys=True) + "\n"

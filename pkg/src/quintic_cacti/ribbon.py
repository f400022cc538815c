"""Bipartite ribbon graph of the two cactus atlases.

White vertices are first-type classes, black vertices second-type classes.
Each vertex carries a counter-clockwise rotation of its neighbours; faces
are traced with the usual next-edge rule and the genus follows from Euler's
formula.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (AmbiguousRotation, DualityMismatch, EmptyGraph,
                     NonOrientableParity, UnknownFormat)

WHITE, BLACK = "w", "b"
LEFT, RIGHT = "left", "right"

Vertex = tuple  # (colour, id)

# Adjacency stars as printed next to the transformation diagrams, each read
# left, top, right, bottom (white) or left, upper-right, lower-right (black).
PRINTED_WHITE_STARS = {
    1: (5, 4, 1, 2), 2: (2, 6, 2, 6), 3: (6, 2, 1, 7), 4: (1, 7, 1, 7),
    5: (3, 5, 6, 8), 6: (3, 4, 9, 5), 7: (3, 8, 7, 4), 8: (8, 8, 8, 8),
}
PRINTED_BLACK_STARS = {
    1: (3, 4, 1), 2: (3, 1, 2), 3: (6, 7, 5), 4: (6, 1, 7), 5: (5, 1, 6),
    6: (3, 2, 5), 7: (4, 3, 7), 8: (7, 5, 8), 9: (6, 6, 6),
}
# closed loops listed with the figures, squares = black, circles = white
PRINTED_LOOPS = (
    ((BLACK, 2), (WHITE, 1), (BLACK, 1), (WHITE, 4), (BLACK, 7), (WHITE, 7),
     (BLACK, 8), (WHITE, 8), (BLACK, 8), (WHITE, 5), (BLACK, 6), (WHITE, 2)),
    ((BLACK, 1), (WHITE, 1), (BLACK, 4), (WHITE, 6), (BLACK, 3), (WHITE, 5),
     (BLACK, 8), (WHITE, 7), (BLACK, 3), (WHITE, 6), (BLACK, 5), (WHITE, 1),
     (BLACK, 2), (WHITE, 3), (BLACK, 6), (WHITE, 5), (BLACK, 5), (WHITE, 6),
     (BLACK, 9), (WHITE, 6), (BLACK, 4), (WHITE, 7), (BLACK, 7), (WHITE, 3)),
    ((BLACK, 4), (WHITE, 1), (BLACK, 5), (WHITE, 5), (BLACK, 3), (WHITE, 7)),
    ((BLACK, 2), (WHITE, 2), (BLACK, 6), (WHITE, 3), (BLACK, 7), (WHITE, 4),
     (BLACK, 1), (WHITE, 3)),
)


def _other(colour: str) -> str:
    return BLACK if colour == WHITE else WHITE


def reduce_star(star: Sequence) -> tuple:
    """Merge parallel arrows, keeping the first-occurrence order.

    The result must not depend on where the cyclic star is cut open.
    """
    def first_occurrence(seq):
        out = []
        for x in seq:
            if x not in out:
                out.append(x)
        return out

    star = list(star)
    base = first_occurrence(star)
    if len(base) >= 3 and len(base) != len(star):
        for i in range(len(star)):
            cand = first_occurrence(star[i:] + star[:i])
            if not any(cand[j:] + cand[:j] == base for j in range(len(cand))):
                raise AmbiguousRotation(f"star {tuple(star)} has no well-defined reduction")
    return tuple(base)


@dataclass
class RibbonGraph:
    rotations: dict[Vertex, tuple[Vertex, ...]]
    arrows: dict[Vertex, tuple[Vertex, ...]] = field(default_factory=dict)

    @property
    def vertices(self) -> list[Vertex]:
        return sorted(self.rotations)

    @property
    def white(self) -> list[Vertex]:
        return [v for v in self.vertices if v[0] == WHITE]

    @property
    def black(self) -> list[Vertex]:
        return [v for v in self.vertices if v[0] == BLACK]

    @property
    def edges(self) -> list[tuple[Vertex, Vertex]]:
        return sorted((u, v) for u in self.rotations for v in self.rotations[u]
                      if u[0] == WHITE)

    def darts(self) -> list[tuple[Vertex, Vertex]]:
        return sorted((u, v) for u in self.rotations for v in self.rotations[u])

    def degree(self, v: Vertex) -> int:
        return len(self.rotations[v])

    def degrees(self, colour: str) -> list[int]:
        return sorted(self.degree(v) for v in self.vertices if v[0] == colour)

    def counts(self) -> tuple[int, int]:
        return len(self.rotations), len(self.edges)

    def mirrored(self) -> "RibbonGraph":
        return RibbonGraph({v: tuple(reversed(r)) for v, r in self.rotations.items()},
                           dict(self.arrows))

    def relabeled(self, mapping: Mapping[Vertex, Vertex]) -> "RibbonGraph":
        return RibbonGraph({mapping[v]: tuple(mapping[u] for u in r)
                            for v, r in self.rotations.items()})

    def is_connected(self) -> bool:
        if not self.rotations:
            return False
        start = self.vertices[0]
        seen, stack = {start}, [start]
        while stack:
            for u in self.rotations[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.rotations)


def from_stars(white: Mapping[int, Sequence[int]],
               black: Mapping[int, Sequence[int]]) -> RibbonGraph:
    """Build the reduced graph from raw white and black adjacency stars."""
    rotations, arrows = {}, {}
    for colour, stars in ((WHITE, white), (BLACK, black)):
        for v, star in stars.items():
            nbrs = tuple((_other(colour), u) for u in star)
            arrows[(colour, v)] = nbrs
            rotations[(colour, v)] = reduce_star(nbrs)
    from_white = {(v, u) for v, r in rotations.items() if v[0] == WHITE for u in r}
    from_black = {(u, v) for v, r in rotations.items() if v[0] == BLACK for u in r}
    if from_white != from_black:
        diff = sorted(from_white ^ from_black)
        raise DualityMismatch(f"white and black adjacency disagree on {diff[:4]}")
    return RibbonGraph(rotations, arrows)


def build_graph(first_classes=None, second_classes=None,
                black_reading: str = "ccw") -> RibbonGraph:
    """White stars from ``t1_star``, black stars from ``t2_star``.

    ``black_reading="cw"`` reverses every black star; it exists to show that
    only the coherent reading reproduces the four faces.
    """
    from .cactus import enumerate_first, enumerate_second
    from .transforms import t1_star, t2_star

    if first_classes is None:
        first_classes = enumerate_first(5)
    if second_classes is None:
        second_classes = enumerate_second()
    if black_reading not in ("ccw", "cw"):
        raise ValueError(f"unknown black reading {black_reading!r}")
    white = {w.atlas_index: [b.atlas_index for b in t1_star(w)] for w in first_classes}
    black = {}
    for b in second_classes:
        star = [w.atlas_index for w in t2_star(b)]
        black[b.atlas_index] = star[::-1] if black_reading == "cw" else star
    return from_stars(white, black)


def printed_fixture() -> RibbonGraph:
    """The graph of the printed adjacency tables.

    The printed stars run clockwise around the page, so they are reversed
    to obtain counter-clockwise rotations.
    """
    return from_stars({v: s[::-1] for v, s in PRINTED_WHITE_STARS.items()},
                      {v: s[::-1] for v, s in PRINTED_BLACK_STARS.items()})


# ---------------------------------------------------------------------------
# Faces and genus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FaceWalk:
    darts: tuple[tuple[Vertex, Vertex], ...]

    def __len__(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(u for u, _ in self.darts)


def _next_dart(g: RibbonGraph, dart, orientation: str):
    u, v = dart
    rot = g.rotations[v]
    i = rot.index(u)
    step = 1 if orientation == LEFT else -1
    return v, rot[(i + step) % len(rot)]


def faces(g: RibbonGraph, orientation: str = LEFT) -> list[FaceWalk]:
    """Orbits of the next-edge rule.

    ``left`` leaves each vertex by the counter-clockwise successor of the
    arrival edge, ``right`` by its predecessor.
    """
    if orientation not in (LEFT, RIGHT):
        raise ValueError(f"unknown orientation {orientation!r}")
    seen, out = set(), []
    for start in g.darts():
        if start in seen:
            continue
        walk, d = [], start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = _next_dart(g, d, orientation)
        out.append(FaceWalk(tuple(walk)))
    return out


def face_lengths(g: RibbonGraph, orientation: str = LEFT) -> list[int]:
    return sorted(len(f) for f in faces(g, orientation))


def is_face(g: RibbonGraph, cycle: Sequence[Vertex], orientation: str = LEFT) -> bool:
    """Whether the closed vertex sequence ``cycle`` is one face walk."""
    darts = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
    if any(d[1] not in g.rotations.get(d[0], ()) for d in darts):
        return False
    return all(_next_dart(g, darts[i], orientation) == darts[(i + 1) % len(darts)]
               for i in range(len(darts)))


def euler_characteristic(g: RibbonGraph, orientation: str = LEFT) -> int:
    v, e = g.counts()
    return v - e + len(faces(g, orientation))


def genus(g: RibbonGraph, orientation: str = LEFT) -> int:
    if not g.is_connected():
        raise ValueError("genus is defined for connected graphs")
    chi = euler_characteristic(g, orientation)
    if chi % 2:
        raise NonOrientableParity(f"odd Euler characteristic {chi}")
    return (2 - chi) // 2


# ---------------------------------------------------------------------------
# Map isomorphism
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MapIsomorphism:
    mapping: dict
    mirrored: bool


def _rot_step(g: RibbonGraph, dart, step: int):
    u, v = dart
    rot = g.rotations[u]
    return u, rot[(rot.index(v) + step) % len(rot)]


def _extend(a: RibbonGraph, b: RibbonGraph, d0, e0, mirrored: bool):
    step_b = -1 if mirrored else 1
    m = {d0: e0}
    stack = [d0]
    while stack:
        d = stack.pop()
        e = m[d]
        pairs = ((_rot_step(a, d, 1), _rot_step(b, e, step_b)),
                 ((d[1], d[0]), (e[1], e[0])))
        for nd, ne in pairs:
            if nd in m:
                if m[nd] != ne:
                    return None
            elif nd[0][0] != ne[0][0]:
                return None
            else:
                m[nd] = ne
                stack.append(nd)
    vmap = {}
    for d, e in m.items():
        if vmap.setdefault(d[0], e[0]) != e[0]:
            return None
    if len(set(vmap.values())) != len(vmap):
        return None
    return vmap


def map_isomorphic(a: RibbonGraph, b: RibbonGraph,
                   allow_mirror: bool = True) -> MapIsomorphism | None:
    """Colour-preserving bijection carrying rotations of ``a`` onto those of ``b``.

    Both graphs must be connected.  With ``allow_mirror`` the reversed
    orientation of ``b`` is tried when the direct one fails.
    """
    if a.counts() != b.counts() or not a.rotations:
        return None
    if a.degrees(WHITE) != b.degrees(WHITE) or a.degrees(BLACK) != b.degrees(BLACK):
        return None
    d0 = a.darts()[0]
    for mirrored in ((False, True) if allow_mirror else (False,)):
        for e0 in b.darts():
            if e0[0][0] != d0[0][0]:
                continue
            vmap = _extend(a, b, d0, e0, mirrored)
            if vmap is not None and len(vmap) == len(a.rotations):
                return MapIsomorphism(vmap, mirrored)
    return None


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _summary(g: RibbonGraph) -> dict:
    v, e = g.counts()
    out = {"V": v, "E": e}
    if g.is_connected():
        fs = faces(g)
        out.update(F=len(fs), genus=genus(g),
                   faces=[[f"{c}{i}" for c, i in f.vertices] for f in fs])
    return out


def to_json(g: RibbonGraph) -> str:
    doc = {
        "white": {str(v[1]): [u[1] for u in g.rotations[v]] for v in g.white},
        "black": {str(v[1]): [u[1] for u in g.rotations[v]] for v in g.black},
        **_summary(g),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def from_json(text: str | bytes) -> RibbonGraph:
    doc = json.loads(text)
    return from_stars({int(k): v for k, v in doc["white"].items()},
                      {int(k): v for k, v in doc["black"].items()})


def to_dot(g: RibbonGraph) -> str:
    s = _summary(g)
    lines = ["graph ribbon {",
             f"  // V={s['V']} E={s['E']}" + (f" F={s['F']}" if "F" in s else ""),
             f"  // genus: {s['genus']}" if "genus" in s else "  // genus: n/a"]
    for v in g.vertices:
        fill = "white" if v[0] == WHITE else "black"
        font = "black" if v[0] == WHITE else "white"
        rot = " ".join(f"{c}{i}" for c, i in g.rotations[v])
        lines.append(f'  "{v[0]}{v[1]}" [shape=circle, style=filled, fillcolor={fill}, '
                     f'fontcolor={font}, label="{v[1]}"];  // rotation: {rot}')
    for u, v in g.edges:
        lines.append(f'  "{u[0]}{u[1]}" -- "{v[0]}{v[1]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(g: RibbonGraph, fmt: str = "dot") -> bytes:
    if not g.rotations:
        raise EmptyGraph("nothing to export")
    if fmt == "dot":
        return to_dot(g).encode()
    if fmt == "json":
        return to_json(g).encode()
    raise UnknownFormat(f"unknown graph format {fmt!r}")


def white_degree_multiset(g: RibbonGraph) -> Counter:
    return Counter(g.degrees(WHITE))

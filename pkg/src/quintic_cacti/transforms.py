"""Moves between the two cactus families (degree 5).

``t1`` pushes quadrangle vertex ``k`` inside: the two ovals glued at label
``k`` merge into the big oval, and the surviving labels ``k+1, k+2, k+3``
become ``0, 1, 2``.  ``t2`` deletes the triangle side ``g`` and splits the big
oval back into two ovals joined by a new gluing inserted into that gap.
"""
from __future__ import annotations

from .cactus import (CactusClass, Equivalence, Family, FirstCactus, SecondCactus,
                     X, Y, canonical_first, canonical_second, make_first_cactus,
                     make_second_cactus)

GAPS = ((2, 0), (0, 1), (1, 2))

# hexagon points (chamber, label) that stay on the first half after the split
_SPLIT = {
    (2, 0): {(X, 0), (X, 1), (X, 2)},
    (0, 1): {(X, 1), (X, 2), (Y, 0)},
    (1, 2): {(X, 2), (Y, 0), (Y, 1)},
}

# old label (or "d" for the inserted gluing) -> label in Z4
_RELABEL = {
    (2, 0): {"d": 0, 0: 1, 1: 2, 2: 3},
    (0, 1): {0: 0, "d": 1, 1: 2, 2: 3},
    (1, 2): {0: 0, 1: 1, "d": 2, 2: 3},
}


def _first_rep(w) -> tuple[FirstCactus, Equivalence]:
    if isinstance(w, CactusClass):
        if w.family is not Family.FIRST or w.degree != 5:
            raise ValueError("t1 expects a degree-5 first-type class")
        return w.representative, w.equivalence
    if w.degree != 5:
        raise ValueError("t1 expects a degree-5 cactus")
    return w, Equivalence.ROTATED


def _second_rep(b) -> tuple[SecondCactus, Equivalence]:
    if isinstance(b, CactusClass):
        if b.family is not Family.SECOND:
            raise ValueError("t2 expects a second-type class")
        return b.representative, b.equivalence
    return b, Equivalence.ROTATED


def contract(c: FirstCactus, k: int) -> SecondCactus:
    """Merge the two ovals glued at label ``k`` into the big oval."""
    if k not in range(4):
        raise ValueError(f"label {k} outside Z4")
    a, b = c.edges[k]
    edges = []
    for l, (u, v) in c.labeled_edges():
        if l == k:
            continue
        new = (l - k - 1) % 4
        if v in (a, b):
            u, v = v, u
        if u in (a, b):
            edges.append((new, ("B", v), X if u == a else Y))
        else:
            edges.append((new, (u, v), None))
    return make_second_cactus(edges, big="B")


def split(c: SecondCactus, gap) -> FirstCactus:
    """Split the big oval along triangle side ``gap``."""
    gap = tuple(gap)
    if gap not in _SPLIT:
        raise ValueError(f"unknown gap {gap}")
    keep, relabel = _SPLIT[gap], _RELABEL[gap]
    u_half, v_half = ("U", c.big), ("V", c.big)
    edges = [(relabel["d"], (u_half, v_half))]
    for l, (a, b, ch) in c.labeled_edges():
        if ch is not None:
            a = u_half if (ch, l) in keep else v_half
        edges.append((relabel[l], (a, b)))
    return make_first_cactus(5, edges)


def t1(w, k: int) -> CactusClass:
    rep, equivalence = _first_rep(w)
    return canonical_second(contract(rep, k), equivalence)


def t1_star(w) -> tuple[CactusClass, ...]:
    """The four images of ``w`` in counter-clockwise order of the pushed vertex."""
    return tuple(t1(w, k) for k in range(4))


def t2(b, gap) -> CactusClass:
    rep, equivalence = _second_rep(b)
    return canonical_first(split(rep, gap), equivalence)


def t2_star(b) -> tuple[CactusClass, ...]:
    return tuple(t2(b, g) for g in GAPS)


def is_cyclic_shift(a, b) -> bool:
    a, b = list(a), list(b)
    return len(a) == len(b) and any(a[i:] + a[:i] == b for i in range(max(len(a), 1)))

"""Text and TikZ drawings of a cactus class."""
from __future__ import annotations

import math

from .cactus import (CactusClass, SecondCactus, _sort_key, boundary_walks,
                     shape_descriptor)
from .errors import UnknownFormat


def _partners(c) -> dict[tuple, object]:
    """(oval, label) -> the oval on the other side of that gluing."""
    out = {}
    for l, e in c.labeled_edges():
        a, b = e[0], e[1]
        out[(a, l)] = b
        out[(b, l)] = a
    return out


def render_text(cls: CactusClass) -> str:
    rep = cls.representative
    walks = boundary_walks(rep)
    walks.validate()
    other = _partners(rep)
    lines = [f"{cls.family.value}-type class #{cls.atlas_index}  {shape_descriptor(rep)}",
             f"key {cls.key_hex}  ({cls.equivalence.value} labels)"]
    for oval, points in walks.ovals:
        toks = []
        for p in points:
            if p.kind == "inner-dot":
                toks.append("*")
                continue
            tok = f"{p.chamber}{p.label}" if p.chamber else str(p.label)
            if p.kind == "gluing":
                tok = f"[{tok}>{other[(oval, p.label)]}]"
            toks.append(tok)
        name = f"oval {oval}" + (" (big)" if oval == walks.big else "")
        lines.append(f"{name}: " + " ".join(toks))
    return "\n".join(lines) + "\n"


def _layout(rep) -> dict:
    """Centre, radius and angle of marked point 0 for every oval.

    Marked points sit counter-clockwise at equal angles; a child oval is
    tangent to its parent at the shared gluing point.
    """
    big = rep.big if isinstance(rep, SecondCactus) else None

    def count(v):
        return 6 if v == big else (3 if big is not None else len(rep.edges))

    def angle(v, start, label, chamber=None):
        k = count(v)
        pos = label + (3 if chamber == "y" else 0) if v == big else label
        return start + 2 * math.pi * pos / k

    root = big if big is not None else min(rep.vertices, key=_sort_key)
    place = {root: (0.0, 0.0, 1.0, 0.0)}
    stack = [root]
    while stack:
        v = stack.pop()
        x, y, r, start = place[v]
        for l, e in rep.labeled_edges():
            a, b = e[0], e[1]
            if v not in (a, b):
                continue
            u = b if a == v else a
            if u in place:
                continue
            chamber = e[2] if isinstance(rep, SecondCactus) and v == big else None
            theta = angle(v, start, l, chamber)
            ru = 0.6 * r
            cx, cy = x + (r + ru) * math.cos(theta), y + (r + ru) * math.sin(theta)
            # the child's own point with this label faces back to the parent
            back = theta + math.pi
            own = angle(u, 0.0, l, e[2] if u == big else None)
            place[u] = (cx, cy, ru, back - own)
            stack.append(u)
    return place


def render_tikz(cls: CactusClass) -> str:
    rep = cls.representative
    walks = boundary_walks(rep)
    place = _layout(rep)
    big = walks.big
    lines = [f"% {cls.family.value}-type class #{cls.atlas_index}: {shape_descriptor(rep)}",
             "\\begin{tikzpicture}[scale=1.5]"]
    for oval, points in walks.ovals:
        x, y, r, start = place[oval]
        style = "thick" if oval == big else "semithick"
        lines.append(f"  \\draw[{style}] ({x:.4f},{y:.4f}) circle ({r:.4f});")
        marks = [p for p in points if p.kind != "inner-dot"]
        for i, p in enumerate(marks):
            t = start + 2 * math.pi * i / len(marks)
            px, py = x + r * math.cos(t), y + r * math.sin(t)
            lx, ly = x + 0.8 * r * math.cos(t), y + 0.8 * r * math.sin(t)
            fill = "black" if p.kind == "gluing" else "white"
            lines.append(f"  \\filldraw[fill={fill}] ({px:.4f},{py:.4f}) circle (0.03);")
            text = f"{p.chamber}_{p.label}" if p.chamber else str(p.label)
            lines.append(f"  \\node[font=\\tiny] at ({lx:.4f},{ly:.4f}) {{${text}$}};")
        if any(p.kind == "inner-dot" for p in points):
            lines.append(f"  \\fill ({x:.4f},{y:.4f}) circle (0.02);")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def render(cls: CactusClass, fmt: str = "text") -> str:
    if fmt == "text":
        return render_text(cls)
    if fmt == "tikz":
        return render_tikz(cls)
    raise UnknownFormat(f"unknown render format {fmt!r}")


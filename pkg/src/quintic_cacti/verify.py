"""Self-check suite shared by ``quintic-cacti verify`` and the acceptance tests."""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from .cactus import (Equivalence, canonical_first, enumerate_first, enumerate_second,
                     shape_census)
from .errors import CactusError, GenericityError, GraphError, NumericError
from .monodromy import oracle_report
from .numeric import (QUADRANGLE, PolynomialSpec, classify_polynomial,
                      sample_classes)
from .numeric import TRIANGLE as TRIANGLE_CASE
from .ribbon import (BLACK, LEFT, PRINTED_LOOPS, RIGHT, WHITE, build_graph,
                     face_lengths, genus, is_face, map_isomorphic, printed_fixture)
from .transforms import GAPS, contract, split, t1_star, t2_star

CRITERIA = {
    1: "class counts",
    2: "monodromy oracle agreement",
    3: "shape censuses",
    4: "transformation properties",
    5: "ribbon graph invariants",
    6: "isomorphism with the printed tables",
    7: "numeric classification of worked examples",
    8: "numeric sampling",
}


@dataclass
class Check:
    criterion: int
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "name": self.name,
                "expected": _plain(self.expected), "actual": _plain(self.actual),
                "status": "pass" if self.passed else "FAIL"}


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    timings: dict[int, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def criterion_passed(self, number: int) -> bool:
        mine = [c for c in self.checks if c.criterion == number]
        return bool(mine) and all(c.passed for c in mine)

    def to_dict(self, with_timings: bool = False) -> dict:
        doc = {"passed": self.passed,
               "criteria": {str(k): {"title": v, "passed": self.criterion_passed(k)}
                            for k, v in CRITERIA.items()
                            if any(c.criterion == k for c in self.checks)},
               "checks": [c.to_dict() for c in self.checks],
               "notes": _plain(self.notes)}
        if with_timings:
            doc["timings_s"] = {str(k): round(v, 3) for k, v in self.timings.items()}
        return doc

    def summary_lines(self) -> list[str]:
        out = []
        for k, title in CRITERIA.items():
            if not any(c.criterion == k for c in self.checks):
                continue
            out.append(f"[{'PASS' if self.criterion_passed(k) else 'FAIL'}] criterion {k}: {title}")
        return out


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _counts(report: VerifyReport, eq: Equivalence) -> None:
    add = report.checks.append
    add(Check(1, "first-type classes, degree 4", 2, len(enumerate_first(4, eq))))
    add(Check(1, "first-type classes, degree 5", 8, len(enumerate_first(5, eq))))
    add(Check(1, "second-type classes", 9, len(enumerate_second(eq))))


def _oracle(report: VerifyReport, eq: Equivalence) -> None:
    add = report.checks.append
    r5, r4 = oracle_report(5), oracle_report(4)
    tri = r5.triangle
    add(Check(2, "quadrangle tuples, n=5", 125, r5.tuples))
    add(Check(2, "triangle tuples, n=5", 125, tri["tuples"]))
    add(Check(2, "first-type fixed-label classes via trees", 25, r5.fixed_classes))
    add(Check(2, "first-type fixed-label classes via tuple orbits", 25, r5.orbits))
    add(Check(2, "second-type fixed-label classes via tuples", 25, tri["fixed_classes"]))
    add(Check(2, "second-type fixed-label classes via tuple orbits", 25, tri["orbits"]))
    add(Check(2, "tuples per fixed-label class", [5], list(r5.per_tree)))
    add(Check(2, "tuples per second-type fixed-label class", [5], list(tri["per_class"])))
    add(Check(2, "fixed-label atlases agree with the oracle",
              [25, 25], [len(enumerate_first(5, Equivalence.FIXED)),
                         len(enumerate_second(Equivalence.FIXED))]))
    add(Check(2, "oracle and atlas keys coincide", True, r5.agree))
    add(Check(2, "n=4 tuples / classes / rotated classes", [16, 4, 2],
              [r4.tuples, r4.fixed_classes, len(enumerate_first(4, eq))]))


def _censuses(report: VerifyReport, eq: Equivalence) -> None:
    add = report.checks.append
    add(Check(3, "first-type shapes", {"chain": 4, "T-shape": 3, "star": 1},
              shape_census(enumerate_first(5, eq))))
    add(Check(3, "second-type shapes",
              {"star-B": 2, "star-small": 1, "big-end-path": 2, "big-middle-path": 4},
              shape_census(enumerate_second(eq))))


def _transforms(report: VerifyReport, eq: Equivalence) -> None:
    add = report.checks.append
    whites, blacks = enumerate_first(5, eq), enumerate_second(eq)
    # the canonical image is only defined up to label rotation, so split the
    # contracted cactus itself
    section = sum(canonical_first(split(contract(w.representative, k), GAPS[0]), eq) == w
                  for w in whites for k in range(4))
    add(Check(4, "section identity t2(t1(w, k), (2,0)) = w", 32, section))
    w_adj = Counter((w, b) for w in whites for b in t1_star(w))
    b_adj = Counter((w, b) for b in blacks for w in t2_star(b))
    add(Check(4, "reciprocity of adjacency", True, set(w_adj) == set(b_adj)))
    add(Check(4, "white arrows", 32, sum(w_adj.values())))
    add(Check(4, "black arrows", 27, sum(b_adj.values())))
    add(Check(4, "merged edges", 25, len(set(w_adj) | set(b_adj))))


def _pick_orientation(g, orientation: str) -> str:
    if orientation != "auto":
        return orientation
    for o in (LEFT, RIGHT):
        if len(face_lengths(g, o)) == 4:
            return o
    return LEFT


def _graph(report: VerifyReport, eq: Equivalence, orientation: str) -> None:
    add = report.checks.append
    g = build_graph(enumerate_first(5, eq), enumerate_second(eq))
    bipartite = all(u[0] != v[0] for u in g.rotations for v in g.rotations[u])
    simple = all(len(set(r)) == len(r) for r in g.rotations.values())
    add(Check(5, "vertices and edges", [17, 25], list(g.counts())))
    add(Check(5, "simple bipartite", True, bipartite and simple))
    add(Check(5, "white degrees", [1, 2, 2, 4, 4, 4, 4, 4], g.degrees(WHITE)))
    add(Check(5, "black degrees", [1, 3, 3, 3, 3, 3, 3, 3, 3], g.degrees(BLACK)))

    by_orientation = {o: face_lengths(g, o) for o in (LEFT, RIGHT)}
    chosen = _pick_orientation(g, orientation)
    lengths = by_orientation[chosen]
    add(Check(5, f"face lengths ({chosen})", [6, 8, 12, 24], lengths))
    add(Check(5, "face lengths sum to 2E", 50, sum(lengths)))
    add(Check(5, "genus", 3, genus(g, chosen) if g.is_connected() else None))
    reversed_black = build_graph(enumerate_first(5, eq), enumerate_second(eq), "cw")
    report.notes["faces"] = {
        "orientation_used": chosen,
        "lengths_by_orientation": by_orientation,
        "four_face_orientations": [o for o, f in by_orientation.items() if len(f) == 4],
        "reversed_black_reading_lengths": face_lengths(reversed_black, chosen),
    }


def _fixture(report: VerifyReport, eq: Equivalence, orientation: str) -> None:
    add = report.checks.append
    g = build_graph(enumerate_first(5, eq), enumerate_second(eq))
    fixture = printed_fixture()
    iso = map_isomorphic(g, fixture)
    add(Check(6, "computed graph is map-isomorphic to the printed tables", True, iso is not None))
    if iso is None:
        add(Check(6, "printed 6-loop is a face of the computed graph", True, False))
        return
    inv = {v: k for k, v in iso.mapping.items()}
    chosen = _pick_orientation(g, orientation)
    loop = PRINTED_LOOPS[2]
    pulled = [inv[v] for v in loop]
    # a mirrored witness carries faces of one orientation onto the other
    o = chosen if not iso.mirrored else (RIGHT if chosen == LEFT else LEFT)
    add(Check(6, "printed 6-loop is a face of the computed graph", [True, 6],
              [is_face(g, pulled, o), len(pulled)]))
    add(Check(6, "all printed loops are faces", [True] * len(PRINTED_LOOPS),
              [is_face(g, [inv[v] for v in lp], o) for lp in PRINTED_LOOPS]))
    mirror = map_isomorphic(g, fixture.mirrored(), allow_mirror=False)
    report.notes["fixture"] = {
        "witness_mirrored": iso.mirrored,
        "mirror_image_also_isomorphic": mirror is not None,
        "bijection": {f"{c}{i}": f"{d}{j}" for (c, i), (d, j) in sorted(iso.mapping.items())},
    }


def _numeric_examples(report: VerifyReport, mesh: int, tol: float) -> None:
    add = report.checks.append
    g = build_graph()
    star_white = [v[1] for v in g.white if g.degree(v) == 1]
    star_black = [v[1] for v in g.black if g.degree(v) == 1]
    for coeffs, case, expect, label in (([1, 0, 0, 0, -5, 0], QUADRANGLE, star_white, "z^5 - 5z"),
                                        ([1, 0, 0, 1, 0, 0], TRIANGLE_CASE, star_black, "z^5 + z^2")):
        p = PolynomialSpec.from_coeffs(coeffs)
        try:
            a, b = classify_polynomial(p, mesh, tol), classify_polynomial(p, 2 * mesh, tol)
            got = [a.case, [a.atlas_index], b.atlas_index == a.atlas_index]
        except Exception as exc:  # reported as a failed check
            got = [type(exc).__name__]
        add(Check(7, f"{label}: case, class, stable under mesh halving", [case, expect, True], got))
    try:
        classify_polynomial(PolynomialSpec.from_coeffs([1, 0, 0, 0, 0, 0]), mesh, tol)
        outcome = "classified"
    except GenericityError:
        outcome = "GenericityError"
    add(Check(7, "z^5 rejected as degenerate", "GenericityError", outcome))


def _sampling(report: VerifyReport, seed: int, mesh: int) -> None:
    add = report.checks.append
    rep = sample_classes(100, seed, mesh)
    in_atlas = all((fam == "first" and 0 <= i < 8) or (fam == "second" and 0 <= i < 9)
                   for fam, i in rep.frequencies)
    add(Check(8, "samples classified without internal error", 100, rep.classified))
    add(Check(8, "classes fall in the 8 + 9 atlas", True, in_atlas))
    add(Check(8, "samples changing class under mesh halving", 0, rep.unstable))
    report.notes["sampling"] = rep.to_dict()


def run_verify(equivalence="rotated", orientation: str = "auto", seed: int = 0,
               mesh: int = 32, tol: float = 1e-12,
               criteria=None) -> VerifyReport:
    eq = Equivalence.parse(equivalence)
    if orientation not in (LEFT, RIGHT, "auto"):
        raise ValueError(f"unknown orientation {orientation!r}")
    steps: dict[int, Callable[[VerifyReport], None]] = {
        1: lambda r: _counts(r, eq),
        2: lambda r: _oracle(r, eq),
        3: lambda r: _censuses(r, eq),
        4: lambda r: _transforms(r, eq),
        5: lambda r: _graph(r, eq, orientation),
        6: lambda r: _fixture(r, eq, orientation),
        7: lambda r: _numeric_examples(r, mesh, tol),
        8: lambda r: _sampling(r, seed, mesh),
    }
    report = VerifyReport()
    report.notes["equivalence"] = eq.value
    for k in sorted(criteria or steps):
        start = time.perf_counter()
        try:
            steps[k](report)
        except (CactusError, GraphError, NumericError) as exc:
            report.checks.append(Check(k, "completed without error", None,
                                       f"{type(exc).__name__}: {exc}"))
        report.timings[k] = time.perf_counter() - start
    return report

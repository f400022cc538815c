from __future__ import annotations

import itertools

import pytest

from quintic_cacti.errors import AmbiguousRotation, DualityMismatch, EmptyGraph, UnknownFormat
from quintic_cacti.ribbon import (BLACK, LEFT, PRINTED_LOOPS, RIGHT, WHITE, RibbonGraph,
                                  build_graph, export, face_lengths, faces, from_json,
                                  from_stars, genus, is_face, map_isomorphic, printed_fixture,
                                  reduce_star, to_dot, to_json)
from quintic_cacti.transforms import is_cyclic_shift


@pytest.fixture(scope="module")
def computed():
    return build_graph()


@pytest.fixture(scope="module")
def fixture():
    return printed_fixture()


def ring(rot):
    return RibbonGraph({v: tuple(r) for v, r in rot.items()})


def test_reduce_star():
    assert reduce_star((1, 2, 1, 2)) == (1, 2)
    assert reduce_star((8, 8, 8, 8)) == (8,)
    assert reduce_star((3, 4, 1)) == (3, 4, 1)
    with pytest.raises(AmbiguousRotation):
        reduce_star((1, 2, 1, 3, 4, 3))


@pytest.mark.parametrize("name", ["computed", "fixture"])
def test_counts_and_degrees(name, request):
    g = request.getfixturevalue(name)
    assert g.counts() == (17, 25)
    assert g.degrees(WHITE) == [1, 2, 2, 4, 4, 4, 4, 4]
    assert g.degrees(BLACK) == [1, 3, 3, 3, 3, 3, 3, 3, 3]
    assert all(u[0] != v[0] for u in g.rotations for v in g.rotations[u])
    assert all(len(set(r)) == len(r) for r in g.rotations.values())


def test_leaves_not_adjacent(computed):
    leaves = [v for v in computed.vertices if computed.degree(v) == 1]
    assert sorted(v[0] for v in leaves) == [BLACK, WHITE]
    assert leaves[1] not in computed.rotations[leaves[0]]


def test_arrow_counts(computed):
    assert sum(len(a) for v, a in computed.arrows.items() if v[0] == WHITE) == 32
    assert sum(len(a) for v, a in computed.arrows.items() if v[0] == BLACK) == 27


@pytest.mark.parametrize("name", ["computed", "fixture"])
@pytest.mark.parametrize("orientation", [LEFT, RIGHT])
def test_faces(name, orientation, request):
    g = request.getfixturevalue(name)
    lengths = face_lengths(g, orientation)
    assert lengths == [6, 8, 12, 24]
    assert sum(lengths) == 50
    assert genus(g, orientation) == 3


def test_reversed_black_reading_breaks_faces():
    g = build_graph(black_reading="cw")
    assert len(face_lengths(g)) != 4
    assert genus(g) != 3


def test_printed_loops_are_faces(fixture):
    assert all(is_face(fixture, loop, LEFT) for loop in PRINTED_LOOPS)
    assert sorted(len(loop) for loop in PRINTED_LOOPS) == [6, 8, 12, 24]


def test_faces_partition_darts(computed):
    darts = [d for f in faces(computed) for d in f.darts]
    assert sorted(darts) == computed.darts()


def test_genus_single_edge():
    g = ring({(WHITE, 0): [(BLACK, 0)], (BLACK, 0): [(WHITE, 0)]})
    assert len(faces(g)) == 1 and genus(g) == 0


def test_genus_planar_cycle():
    w0, w1, b0, b1 = (WHITE, 0), (WHITE, 1), (BLACK, 0), (BLACK, 1)
    g = ring({w0: [b0, b1], w1: [b0, b1], b0: [w0, w1], b1: [w0, w1]})
    assert genus(g) == 0


def test_k33_rotation_systems():
    whites = [(WHITE, i) for i in range(3)]
    blacks = [(BLACK, i) for i in range(3)]
    genera = set()
    orders = [list(p) for p in itertools.permutations(range(3)) if p[0] == 0]
    for choice in itertools.product(orders, repeat=6):
        rot = {}
        for v, o in zip(whites + blacks, choice):
            nbrs = blacks if v[0] == WHITE else whites
            rot[v] = [nbrs[i] for i in o]
        genera.add(genus(ring(rot)))
    # K_{3,3} is not planar; its orientable genus is 1
    assert min(genera) == 1 and max(genera) >= 1


def test_torus_map():
    # K_{3,3} with every rotation in the same order tiles the torus by hexagons
    whites = [(WHITE, i) for i in range(3)]
    blacks = [(BLACK, i) for i in range(3)]
    rot = {w: list(blacks) for w in whites}
    rot.update({b: list(whites) for b in blacks})
    g = ring(rot)
    assert genus(g) == 1


def test_duality_mismatch():
    with pytest.raises(DualityMismatch):
        from_stars({1: [1, 2]}, {1: [1]})


def test_isomorphism_fixture_self(fixture):
    iso = map_isomorphic(fixture, fixture, allow_mirror=False)
    assert iso is not None and not iso.mirrored
    assert all(k == v for k, v in iso.mapping.items())


def test_isomorphism_negative(fixture):
    v = next(v for v in fixture.white if fixture.degree(v) == 4)
    rot = dict(fixture.rotations)
    r = rot[v]
    rot[v] = (r[0], r[2], r[1], r[3])
    broken = RibbonGraph(rot)
    assert map_isomorphic(broken, fixture, allow_mirror=False) is None


def test_computed_matches_fixture(computed, fixture):
    iso = map_isomorphic(computed, fixture)
    assert iso is not None and not iso.mirrored
    moved = computed.relabeled(iso.mapping)
    assert all(is_cyclic_shift(moved.rotations[v], fixture.rotations[v]) for v in fixture.vertices)
    inv = {b: a for a, b in iso.mapping.items()}
    six = PRINTED_LOOPS[2]
    assert len(six) == 6 and is_face(computed, [inv[v] for v in six], LEFT)
    assert map_isomorphic(computed, fixture.mirrored(), allow_mirror=False) is not None


def test_json_round_trip(fixture, computed):
    for g in (fixture, computed):
        back = from_json(to_json(g))
        assert back.rotations == g.rotations
    assert to_json(computed) == to_json(build_graph())


def test_dot(fixture):
    dot = to_dot(fixture)
    assert sum(1 for line in dot.splitlines() if "[shape=circle" in line) == 17
    assert sum(1 for line in dot.splitlines() if " -- " in line) == 25
    assert "// genus: 3" in dot


def test_export_errors(fixture):
    with pytest.raises(EmptyGraph):
        export(RibbonGraph({}), "dot")
    with pytest.raises(UnknownFormat):
        export(fixture, "png")
    assert export(fixture, "json").startswith(b"{")

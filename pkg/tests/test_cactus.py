from __future__ import annotations

import itertools
import json
from collections import defaultdict

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quintic_cacti.cactus import (Equivalence, Family, FirstCactus, SecondCactus, X, Y,
                                  atlas_json, boundary_walks, canonical_first,
                                  canonical_second, class_by_index, enumerate_first,
                                  enumerate_second, first_key, make_first_cactus,
                                  make_second_cactus, rotate_second, second_key,
                                  shape_census, shape_descriptor)
from quintic_cacti.errors import (BadChamber, BadLabels, BigSelfGluing, DegreeOutOfRange,
                                  NotATree, SelfLoop, UnknownClassId)

ROT, FIX = Equivalence.ROTATED, Equivalence.FIXED


def chain(labels, names="ABCDE"):
    return make_first_cactus(len(labels) + 1,
                             [(l, (names[i], names[i + 1])) for i, l in enumerate(labels)])


def star(center="C"):
    return make_first_cactus(5, [(l, (center, f"L{l}")) for l in range(4)])


def star_b(tags):
    return make_second_cactus([(l, ("B", f"S{l}"), t) for l, t in enumerate(tags)])


def labelled_trees(n):
    """Every tree on 0..n-1 with every assignment of edge labels."""
    for seq in itertools.product(range(n), repeat=n - 2):
        pairs = list(nx.from_prufer_sequence(list(seq)).edges())
        for perm in itertools.permutations(range(n - 1)):
            yield make_first_cactus(n, [(perm[i], p) for i, p in enumerate(pairs)])


def as_graph(c: FirstCactus, shift=0):
    g = nx.Graph()
    for l, (u, v) in c.labeled_edges():
        g.add_edge(u, v, label=(l + shift) % len(c.edges))
    return g


def same_labelled_tree(a, b, shift=0):
    return nx.is_isomorphic(as_graph(a, shift), as_graph(b),
                            edge_match=lambda x, y: x["label"] == y["label"])


# -- construction -----------------------------------------------------------

def test_valid_chain_and_star():
    assert shape_descriptor(chain([0, 1, 2, 3])) == "chain(0,1,2,3)"
    assert shape_descriptor(star()) == "star"


def test_duplicate_pair_rejected():
    with pytest.raises((BadLabels, NotATree)):
        make_first_cactus(5, [(0, ("A", "B")), (1, ("A", "B")), (2, ("B", "C")), (3, ("C", "D"))])


def test_cycle_rejected():
    with pytest.raises(NotATree):
        make_first_cactus(5, [(0, ("A", "B")), (1, ("B", "C")), (2, ("C", "A")), (3, ("D", "E"))])


def test_bad_labels_and_self_loop():
    with pytest.raises(BadLabels):
        make_first_cactus(4, [(0, ("A", "B")), (0, ("B", "C")), (2, ("C", "D"))])
    with pytest.raises(SelfLoop):
        make_first_cactus(4, [(0, ("A", "A")), (1, ("B", "C")), (2, ("C", "D"))])


def test_second_type_construction():
    assert shape_descriptor(star_b("xxx")) == "star-B(x,x,x)"
    c = make_second_cactus([(0, ("S1", "S2"), None), (1, ("S2", "B"), Y), (2, ("S2", "S3"), None)])
    assert shape_descriptor(c) == "star-small"
    with pytest.raises(BigSelfGluing):
        make_second_cactus([(0, ("B", "B"), X), (1, ("B", "S1"), X), (2, ("S1", "S2"), None)])
    with pytest.raises(BadChamber):
        make_second_cactus([(0, ("B", "S1"), None), (1, ("S1", "S2"), None), (2, ("S2", "S3"), None)])
    with pytest.raises(BadChamber):
        make_second_cactus([(0, ("B", "S1"), X), (1, ("S1", "S2"), X), (2, ("S2", "S3"), None)])


# -- keys -------------------------------------------------------------------

def test_chain_shift_equal_under_rotation_only():
    a, b = chain([0, 1, 2, 3]), chain([1, 2, 3, 0])
    assert first_key(a, ROT) == first_key(b, ROT)
    assert first_key(a, FIX) != first_key(b, FIX)


def test_chain_0123_vs_0132_distinct():
    a, b = chain([0, 1, 2, 3]), chain([0, 1, 3, 2])
    for eq in (ROT, FIX):
        assert first_key(a, eq) != first_key(b, eq)


def test_star_is_rotation_fixed():
    keys = {first_key(star(c), FIX) for c in ("C", "Z")}
    assert len(keys) == 1
    s = star()
    assert all(first_key(s.shifted(k), FIX) == first_key(s, FIX) for k in range(4))


@settings(max_examples=60, deadline=None)
@given(st.permutations(range(5)), st.integers(0, 3), st.randoms(use_true_random=False))
def test_key_ignores_vertex_names_and_shift(perm, shift, rnd):
    seq = [rnd.randrange(5) for _ in range(3)]
    pairs = list(nx.from_prufer_sequence(seq).edges())
    labels = list(range(4))
    rnd.shuffle(labels)
    c = make_first_cactus(5, list(zip(labels, pairs)))
    renamed = make_first_cactus(5, [(l, (perm[u], perm[v])) for l, (u, v) in c.labeled_edges()])
    assert first_key(renamed, FIX) == first_key(c, FIX)
    assert first_key(c.shifted(shift), ROT) == first_key(c, ROT)


@pytest.mark.parametrize("n", [4, 5])
def test_fixed_keys_match_labelled_tree_isomorphism(n):
    groups = defaultdict(list)
    for c in labelled_trees(n):
        groups[first_key(c, FIX)].append(c)
    # edge-labelled trees have no automorphisms, so every class has n! members
    assert all(len(g) == len(list(itertools.permutations(range(n)))) for g in groups.values())
    assert len(groups) == n ** (n - 3)
    reps = [g[0] for g in groups.values()]
    for g in groups.values():
        assert all(same_labelled_tree(g[0], c) for c in g[:: max(1, len(g) // 6)])
    for a, b in itertools.combinations(reps, 2):
        assert not same_labelled_tree(a, b)


@pytest.mark.parametrize("n,expected", [(3, 1), (4, 2), (5, 8), (6, 44)])
def test_rotated_count_by_burnside(n, expected):
    # fixed classes with a label shift of order d are counted directly
    fixed = enumerate_first(n, FIX)
    m = n - 1
    fixed_points = [sum(first_key(c.representative.shifted(s), FIX) == c.canonical_key
                        for c in fixed) for s in range(m)]
    assert sum(fixed_points) % m == 0
    assert sum(fixed_points) // m == expected == len(enumerate_first(n, ROT))


def test_rotated_classes_merge_shifted_trees():
    classes = enumerate_first(5, ROT)
    for a, b in itertools.combinations(classes, 2):
        ra, rb = a.representative, b.representative
        assert not any(same_labelled_tree(ra, rb, s) for s in range(4))


# -- second type ------------------------------------------------------------

def test_rotate_second_examples():
    xxx = star_b("xxx")
    assert second_key(rotate_second(xxx), FIX) != second_key(xxx, FIX)
    assert shape_descriptor(rotate_second(xxx)) != "star-B(x,x,x)"
    xyx = star_b("xyx")
    assert second_key(rotate_second(xyx), FIX) == second_key(xyx, FIX)


@pytest.mark.parametrize("tags", ["xxx", "xxy", "xyx", "xyy", "yxx", "yyy"])
def test_rotate_second_has_period_three(tags):
    c = star_b(tags)
    thrice = rotate_second(rotate_second(rotate_second(c)))
    assert second_key(thrice, FIX) == second_key(c, FIX)


def test_second_key_examples():
    assert second_key(star_b("xxx"), FIX) == second_key(star_b("yyy"), FIX)
    assert second_key(star_b("xxy"), FIX) != second_key(star_b("xxx"), FIX)
    for c in (star_b("xxy"), star_b("xyy")):
        orbit = [c, rotate_second(c), rotate_second(rotate_second(c))]
        assert len({second_key(o, ROT) for o in orbit}) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 24), st.integers(0, 2), st.booleans())
def test_second_key_invariance(i, turns, swap):
    c = enumerate_second(FIX)[i].representative
    d = c.swapped() if swap else c
    for _ in range(turns):
        d = rotate_second(d)
    assert second_key(d, ROT) == second_key(c, ROT)
    if turns == 0:
        assert second_key(d, FIX) == second_key(c, FIX)


# -- enumeration ------------------------------------------------------------

def test_counts():
    assert len(enumerate_first(4, ROT)) == 2
    assert len(enumerate_first(5, ROT)) == 8
    assert len(enumerate_first(5, FIX)) == 25
    assert len(enumerate_second(ROT)) == 9
    assert len(enumerate_second(FIX)) == 25
    assert sorted(shape_descriptor(c.representative) for c in enumerate_first(4, ROT)) == [
        "chain(0,1,2)", "star"]


def test_censuses():
    assert shape_census(enumerate_first(5)) == {"chain": 4, "T-shape": 3, "star": 1}
    assert shape_census(enumerate_second()) == {
        "star-B": 2, "star-small": 1, "big-end-path": 2, "big-middle-path": 4}


def test_degree_guard():
    with pytest.raises(DegreeOutOfRange):
        enumerate_first(2)
    with pytest.raises(DegreeOutOfRange):
        enumerate_first(9)


def test_atlas_indices_follow_key_order():
    for classes in (enumerate_first(5), enumerate_second()):
        assert [c.atlas_index for c in classes] == list(range(len(classes)))
        keys = [c.canonical_key for c in classes]
        assert keys == sorted(keys)
    with pytest.raises(UnknownClassId):
        class_by_index("second", 9)


def test_canonical_reports_atlas_index():
    assert canonical_first(star()).atlas_index == 7
    assert canonical_second(star_b("yxy")).atlas_index == 3


def test_t_shape_offset():
    # centre C with edges 1, 2, 3; tail 0 hangs off the branch through edge 1
    c = make_first_cactus(5, [(1, ("C", "M")), (2, ("C", "P")), (3, ("C", "Q")), (0, ("M", "T"))])
    assert shape_descriptor(c) == "T-shape(3)"


# -- rendering data ---------------------------------------------------------

def test_boundary_walks_chain():
    walks = boundary_walks(chain([0, 1, 2, 3]))
    walks.validate()
    assert len(walks.ovals) == 5
    for oval, points in walks.ovals:
        assert [p.label for p in points] == [0, 1, 2, 3]
    glued = {oval: [p.label for p in pts if p.kind == "gluing"] for oval, pts in walks.ovals}
    assert glued == {"A": [0], "B": [0, 1], "C": [1, 2], "D": [2, 3], "E": [3]}


def test_boundary_walks_second_type():
    walks = boundary_walks(star_b("xxx"))
    hexagon = walks.walk("B")
    assert [(p.chamber, p.label) for p in hexagon if p.kind == "gluing"] == [(X, 0), (X, 1), (X, 2)]
    for c in enumerate_second(FIX):
        w = boundary_walks(c.representative)
        w.validate()
        dots = [(o, p) for o, pts in w.ovals for p in pts if p.kind == "inner-dot"]
        assert len(dots) == 3 and all(o != w.big for o, _ in dots)


def test_atlas_json_deterministic():
    a = atlas_json("first", 5, "rotated")
    assert a == atlas_json(Family.FIRST, 5, ROT)
    doc = json.loads(a)
    assert len(doc["classes"]) == 8
    assert len(json.loads(atlas_json("second"))["classes"]) == 9
    assert len(json.loads(atlas_json("first", 4))["classes"]) == 2


def test_representative_roundtrip():
    for cls in enumerate_first(5) + enumerate_second():
        rep = cls.representative
        canon = canonical_second(rep) if isinstance(rep, SecondCactus) else canonical_first(rep)
        assert canon == cls

from __future__ import annotations

import itertools
from collections import Counter

import pytest

from quintic_cacti.cactus import (Equivalence, canonical_first, canonical_second,
                                  class_by_index, enumerate_first, enumerate_second,
                                  first_key, make_first_cactus, make_second_cactus,
                                  second_key, shape_descriptor)
from quintic_cacti.transforms import (GAPS, contract, is_cyclic_shift, split, t1, t1_star,
                                      t2, t2_star)

FIX = Equivalence.FIXED


def star_b(tags):
    return make_second_cactus([(l, ("B", f"S{l}"), t) for l, t in enumerate(tags)])


def by_shape(desc):
    return next(c for c in enumerate_first(5) if shape_descriptor(c.representative) == desc)


STAR = by_shape("star")


def test_t1_star_images():
    images = t1_star(STAR)
    assert len(set(images)) == 1
    assert shape_descriptor(images[0].representative) == "star-B(x,x,x)"


def test_t1_chain_contraction():
    chain = make_first_cactus(5, [(0, "AB"), (1, "BC"), (2, "CD"), (3, "DE")])
    b = contract(chain, 0)
    assert shape_descriptor(b) == "big-end-path"
    # labels read 0, 1, 2 walking away from the big oval
    cur, labels = "B", []
    while True:
        step = [(l, e) for l, e in b.labeled_edges() if cur in e[:2] and l not in labels]
        if not step:
            break
        l, (u, v, _) = step[0]
        labels.append(l)
        cur = v if u == cur else u
    assert labels == [0, 1, 2]


def test_contract_bad_label():
    with pytest.raises(ValueError):
        contract(STAR.representative, 4)


def test_t1_equivariant_under_label_shift():
    for w in enumerate_first(5, FIX):
        rep = w.representative
        base = [second_key(contract(rep, k), FIX) for k in range(4)]
        shifted = [second_key(contract(rep.shifted(1), k), FIX) for k in range(4)]
        assert shifted == base[-1:] + base[:-1]


def test_period_two_chain():
    images = t1_star(by_shape("chain(0,1,3,2)"))
    assert images[0] == images[2] and images[1] == images[3] and images[0] != images[1]


def test_generic_t_shape_has_distinct_images():
    t_shapes = [c for c in enumerate_first(5) if shape_descriptor(c.representative).startswith("T")]
    assert any(len(set(t1_star(c))) == 4 for c in t_shapes)


def test_t2_star_b_examples():
    xxx = canonical_second(star_b("xxx"))
    images = t2_star(xxx)
    assert images[0] == STAR
    assert images[1] != images[2]
    assert all(shape_descriptor(c.representative).startswith("T-shape") for c in images[1:])

    xyx = canonical_second(star_b("xyx"))
    same = t2_star(xyx)
    assert len(set(same)) == 1
    assert shape_descriptor(same[0].representative).startswith("T-shape")


def test_split_unknown_gap():
    with pytest.raises(ValueError):
        split(star_b("xxx"), (0, 2))


@pytest.mark.parametrize("w", enumerate_first(5), ids=lambda c: f"w{c.atlas_index}")
def test_section_identity(w):
    for k in range(4):
        assert canonical_first(split(contract(w.representative, k), GAPS[0])) == w


def test_section_identity_fixed_labels_up_to_shift():
    for w in enumerate_first(5, FIX):
        rep = w.representative
        for k in range(4):
            back = split(contract(rep, k), (2, 0))
            assert first_key(back.shifted(k), FIX) == w.canonical_key


def test_reciprocity():
    for b in enumerate_second():
        for w in t2_star(b):
            assert b in t1_star(w)
    for w in enumerate_first(5):
        for b in t1_star(w):
            assert w in t2_star(b)


def test_arrow_totals():
    white = Counter((w, b) for w in enumerate_first(5) for b in t1_star(w))
    black = Counter((w, b) for b in enumerate_second() for w in t2_star(b))
    assert sum(white.values()) == 32
    assert sum(black.values()) == 27
    assert len(set(white) | set(black)) == 25
    assert set(white) == set(black)


def test_images_are_valid_classes():
    seconds = set(enumerate_second())
    firsts = set(enumerate_first(5))
    for w, k in itertools.product(enumerate_first(5), range(4)):
        assert t1(w, k) in seconds
    for b, g in itertools.product(enumerate_second(), GAPS):
        assert t2(b, g) in firsts


def test_t1_rejects_other_degrees():
    with pytest.raises(ValueError):
        t1(class_by_index("first", 0, degree=4), 0)


def test_is_cyclic_shift():
    assert is_cyclic_shift([1, 2, 3], [3, 1, 2])
    assert not is_cyclic_shift([1, 2, 3], [1, 3, 2])
    assert is_cyclic_shift([], [])

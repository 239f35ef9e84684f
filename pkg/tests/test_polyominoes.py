import numpy as np
import pytest

from acss import graphs as G
from oracles import brute_free_count
from acss.polyominoes import (Polyomino, UnsupportedInputError, bitmap, canonical, corner_graph,
                              dumps, enumerate_free, from_bitmap, has_hole, is_connected, loads,
                              transforms)


@pytest.mark.parametrize("n, fixed, free", [(1, 1, 1), (2, 2, 1), (3, 6, 2), (4, 19, 5),
                                            (5, 63, 12), (6, 216, 35)])
def test_counts_against_brute_force(n, fixed, free):
    assert brute_free_count(n) == (fixed, free)
    assert len(enumerate_free(n)) == free


def test_enumeration_properties():
    for n in range(1, 7):
        shapes = enumerate_free(n)
        assert len({p.canonical for p in shapes}) == len(shapes)
        for p in shapes:
            assert is_connected(p.cells) and len(p) == n
            assert all(canonical(t) == p.canonical for t in transforms(p.cells))
    with pytest.raises(ValueError):
        enumerate_free(0)
    with pytest.raises(ValueError):
        enumerate_free(11)


def test_disconnected_rejected():
    with pytest.raises(ValueError):
        Polyomino(frozenset({(0, 0), (2, 0)}))


def test_bitmaps():
    assert bitmap(Polyomino(frozenset({(0, 0)}))).tolist() == [[1]]
    straight = Polyomino(frozenset((x, 0) for x in range(4)))
    assert bitmap(straight).tolist() == [[1, 1, 1, 1]]
    t = Polyomino(frozenset({(0, 0), (1, 0), (2, 0), (1, 1)}))
    assert bitmap(t).tolist() == [[1, 1, 1], [0, 1, 0]]
    assert from_bitmap(bitmap(t)).cells == t.cells


def test_corner_graphs():
    mono = corner_graph(Polyomino(frozenset({(0, 0)})))
    assert (mono.n, len(mono.edges)) == (4, 4)
    assert G.isomorphic(mono, G.cycle(4))
    domino = corner_graph(Polyomino(frozenset({(0, 0), (1, 0)})))
    assert (domino.n, len(domino.edges)) == (6, 7)
    square = corner_graph(Polyomino(frozenset({(0, 0), (1, 0), (0, 1), (1, 1)})))
    assert (square.n, len(square.edges)) == (9, 12)
    assert square.degrees() == [2, 3, 2, 3, 4, 3, 2, 3, 2]


def test_corner_graph_invariant_under_transforms():
    for p in enumerate_free(5):
        g = corner_graph(p)
        for t in transforms(p.cells):
            assert G.isomorphic(corner_graph(Polyomino(frozenset(t))), g)


def test_holes_refused():
    ring = Polyomino(frozenset((x, y) for x in range(3) for y in range(3)) - {(1, 1)})
    assert has_hole(ring)
    assert not any(has_hole(p) for n in range(1, 7) for p in enumerate_free(n))
    with pytest.raises(UnsupportedInputError):
        corner_graph(ring)


def test_text_roundtrip():
    shapes = enumerate_free(4)
    assert [p.cells for p in loads(dumps(shapes))] == [p.cells for p in shapes]
    with pytest.raises(ValueError, match="line 1"):
        loads("0,0 1\n")

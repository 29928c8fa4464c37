from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from artifact.bubble import ColoredGraph, Pairing, face_counts, graph_faces
from artifact.enumeration import enumerate_gluings
from artifact.errors import LabelMismatch, UnreducedTemplate
from artifact.named import k33, meander6, necklace, quartic_melonic
from artifact.walsh import (black_vertices, from_walsh, glue, make_template, project, to_walsh, walsh_connected,
                            walsh_face_counts, walsh_faces)


def test_black_vertices_chains_and_cycles():
    mu = (1, None, 3, 2)
    assert black_vertices(mu) == [((0, 1), True), ((2, 3), False)]


@pytest.mark.parametrize("method", ["star", "edges", "simplified"])
def test_open_gluings_faces_match_exactly(named, method):
    for name in ("quartic", "necklace", "k33"):
        b, om = named[name]
        copies = 1 if name == "k33" and method != "star" else 2
        for gl in enumerate_gluings(b, copies, closed=False):
            g = gl.graph
            w = to_walsh(g, om, method)
            assert from_walsh(w) == g
            fg, fw = graph_faces(g), walsh_faces(w)
            for i in range(1, b.D + 1):
                assert sorted(fg.closed[i]) == sorted(fw.closed[i])
                assert sorted(fg.broken[i]) == sorted(fw.broken[i])


def test_full_template_is_refused_when_cyclic():
    b, om = k33(), Pairing((1, 0, 2))
    w = to_walsh(ColoredGraph(b, 1, (0, 1, 2)), om, "full")
    assert not w.template.reduced
    with pytest.raises(UnreducedTemplate):
        walsh_faces(w)


def test_template_mismatch():
    t = make_template(k33(), Pairing((1, 0, 2)))
    with pytest.raises(LabelMismatch):
        to_walsh(ColoredGraph(meander6(), 1, (0, 1, 2)), Pairing((1, 0, 2)), template=t)
    with pytest.raises(LabelMismatch):
        to_walsh(ColoredGraph(k33(), 1, (0, 1, 2)), Pairing((1, 0)))


def test_glued_map_counts():
    b, om = necklace(2), Pairing.identity(2)
    w = to_walsh(ColoredGraph(b, 2, (1, None, 3, 0)), om, "simplified")
    gm = glue(w)
    assert len(gm.map.cilia) == 1
    assert gm.n_slots == 4


def test_projection_of_covering_is_a_star():
    b, om = meander6(), Pairing.identity(3)
    w = to_walsh(ColoredGraph(b, 1, om.tau0), om)
    p = project(w)
    # the covering glues every couple to itself: one white vertex with three leaves
    assert p.is_tree() and p.L == 0 and p.components() == 1


@settings(max_examples=80, deadline=None)
@given(st.permutations(list(range(9))))
def test_k33_three_copies_round_trip(mu):
    b, om = k33(), Pairing((1, 0, 2))
    g = ColoredGraph(b, 3, tuple(mu))
    w = to_walsh(g, om)
    assert from_walsh(w) == g
    assert walsh_face_counts(w) == face_counts(b, 3, mu)
    assert walsh_connected(w) == g.is_connected()

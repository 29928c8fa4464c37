import os

import pytest
from hypothesis import given, settings, strategies as st

from artifact import formats
from artifact.bubble import ColoredGraph, Pairing
from artifact.construction import build_map, reduce_map, simplify
from artifact.errors import ParseError
from artifact.named import k33, meander6, named_bubbles
from artifact.walsh import to_walsh


@pytest.mark.parametrize("name", ["quartic", "melonic6", "necklace", "meander6", "k33"])
def test_example_bubbles_match_named(data_dir, name):
    b, _ = named_bubbles()[name]
    assert formats.read_bubble(os.path.join(data_dir, f"{name}.bub")) == b
    assert formats.parse_bubble(formats.format_bubble(b)) == b
    assert formats.parse_inline_bubble(formats.inline_bubble(b)) == b


def test_resolve_bubble_forms(data_dir):
    assert formats.resolve_bubble("k33.bub", data_dir) == k33()
    assert formats.resolve_bubble("3 3;1 2 3;2 3 1;3 1 2") == k33()


@pytest.mark.parametrize("text", ["", "3 3\n1 2 3\n", "3 2\n1 2\n2 1\n1 3\n", "x y\n"])
def test_bad_bubble_text(text):
    with pytest.raises(ParseError):
        formats.parse_bubble(text)


def test_pairing_text():
    assert formats.parse_pairing("2 1 3", 3) == Pairing((1, 0, 2))
    assert formats.format_pairing(Pairing((1, 0, 2))) == "2 1 3"
    with pytest.raises(ParseError):
        formats.parse_pairing("1 2", 3)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.one_of(st.none(), st.integers(0, 5)), min_size=6, max_size=6))
def test_graph_round_trip(raw):
    used, mu = set(), []
    for x in raw:
        if x is None or x in used:
            mu.append(None)
        else:
            used.add(x)
            mu.append(x)
    g = ColoredGraph(meander6(), 2, tuple(mu))
    text = formats.format_graph(g)
    gf = formats.parse_graph(text)
    assert gf.graph == g
    assert formats.format_graph(gf.graph, gf.bubble_ref) == text


@pytest.mark.parametrize("stage", ["built", "reduced", "simplified"])
def test_map_round_trip(stage):
    m = build_map(k33(), Pairing((1, 0, 2)))
    if stage != "built":
        m = reduce_map(m)
    if stage == "simplified":
        m = simplify(m)
    assert formats.parse_map(formats.format_map(m)) == m


def test_walsh_round_trip():
    w = to_walsh(ColoredGraph(k33(), 2, (4, None, 5, 1, 0, 2)), Pairing((1, 0, 2)), "edges")
    text = formats.format_walsh(w)
    assert formats.parse_walsh(text).walsh == w
    assert formats.format_walsh(formats.parse_walsh(text).walsh) == text


def test_dot_exports():
    g = ColoredGraph(k33(), 1, (0, 1, 2))
    dot = formats.graph_to_dot(g)
    assert dot.startswith("graph") and "dashed" in dot
    for color in formats.PALETTE[:3]:
        assert color in dot
    mdot = formats.map_to_dot(build_map(k33(), Pairing((1, 0, 2))))
    assert mdot.startswith("graph map") and mdot.count("--") >= 6
    assert "graph" in formats.walsh_to_dot(to_walsh(g, Pairing((1, 0, 2))))

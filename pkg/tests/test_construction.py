import pytest
from hypothesis import given, settings, strategies as st

from artifact.bubble import Pairing, all_bubbles
from artifact.construction import build_map, leg_masks, reduce_map, simplify, single_vertex_order, to_legs
from artifact.maps import EdgeColoredMap, boundary, colors_mask, is_forest_everywhere, mask_colors, validate_map
from artifact.named import k33, meander6, named_bubbles, necklace
from artifact.pairing import enumerate_pairings, optimal_pairings


@pytest.mark.parametrize("method", ["star", "edges"])
def test_reduction_keeps_boundary_and_kills_cycles(method):
    for D in (2, 3):
        for V in (1, 2, 3):
            for b in all_bubbles(D, V):
                for om in enumerate_pairings(b):
                    m = build_map(b, om)
                    validate_map(m)
                    r = reduce_map(m, method)
                    assert boundary(r)[0] == b.in_pair_labels(om)
                    assert is_forest_everywhere(r)


def test_build_map_shape():
    b, om = k33(), Pairing((1, 0, 2))
    m = build_map(b, om)
    assert m.n_vertices == 3 and len(m.cilia) == 3 and m.n_edges == 6


def _legs(b, om):
    s = simplify(reduce_map(build_map(b, om)))
    assert s.n_vertices == 1
    return sorted(tuple(mask_colors(s.colors[h])) for h in s.cilia)


def test_simplified_leg_sets():
    assert _legs(necklace(2), Pairing((0, 1))) == [(1, 2), (1, 2)]
    assert _legs(necklace(2), Pairing((1, 0))) == [(3, 4), (3, 4)]
    assert _legs(meander6(), Pairing((0, 1, 2))) == [(2, 3), (2, 3, 4), (3, 4)]
    for om in optimal_pairings(k33()):
        assert _legs(k33(), om) == [(1, 2), (1, 3), (2, 3)]


def test_simplify_keeps_boundary_for_all_pairings():
    for b in (k33(), meander6(), necklace(2)):
        for om in enumerate_pairings(b):
            s = simplify(reduce_map(build_map(b, om)))
            assert boundary(s)[0] == b.in_pair_labels(om)
            assert is_forest_everywhere(s)


def test_leg_masks_and_order():
    pb = k33().in_pair_labels(Pairing((1, 0, 2)))
    assert sorted(leg_masks(pb)) == sorted(colors_mask(c) for c in ((1, 2), (1, 3), (2, 3)))
    assert single_vertex_order(pb) is not None


def test_to_legs_colors_cilia():
    m = to_legs(build_map(k33(), Pairing((1, 0, 2))))
    assert all(m.colors[h] != 0b111 for h in m.cilia)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["k33", "meander6", "necklace", "melonic6"]), st.randoms(use_true_random=False))
def test_boundary_ignores_order_of_colors_around_a_vertex(name, rnd):
    b, _ = named_bubbles()[name]
    for om in enumerate_pairings(b):
        m = build_map(b, om)
        verts = []
        for cyc in m.vertices:
            cil = [h for h in cyc if m.is_cilium(h)]
            rest = [h for h in cyc if not m.is_cilium(h)]
            rnd.shuffle(rest)
            # within one color the outgoing half-edge (built first) stays before the incoming one
            for mask in {m.colors[h] for h in rest}:
                pos = [k for k, h in enumerate(rest) if m.colors[h] == mask]
                darts = sorted(rest[k] for k in pos)
                for k, h in zip(pos, darts):
                    rest[k] = h
            verts.append(cil + rest)
        shuffled = EdgeColoredMap.from_vertices(m.D, verts, m.alpha, m.colors)
        assert boundary(shuffled)[0] == b.in_pair_labels(om)

import pytest

from artifact.analysis import (FAMILIES, dominance_check, face_gap, family_roles, graph_face_total,
                               single_cycle_check, tree_bound_counterexamples, tree_face_count, unhook,
                               unhook_mu)
from artifact.bubble import ColoredGraph, Pairing
from artifact.enumeration import enumerate_gluings
from artifact.errors import PreconditionViolated, UnknownFamily
from artifact.maps import colors_mask
from artifact.named import k33, meander6, necklace
from artifact.pairing import enumerate_pairings, optimal_pairings
from artifact.walsh import project, to_walsh

K33_REF = Pairing((1, 0, 2))

# Dominant K33 maps: two bridgeless cells with two fundamental cycles, and a map
# that needs three cells cut before it becomes a tree.
GOLDENS = [
    ("cell on one copy", (0, 2, 1), 1, 2),
    ("cell on two copies", (4, 3, 5, 1, 0, 2), 2, 2),
    ("one cell among trees", (0, 2, 3, 4, 1, 6, 7, 5, 8), 3, 2),
    ("three cells", (0, 2, 3, 1, 5, 6, 4, 8, 7), 3, 6),
]


def k33_walsh(mu, b):
    return to_walsh(ColoredGraph(k33(), b, mu), K33_REF)


def test_unhook_mu_detaches_slot():
    assert unhook_mu((1, 2, 0), 1) == (2, 1, 0)


def test_unhook_requires_degree_two():
    w = k33_walsh((0, 1, 2), 1)
    fixed = next(y for y in range(3) if w.mu[y] == y)
    with pytest.raises(PreconditionViolated):
        unhook(w, fixed)


def test_unhook_identity_on_every_edge():
    b, om = necklace(2), Pairing.identity(2)
    for gl in enumerate_gluings(b, 3):
        w = to_walsh(gl.graph, om)
        for y in range(6):
            if w.mu[y] != y:
                r = unhook(w, y)
                assert r.delta_faces == b.D - 2 * len(r.two_face_colors)


def test_tree_face_count_values():
    assert tree_face_count(k33(), K33_REF, 1) == 6
    assert tree_face_count(k33(), K33_REF, 3) == 12
    with pytest.raises(PreconditionViolated):
        tree_face_count(k33(), K33_REF, 0)


def test_face_gap_non_positive_for_optimal_pairings():
    b = meander6()
    for om in optimal_pairings(b):
        for gl in enumerate_gluings(b, 2, connected_only=True):
            assert face_gap(to_walsh(gl.graph, om)) <= 0


def test_face_gap_can_be_positive_for_other_pairings():
    b = meander6()
    non_opt = [om for om in enumerate_pairings(b) if om not in optimal_pairings(b)]
    w = to_walsh(ColoredGraph(b, 1, (0, 1, 2)), non_opt[0])
    assert face_gap(w) == graph_face_total(w) - tree_face_count(b, non_opt[0], 1)


def test_single_cycle_bound():
    b, om = necklace(2), Pairing.identity(2)
    seen = 0
    for gl in enumerate_gluings(b, 2, connected_only=True):
        w = to_walsh(gl.graph, om)
        if project(w).L == 1:
            seen += 1
            assert single_cycle_check(w)
    assert seen


def test_family_roles_read_from_masks():
    m = colors_mask
    assert family_roles([m([1, 2])] * 2, "necklace-triple", 4) == {"bundle": [1, 2], "forest_colors": [2, 3, 4]}
    roles = family_roles([m([1, 4]), m([1, 3, 4]), m([3, 4])], "meander6", 4)
    assert roles == {"shared": 4, "sides": [1, 3]}
    with pytest.raises(PreconditionViolated):
        family_roles([m([1, 2]), m([1, 3]), m([2, 3])], "melonic", 3)


def test_unknown_family_and_preconditions():
    w = k33_walsh((0, 2, 1), 1)
    with pytest.raises(UnknownFamily):
        dominance_check(w, "tetrahedral")
    with pytest.raises(PreconditionViolated):
        dominance_check(k33_walsh((0, 1, 2, 3, 4, 5), 2), "k33")
    with pytest.raises(PreconditionViolated):
        dominance_check(to_walsh(ColoredGraph(k33(), 1, (0, 1, 2)), Pairing((0, 1, 2))), "k33")
    assert set(FAMILIES) == {"melonic", "necklace-single", "necklace-triple", "meander6", "k33"}


@pytest.mark.parametrize("label,mu,b,L", GOLDENS, ids=[g[0] for g in GOLDENS])
def test_dominant_k33_goldens(label, mu, b, L):
    w = k33_walsh(mu, b)
    assert project(w).L == L
    res = dominance_check(w, "k33")
    assert res.dominant
    assert len(res.certificate["trace"]) == L // 2
    assert graph_face_total(w) == tree_face_count(k33(), K33_REF, b)
    assert face_gap(w) == 0


def test_k33_verdict_independent_of_cell_order():
    w = k33_walsh(GOLDENS[-1][1], 3)
    assert all(dominance_check(w, "k33", order_seed=s).dominant for s in range(5))


def test_non_dominant_k33():
    w = k33_walsh((0, 1, 2), 1)
    res = dominance_check(w, "k33")
    assert not res.dominant
    assert graph_face_total(w) < 6


def test_tree_bound_search_finds_nothing_for_optimal_pairings(named):
    for name in ("quartic", "necklace", "meander6", "k33"):
        b, _ = named[name]
        for om in optimal_pairings(b):
            assert tree_bound_counterexamples(b, om, 2) == []


def test_tree_bound_search_flags_non_optimal_pairings():
    b = meander6()
    worse = [om for om in enumerate_pairings(b) if om not in optimal_pairings(b)]
    assert worse
    for om in worse:
        assert tree_bound_counterexamples(b, om, 1)

"""Coverings, pairing enumeration, the contracted graph and optimality."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .bubble import Bubble, ColoredGraph, Pairing, graph_faces
from .errors import CapExceeded, MismatchBug
from .perm import UnionFind, compose, count_cycles, cycles, inverse

PAIRING_CAP = 8


def covering(b: Bubble, om: Pairing) -> ColoredGraph:
    """Close each couple of the pairing with a color-0 edge."""
    mu = [0] * b.V
    for a, blk in enumerate(om.tau0):
        mu[blk] = a
    return ColoredGraph(b, 1, tuple(mu))


def covering_face_count(b: Bubble, om: Pairing) -> int:
    inv0 = inverse(om.tau0)
    return sum(count_cycles(compose(inv0, t)) for t in b.tau)


def automorphisms(b: Bubble) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Color-preserving automorphisms as (white map, black map) couples.

    For a connected bubble the image of white vertex 0 determines everything,
    so at most V candidates are propagated.
    """
    V = b.V
    inv = [inverse(t) for t in b.tau]
    out = []
    for target in range(V):
        white = [None] * V
        black = [None] * V
        white[0] = target
        stack = [("w", 0)]
        ok = True
        while stack and ok:
            side, v = stack.pop()
            for i, t in enumerate(b.tau):
                if side == "w":
                    u, img = t[v], t[white[v]]
                    if black[u] is None:
                        black[u] = img
                        stack.append(("b", u))
                    elif black[u] != img:
                        ok = False
                        break
                else:
                    u, img = inv[i][v], inv[i][black[v]]
                    if white[u] is None:
                        white[u] = img
                        stack.append(("w", u))
                    elif white[u] != img:
                        ok = False
                        break
        if ok and None not in white and None not in black:
            if sorted(white) == list(range(V)) and sorted(black) == list(range(V)):
                out.append((tuple(white), tuple(black)))
    return out


def enumerate_pairings(b: Bubble, dedup: bool = False, cap: int = PAIRING_CAP) -> list[Pairing]:
    """All V! pairings in lexicographic order; with ``dedup`` one per automorphism orbit."""
    if b.V > cap:
        raise CapExceeded(f"V={b.V} exceeds the pairing cap {cap}")
    allp = [Pairing(p) for p in permutations(range(b.V))]
    if not dedup:
        return allp
    autos = automorphisms(b)
    seen = set()
    reps = []
    for om in allp:
        if om.tau0 in seen:
            continue
        reps.append(om)
        for white, black in autos:
            img = [0] * b.V
            for a, u in enumerate(om.tau0):
                img[white[a]] = black[u]
            seen.add(tuple(img))
    return reps


def optimal_pairings(b: Bubble, dedup: bool = False, cap: int = PAIRING_CAP) -> list[Pairing]:
    pairings = enumerate_pairings(b, dedup=dedup, cap=cap)
    faces = [covering_face_count(b, om) for om in pairings]
    best = max(faces)
    return [om for om, f in zip(pairings, faces) if f == best]


@dataclass(frozen=True)
class ContractedGraph:
    """Directed multigraph on the couples; ``edges[i]`` lists the color-i arcs."""

    V: int
    edges: dict

    def circuit_rank(self, color: int | None = None) -> int:
        arcs = self.edges[color] if color is not None else [e for c in self.edges for e in self.edges[c]]
        uf = UnionFind(self.V)
        for x, y in arcs:
            uf.union(x, y)
        return len(arcs) - self.V + uf.classes

    def color_cycles(self, color: int) -> list[tuple[int, ...]]:
        succ = dict(self.edges[color])
        out, seen = [], set()
        for start in sorted(succ):
            if start in seen:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = succ[x]
            out.append(tuple(cyc))
        return out


def contracted_graph(b: Bubble, om: Pairing) -> ContractedGraph:
    inv0 = inverse(om.tau0)
    edges = {}
    for i, t in enumerate(b.tau, start=1):
        edges[i] = [(x, inv0[t[x]]) for x in range(b.V) if t[x] != om.tau0[x]]
    return ContractedGraph(b.V, edges)


def optimality(b: Bubble, om: Pairing) -> int:
    """Optimality from circuit ranks, checked against the covering face count."""
    cg = contracted_graph(b, om)
    via_ranks = cg.circuit_rank() - sum(cg.circuit_rank(i) for i in range(1, b.D + 1))
    via_faces = 1 + (b.D - 1) * b.V - covering_face_count(b, om)
    if via_ranks != via_faces:
        raise MismatchBug(f"optimality formulas disagree: {via_ranks} vs {via_faces}")
    return via_ranks


def nontrivial_cycles(b: Bubble, om: Pairing, color: int) -> list[tuple[int, ...]]:
    """Cycles of length >= 2 of tau0^-1 tau_color on couples."""
    p = compose(inverse(om.tau0), b.tau[color - 1])
    return [c for c in cycles(p) if len(c) > 1]


__all__ = [
    "covering", "covering_face_count", "automorphisms", "enumerate_pairings",
    "optimal_pairings", "ContractedGraph", "contracted_graph", "optimality",
    "nontrivial_cycles",
]

"""Canonical map of a bubble with a pairing, and its reductions.

All maps built here label the cilium (or leg) of couple ``a`` with half-edge
``a``, so :func:`artifact.maps.boundary` returns the bubble in couple labels.
"""
from __future__ import annotations

from itertools import permutations
from typing import Optional

from .bubble import Bubble, Pairing
from .errors import BoundaryChanged, PreconditionViolated
from .maps import EdgeColoredMap, bit, boundary, full_mask, is_forest_everywhere
from .perm import cycles


class _Builder:
    """Accumulates half-edges, vertices and edges before freezing a map."""

    def __init__(self, D: int):
        self.D = D
        self.alpha: list[int] = []
        self.colors: list[int] = []
        self.vertices: list[list[int]] = []

    def dart(self, mask: int) -> int:
        self.alpha.append(len(self.alpha))
        self.colors.append(mask)
        return len(self.alpha) - 1

    def join(self, a: int, b: int) -> None:
        self.alpha[a], self.alpha[b] = b, a

    def freeze(self) -> EdgeColoredMap:
        used = sorted(h for v in self.vertices for h in v)
        if used != list(range(len(self.alpha))):
            # compact away half-edges dropped by rewrites
            new = {h: k for k, h in enumerate(used)}
            verts = [[new[h] for h in v] for v in self.vertices]
            return EdgeColoredMap.from_vertices(
                self.D, verts, [new[self.alpha[h]] for h in used], [self.colors[h] for h in used]
            )
        return EdgeColoredMap.from_vertices(self.D, self.vertices, self.alpha, self.colors)


def _pair_bubble(b: Bubble, om: Optional[Pairing]) -> Bubble:
    return b if om is None else b.in_pair_labels(om)


def build_map(b: Bubble, om: Pairing) -> EdgeColoredMap:
    """One vertex per couple; a color-i edge from couple x to couple tau_i(x) when they differ.

    Around a vertex: the cilium, outgoing half-edges by ascending color, then
    incoming half-edges by ascending color.
    """
    pb = _pair_bubble(b, om)
    D, V = pb.D, pb.V
    bld = _Builder(D)
    for _ in range(V):
        bld.dart(full_mask(D))
    out = {}
    inc = {}
    for i, t in enumerate(pb.tau, start=1):
        for x in range(V):
            if t[x] != x:
                out[i, x] = bld.dart(bit(i))
                inc[i, x] = bld.dart(bit(i))
    for i, t in enumerate(pb.tau, start=1):
        for x in range(V):
            if t[x] != x:
                bld.join(out[i, x], inc[i, t[x]])
    for x in range(V):
        v = [x]
        v += [out[i, x] for i in range(1, D + 1) if (i, x) in out]
        v += [inc[i, x] for i in range(1, D + 1) if (i, x) in inc]
        bld.vertices.append(v)
    m = bld.freeze()
    _guard(m, pb)
    return m


def _guard(m: EdgeColoredMap, pb: Bubble, forests: bool = False) -> None:
    got, _ = boundary(m)
    if got != pb:
        raise BoundaryChanged("construction altered the boundary graph")
    if forests and not is_forest_everywhere(m):
        raise BoundaryChanged("reduced map has a monochromatic cycle")


def reduce_map(m: EdgeColoredMap, method: str = "star") -> EdgeColoredMap:
    """Make every monochromatic submap a forest without touching the broken faces.

    ``star`` replaces each monochromatic cycle by a new center joined to the
    cycle vertices in cycle order; ``edges`` deletes the outgoing edge of the
    smallest vertex of each cycle.
    """
    pb, _ = boundary(m)
    if method == "star":
        out = _star_map(pb)
    elif method in ("edges", "edge-removal"):
        out = _edge_removal_map(pb)
    else:
        raise PreconditionViolated(f"unknown reduction method {method!r}")
    _guard(out, pb, forests=True)
    return out


def _star_map(pb: Bubble) -> EdgeColoredMap:
    D, V = pb.D, pb.V
    bld = _Builder(D)
    for _ in range(V):
        bld.dart(full_mask(D))
    at_vertex: list[list[int]] = [[x] for x in range(V)]
    centers = []
    for i, t in enumerate(pb.tau, start=1):
        for cyc in cycles(t):
            if len(cyc) < 2:
                continue
            center = []
            for x in cyc:
                s, c = bld.dart(bit(i)), bld.dart(bit(i))
                bld.join(s, c)
                at_vertex[x].append(s)
                center.append(c)
            centers.append(center)
    bld.vertices = at_vertex + centers
    return bld.freeze()


def _edge_removal_map(pb: Bubble) -> EdgeColoredMap:
    D, V = pb.D, pb.V
    bld = _Builder(D)
    for _ in range(V):
        bld.dart(full_mask(D))
    out, inc = {}, {}
    for i, t in enumerate(pb.tau, start=1):
        dropped = {min(c) for c in cycles(t) if len(c) > 1}
        for x in range(V):
            if t[x] != x and x not in dropped:
                out[i, x] = bld.dart(bit(i))
                inc[i, t[x]] = bld.dart(bit(i))
                bld.join(out[i, x], inc[i, t[x]])
    for x in range(V):
        v = [x]
        v += [out[i, x] for i in range(1, D + 1) if (i, x) in out]
        v += [inc[i, x] for i in range(1, D + 1) if (i, x) in inc]
        bld.vertices.append(v)
    return bld.freeze()


def to_legs(m: EdgeColoredMap) -> EdgeColoredMap:
    """Give each cilium the color set of the other half-edges at its vertex."""
    colors = list(m.colors)
    for cyc in m.vertices:
        rest = 0
        for h in cyc:
            if not m.is_cilium(h):
                rest |= m.colors[h]
        for h in cyc:
            if m.is_cilium(h):
                colors[h] = rest
    return EdgeColoredMap(m.D, m.sigma, m.alpha, tuple(colors), m.n_empty)


def leg_masks(pb: Bubble) -> list[int]:
    return [sum(bit(i) for i, t in enumerate(pb.tau, start=1) if t[x] != x) for x in range(pb.V)]


def single_vertex_order(pb: Bubble) -> Optional[tuple[int, ...]]:
    """A cyclic order of all couples inducing every color cycle, if one exists."""
    V = pb.V
    supports = []
    for t in pb.tau:
        moved = [x for x in range(V) if t[x] != x]
        if moved:
            if len([c for c in cycles(t) if len(c) > 1]) > 1:
                return None
            supports.append((set(moved), t))
    for rest in permutations(range(1, V)):
        order = (0,) + rest
        if all(_induces(order, sup, t) for sup, t in supports):
            return order
    return None


def _induces(order, support, t) -> bool:
    seq = [x for x in order if x in support]
    return all(t[a] == b for a, b in zip(seq, seq[1:] + seq[:1]))


def simplify(m: EdgeColoredMap) -> EdgeColoredMap:
    """Smaller leg-form template with the same broken faces, or the leg form of ``m``.

    Colors sharing a cycle are merged onto one multi-colored star; when one
    cyclic order of all couples induces every color cycle the whole template
    collapses to a single vertex carrying the V legs.  Otherwise ciliated
    leaves are contracted into their star centers and bivalent centers are
    smoothed.  The result is kept only if its boundary matches exactly.
    """
    pb, _ = boundary(m)
    masks = leg_masks(pb)
    order = single_vertex_order(pb)
    if order is not None:
        bld = _Builder(pb.D)
        for x in range(pb.V):
            bld.dart(masks[x])
        bld.vertices = [list(order)]
        cand = bld.freeze()
    else:
        cand = _merged_stars(pb, masks)
    try:
        got, _ = boundary(cand)
    except Exception:
        got = None
    if got == pb and is_forest_everywhere(cand):
        return cand
    return to_legs(m)


def _merged_stars(pb: Bubble, masks: list[int]) -> EdgeColoredMap:
    D, V = pb.D, pb.V
    merged: dict[tuple[int, ...], int] = {}
    for i, t in enumerate(pb.tau, start=1):
        for cyc in cycles(t):
            if len(cyc) > 1:
                merged[cyc] = merged.get(cyc, 0) | bit(i)
    stars: list[list] = []  # [order, {vertex: mask}]
    for cyc in sorted(merged, key=lambda c: (-len(c), c)):
        mask = merged[cyc]
        t = {a: b for a, b in zip(cyc, cyc[1:] + cyc[:1])}
        for order, edge_masks in stars:
            if set(cyc) <= set(order) and _induces(order, set(cyc), t):
                for x in cyc:
                    edge_masks[x] |= mask
                break
        else:
            stars.append([list(cyc), {x: mask for x in cyc}])
    # vertex x -> list of (star index)
    incident: list[list[int]] = [[] for _ in range(V)]
    for k, (order, _) in enumerate(stars):
        for x in order:
            incident[x].append(k)
    leaf = [len(incident[x]) == 1 and stars[incident[x][0]][1][x] == masks[x] for x in range(V)]
    bld = _Builder(D)
    for x in range(V):
        bld.dart(masks[x] if leaf[x] else full_mask(D))
    at_vertex = {x: [x] for x in range(V) if not leaf[x]}
    center_cycles = []
    for order, edge_masks in stars:
        center = []
        for x in order:
            if leaf[x]:
                center.append(x)
            else:
                s, c = bld.dart(edge_masks[x]), bld.dart(edge_masks[x])
                bld.join(s, c)
                at_vertex[x].append(s)
                center.append(c)
        center_cycles.append(center)
    # smooth bivalent centers whose two edges carry the same colors
    final_centers = []
    for center in center_cycles:
        if len(center) == 2 and not any(bld.alpha[h] == h for h in center):
            a, b = center
            if bld.colors[a] == bld.colors[b]:
                pa, pb_ = bld.alpha[a], bld.alpha[b]
                bld.join(pa, pb_)
                continue
        final_centers.append(center)
    bld.vertices = list(at_vertex.values()) + final_centers
    return to_legs(bld.freeze())

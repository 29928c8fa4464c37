"""Power of edge-colored maps and its upper bounds, with the equality structure."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import MismatchBug
from .maps import EdgeColoredMap, bit, boundary, closed_face_count, power, remove_cilia, stats
from .pairing import covering_face_count, optimality
from .perm import UnionFind


def is_tree(m: EdgeColoredMap) -> bool:
    return m.is_connected() and m.n_edges == m.n_vertices - 1


@dataclass(frozen=True)
class VacuumBound:
    power: int
    D: int
    tree: bool

    @property
    def holds(self) -> bool:
        return self.power <= self.D

    @property
    def saturated(self) -> bool:
        return self.power == self.D


def vacuum_bound(m: EdgeColoredMap) -> VacuumBound:
    """delta <= D for a connected map without cilia; saturation is expected exactly at trees."""
    return VacuumBound(power(m), m.D, is_tree(m))


@dataclass(frozen=True)
class CiliatedBound:
    power: int
    bound: int
    p: int
    opt: int
    structure: bool

    @property
    def holds(self) -> bool:
        return self.power <= self.bound

    @property
    def saturated(self) -> bool:
        return self.power == self.bound


def ciliated_power(m: EdgeColoredMap) -> int:
    return sum(closed_face_count(m, i) for i in range(1, m.D + 1)) - (m.D - 1) * m.n_edges


def ciliated_bound(m: EdgeColoredMap) -> CiliatedBound:
    """Power of a ciliated map against -(D-1)(p + opt - 1).

    Also checks that closing the cilia adds exactly the faces of the covering.
    Raises DisconnectedBoundary when the cilia do not define a bubble.
    """
    bub, om = boundary(m)
    p = len(m.cilia)
    delta = ciliated_power(m)
    closed = remove_cilia(m)
    delta0 = sum(closed_face_count(closed, i) for i in range(1, m.D + 1)) - (m.D - 1) * closed.n_edges
    if delta != delta0 - covering_face_count(bub, om):
        raise MismatchBug(f"closing cilia changed the power by {delta0 - delta}, not by the covering faces")
    opt = optimality(bub, om)
    return CiliatedBound(delta, -(m.D - 1) * (p + opt - 1), p, opt, equality_structure(m))


def equality_structure(m: EdgeColoredMap) -> bool:
    """The structural conditions expected exactly when the ciliated bound is attained.

    Every monochromatic submap is a forest; the trees with at least two cilia
    (external trees) of different colors share only ciliated vertices; the
    remaining edges form a forest each of whose trees touches the external
    part (plus the ciliated vertices) in a single vertex.
    """
    st = stats(m)
    if any(st[i].l for i in range(1, m.D + 1)):
        return False
    nv = m.n_vertices
    vo = m.vertex_of
    ciliated = {vo[h] for h in m.cilia}
    ext_edges = set()
    ext_verts: dict[int, set] = {}
    for i in range(1, m.D + 1):
        uf = UnionFind(nv)
        mono = [(h, a) for h, a in m.edges if m.colors[h] & bit(i)]
        for h, a in mono:
            uf.union(vo[h], vo[a])
        marks: dict[int, int] = {}
        for v in ciliated:
            r = uf.find(v)
            marks[r] = marks.get(r, 0) + 1
        for h, a in mono:
            if marks.get(uf.find(vo[h]), 0) >= 2:
                ext_edges.add(min(h, a))
                ext_verts.setdefault(vo[h], set()).add(i)
                ext_verts.setdefault(vo[a], set()).add(i)
    if any(len(cols) > 1 and v not in ciliated for v, cols in ext_verts.items()):
        return False
    core = set(ext_verts) | ciliated
    uf = UnionFind(nv)
    for h, a in m.edges:
        if min(h, a) in ext_edges:
            continue
        if not uf.union(vo[h], vo[a]):
            return False
    touch: dict[int, int] = {}
    for v in range(nv):
        if v in core:
            r = uf.find(v)
            touch[r] = touch.get(r, 0) + 1
    return all(touch.get(uf.find(v), 0) == 1 for v in range(nv))

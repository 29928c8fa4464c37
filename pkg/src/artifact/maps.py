"""Ciliated edge-colored combinatorial maps.

A map is a pair of permutations on dense half-edge labels: ``sigma`` whose
cycles are the vertices and ``alpha`` the edge involution.  Fixed points of
``alpha`` are cilia.  Each half-edge carries a color set stored as a bitmask
(bit ``i - 1`` for color ``i``).  Genuine cilia carry every color.  Templates of
stuffed Walsh maps also use fixed points with a partial color set, called legs,
possibly several per vertex; :func:`validate_map` with ``strict=True`` rejects
those.

Faces of color ``i`` are the cycles of ``phi_i = alpha o sigma_i`` where
``sigma_i`` skips half-edges without color ``i``.  A vertex with no half-edge of
color ``i`` is an isolated vertex of the monochromatic submap and counts as one
face.  The broken face that leaves a cilium ``c`` (the segment of its
``phi_i``-cycle up to the next cilium ``c'``) is read as an edge from the white
vertex of ``c`` to the black vertex of ``c'``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from .bubble import Bubble, Pairing
from .errors import DisconnectedBoundary, MismatchBug, OddEulerCharacteristic, PreconditionViolated
from .perm import UnionFind, cycles


def bit(i: int) -> int:
    return 1 << (i - 1)


def full_mask(D: int) -> int:
    return (1 << D) - 1


def mask_colors(mask: int) -> tuple[int, ...]:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def colors_mask(colors) -> int:
    m = 0
    for c in colors:
        m |= bit(c)
    return m


@dataclass(frozen=True)
class EdgeColoredMap:
    D: int
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    colors: tuple[int, ...]
    n_empty: int = 0

    def __post_init__(self):
        for name in ("sigma", "alpha", "colors"):
            object.__setattr__(self, name, tuple(int(x) for x in getattr(self, name)))
        H = len(self.sigma)
        if len(self.alpha) != H or len(self.colors) != H:
            raise PreconditionViolated("sigma, alpha and colors must have equal length")
        if sorted(self.sigma) != list(range(H)):
            raise PreconditionViolated("sigma is not a permutation")
        for h, a in enumerate(self.alpha):
            if not 0 <= a < H or self.alpha[a] != h:
                raise PreconditionViolated("alpha is not an involution")
            if self.colors[a] != self.colors[h]:
                raise PreconditionViolated("alpha does not preserve colors")
            if self.colors[h] & ~full_mask(self.D):
                raise PreconditionViolated("color outside 1..D")

    @classmethod
    def from_vertices(cls, D: int, vertices: Sequence[Sequence[int]], alpha, colors, n_empty: int = 0):
        H = len(alpha)
        sigma = [None] * H
        for cyc in vertices:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                sigma[a] = b
        if None in sigma:
            raise PreconditionViolated("vertices do not cover all half-edges")
        return cls(D, tuple(sigma), tuple(alpha), tuple(colors), n_empty)

    @property
    def H(self) -> int:
        return len(self.sigma)

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        return cycles(self.sigma)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        out = [0] * self.H
        for v, cyc in enumerate(self.vertices):
            for h in cyc:
                out[h] = v
        return tuple(out)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices) + self.n_empty

    @cached_property
    def cilia(self) -> tuple[int, ...]:
        return tuple(h for h, a in enumerate(self.alpha) if a == h)

    def is_cilium(self, h: int) -> bool:
        return self.alpha[h] == h

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((h, a) for h, a in enumerate(self.alpha) if h < a)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def sigma_restricted(self, i: int) -> dict[int, int]:
        """sigma_i on the half-edges carrying color i."""
        b = bit(i)
        out = {}
        for cyc in self.vertices:
            kept = [h for h in cyc if self.colors[h] & b]
            for a, c in zip(kept, kept[1:] + kept[:1]):
                out[a] = c
        return out

    def phi(self, i: int) -> dict[int, int]:
        s = self.sigma_restricted(i)
        alpha = self.alpha
        return {h: alpha[t] for h, t in s.items()}

    def face_cycles(self, i: int) -> list[tuple[int, ...]]:
        ph = self.phi(i)
        seen = set()
        out = []
        for start in sorted(ph):
            if start in seen:
                continue
            cyc, h = [], start
            while h not in seen:
                seen.add(h)
                cyc.append(h)
                h = ph[h]
            out.append(tuple(cyc))
        return out

    def isolated_vertices(self, i: int) -> list[int]:
        """Indices of vertices without any half-edge of color i (empty vertices come last)."""
        b = bit(i)
        out = [v for v, cyc in enumerate(self.vertices) if not any(self.colors[h] & b for h in cyc)]
        out.extend(range(len(self.vertices), len(self.vertices) + self.n_empty))
        return out

    def components(self, i: int | None = None) -> int:
        """Connected components of the whole map or of its color-i submap (isolated vertices included)."""
        nv = self.n_vertices
        uf = UnionFind(nv)
        vo = self.vertex_of
        for h, a in self.edges:
            if i is None or self.colors[h] & bit(i):
                uf.union(vo[h], vo[a])
        return uf.classes

    def is_connected(self) -> bool:
        return self.components() == 1


def validate_map(m: EdgeColoredMap, strict: bool = True) -> None:
    """Check the ciliated-map invariants; ``strict`` also forbids legs."""
    if not strict:
        return
    full = full_mask(m.D)
    for cyc in m.vertices:
        cil = [h for h in cyc if m.is_cilium(h)]
        if len(cil) > 1:
            raise PreconditionViolated("more than one cilium on a vertex")
        if cil and m.colors[cil[0]] != full:
            raise PreconditionViolated("a cilium must carry every color")
    for h, a in m.edges:
        if m.colors[h] == 0:
            raise PreconditionViolated("edge without color")


def mono_submap(m: EdgeColoredMap, i: int) -> EdgeColoredMap:
    """Keep the color-i half-edges and all cilia; vertices left bare become empty vertices."""
    b = bit(i)
    keep = [h for h in range(m.H) if m.colors[h] & b or m.is_cilium(h)]
    new = {h: k for k, h in enumerate(keep)}
    verts = []
    empty = m.n_empty
    for cyc in m.vertices:
        kept = [new[h] for h in cyc if h in new]
        if kept:
            verts.append(kept)
        else:
            empty += 1
    alpha = [new[m.alpha[h]] for h in keep]
    colors = [m.colors[h] if m.is_cilium(h) else b for h in keep]
    return EdgeColoredMap.from_vertices(m.D, verts, alpha, colors, empty)


class BrokenFace(NamedTuple):
    start: int
    inner: tuple[int, ...]
    end: int


class MapFaces(NamedTuple):
    closed: list[tuple[int, ...]]
    broken: list[BrokenFace]
    isolated: list[int]


def map_faces(m: EdgeColoredMap, i: int) -> MapFaces:
    closed, broken = [], []
    for cyc in m.face_cycles(i):
        marks = [k for k, h in enumerate(cyc) if m.is_cilium(h)]
        if not marks:
            closed.append(cyc)
            continue
        n = len(cyc)
        for k in marks:
            inner = []
            j = (k + 1) % n
            while not m.is_cilium(cyc[j]):
                inner.append(cyc[j])
                j = (j + 1) % n
            broken.append(BrokenFace(cyc[k], tuple(inner), cyc[j]))
    return MapFaces(closed, broken, m.isolated_vertices(i))


def closed_face_count(m: EdgeColoredMap, i: int) -> int:
    """Faces of color i avoiding every cilium, isolated vertices included."""
    n = sum(1 for cyc in m.face_cycles(i) if not any(m.is_cilium(h) for h in cyc))
    return n + len(m.isolated_vertices(i))


def colored_face_count(m: EdgeColoredMap) -> int:
    return sum(closed_face_count(m, i) for i in range(1, m.D + 1))


@dataclass(frozen=True)
class SubmapStats:
    E: int
    V: int
    F: int
    k: int
    g: int
    l: int


@dataclass(frozen=True)
class MapStats:
    whole: SubmapStats
    per_color: dict = field(default_factory=dict)

    def __getitem__(self, i: int) -> SubmapStats:
        return self.per_color[i]


def _euler(E: int, V: int, F: int, k: int) -> SubmapStats:
    twice_g = 2 * k - F + E - V
    if twice_g % 2 or twice_g < 0:
        raise OddEulerCharacteristic(f"2g = {twice_g} from E={E} V={V} F={F} k={k}")
    return SubmapStats(E, V, F, k, twice_g // 2, E - V + k)


def all_face_count(m: EdgeColoredMap) -> int:
    """Faces of the underlying uncolored map: cycles of alpha o sigma plus empty vertices."""
    seen = bytearray(m.H)
    F = 0
    for start in range(m.H):
        if seen[start]:
            continue
        F += 1
        h = start
        while not seen[h]:
            seen[h] = 1
            h = m.alpha[m.sigma[h]]
    return F + m.n_empty


def stats(m: EdgeColoredMap) -> MapStats:
    """Euler data of the whole map and of each monochromatic submap.

    Cilia behave as pendant half-edges: they sit inside faces but add neither
    edges nor vertices, so they leave the genus unchanged.
    """
    V = m.n_vertices
    whole = _euler(m.n_edges, V, all_face_count(m), m.components())
    per = {}
    for i in range(1, m.D + 1):
        b = bit(i)
        E = sum(1 for h, _ in m.edges if m.colors[h] & b)
        F = len(m.face_cycles(i)) + len(m.isolated_vertices(i))
        per[i] = _euler(E, V, F, m.components(i))
    return MapStats(whole, per)


def power(m: EdgeColoredMap) -> int:
    """F - (D-1) E, closed faces only; checked against circuit ranks and genera when uncilated."""
    delta = colored_face_count(m) - (m.D - 1) * m.n_edges
    if not m.cilia and m.is_connected() and all(m.colors[h] & (m.colors[h] - 1) == 0 for h, _ in m.edges):
        st = stats(m)
        rhs = m.D * (1 - st.whole.l) + 2 * sum(st[i].l - st[i].g for i in range(1, m.D + 1))
        if rhs != delta:
            raise MismatchBug(f"power {delta} disagrees with the circuit-rank form {rhs}")
    return delta


def remove_cilia(m: EdgeColoredMap) -> EdgeColoredMap:
    keep = [h for h in range(m.H) if not m.is_cilium(h)]
    new = {h: k for k, h in enumerate(keep)}
    verts, empty = [], m.n_empty
    for cyc in m.vertices:
        kept = [new[h] for h in cyc if h in new]
        if kept:
            verts.append(kept)
        else:
            empty += 1
    return EdgeColoredMap.from_vertices(
        m.D, verts, [new[m.alpha[h]] for h in keep], [m.colors[h] for h in keep], empty
    )


def boundary(m: EdgeColoredMap, order: Optional[Sequence[int]] = None) -> tuple[Bubble, Pairing]:
    """Boundary bubble and induced pairing, in the couple labels of the cilia.

    Couple ``a`` is the a-th cilium (by label unless ``order`` is given).  The
    color-i edge at white ``a`` goes to the black vertex of the next cilium
    met along the color-i face leaving cilium ``a``; a cilium without color i
    closes the edge inside its own couple.
    """
    cil = list(order) if order is not None else list(m.cilia)
    if not cil:
        raise DisconnectedBoundary("a map without cilia has an empty boundary")
    index = {h: a for a, h in enumerate(cil)}
    taus = []
    for i in range(1, m.D + 1):
        ph = m.phi(i)
        t = []
        for a, c in enumerate(cil):
            if c not in ph:
                t.append(a)
                continue
            h = ph[c]
            while h not in index:
                h = ph[h]
            t.append(index[h])
        taus.append(tuple(t))
    bub = Bubble(tuple(taus))
    if not bub.is_connected():
        raise DisconnectedBoundary("boundary graph is disconnected")
    return bub, Pairing.identity(len(cil))


def canonical_form(m: EdgeColoredMap) -> tuple:
    """Isomorphism invariant of a connected map: least relabeling over all roots."""
    if m.H == 0:
        return (m.D, m.n_empty)
    best = None
    sigma, alpha, colors = m.sigma, m.alpha, m.colors
    for root in range(m.H):
        order = [root]
        label = {root: 0}
        k = 0
        while k < len(order):
            h = order[k]
            for nb in (sigma[h], alpha[h]):
                if nb not in label:
                    label[nb] = len(order)
                    order.append(nb)
            k += 1
        if len(order) != m.H:
            raise PreconditionViolated("canonical form needs a connected map")
        code = tuple((label[sigma[h]], label[alpha[h]], colors[h]) for h in order)
        if best is None or code < best:
            best = code
    return (m.D, m.n_empty, best)


def relabel_map(m: EdgeColoredMap, perm: Sequence[int]) -> EdgeColoredMap:
    """Rename half-edge ``h`` to ``perm[h]``."""
    H = m.H
    sigma, alpha, colors = [0] * H, [0] * H, [0] * H
    for h in range(H):
        sigma[perm[h]] = perm[m.sigma[h]]
        alpha[perm[h]] = perm[m.alpha[h]]
        colors[perm[h]] = m.colors[h]
    return EdgeColoredMap(m.D, tuple(sigma), tuple(alpha), tuple(colors), m.n_empty)


def is_forest_everywhere(m: EdgeColoredMap) -> bool:
    """True when every monochromatic submap has circuit rank zero."""
    st = stats(m)
    return all(st[i].l == 0 for i in range(1, m.D + 1))

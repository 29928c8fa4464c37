"""Stuffed Walsh maps and the bijection with colored graphs.

A stuffed Walsh map keeps the slot permutation ``mu`` on couples: ``mu[y] = x``
when the black vertex of couple ``y`` is joined by color 0 to the white vertex
of couple ``x`` (slot ``k*V + a`` is couple ``a`` of copy ``k``).  Cycles of
``mu`` are the black vertices; an open chain becomes a black vertex carrying a
cilium in the corner between its last and first slot.  The template is a
leg-form map (see :mod:`artifact.maps`) whose half-edge ``a`` is the leg of
couple ``a``; each copy's legs are glued to the black vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .bubble import Bubble, ColoredGraph, FaceSet, Pairing
from .construction import build_map, reduce_map, simplify, to_legs
from .errors import LabelMismatch, PreconditionViolated, UnreducedTemplate
from .maps import EdgeColoredMap, bit, full_mask, is_forest_everywhere, stats
from .perm import UnionFind

TEMPLATE_METHODS = ("star", "edges", "simplified", "full")


@dataclass(frozen=True)
class Template:
    bubble: Bubble  # in couple labels
    map: EdgeColoredMap
    method: str

    @property
    def V(self) -> int:
        return self.bubble.V

    @property
    def masks(self) -> tuple[int, ...]:
        return self.map.colors[: self.V]

    @property
    def reduced(self) -> bool:
        return _forest(self.map)


@lru_cache(maxsize=None)
def _forest(m: EdgeColoredMap) -> bool:
    return is_forest_everywhere(m)


@lru_cache(maxsize=256)
def make_template(bubble: Bubble, om: Pairing, method: str = "star") -> Template:
    if method not in TEMPLATE_METHODS:
        raise PreconditionViolated(f"unknown template method {method!r}")
    full = build_map(bubble, om)
    if method == "full":
        m = to_legs(full)
    elif method == "simplified":
        m = simplify(reduce_map(full, "star"))
    else:
        m = to_legs(reduce_map(full, method))
    return Template(bubble.in_pair_labels(om), m, method)


@dataclass(frozen=True)
class StuffedWalshMap:
    bubble: Bubble
    pairing: Pairing
    template: Template
    b: int
    mu: tuple[Optional[int], ...]

    @property
    def V(self) -> int:
        return self.bubble.V

    @property
    def D(self) -> int:
        return self.bubble.D

    @property
    def closed(self) -> bool:
        return None not in self.mu

    @property
    def cilia(self) -> tuple[int, ...]:
        """Slots after which a black vertex carries its cilium."""
        return tuple(y for y, x in enumerate(self.mu) if x is None)

    def with_template(self, method: str) -> "StuffedWalshMap":
        t = make_template(self.bubble, self.pairing, method)
        return StuffedWalshMap(self.bubble, self.pairing, t, self.b, self.mu)

    def with_mu(self, mu) -> "StuffedWalshMap":
        return StuffedWalshMap(self.bubble, self.pairing, self.template, self.b, tuple(mu))


def to_walsh(g: ColoredGraph, om: Pairing, method: str = "star", template: Optional[Template] = None) -> StuffedWalshMap:
    if om.V != g.bubble.V:
        raise LabelMismatch("pairing size differs from the bubble")
    if template is None:
        template = make_template(g.bubble, om, method)
    elif template.bubble != g.bubble.in_pair_labels(om):
        raise LabelMismatch("template boundary differs from the graph's bubble")
    V = g.bubble.V
    mu = tuple(g.mu[k * V + om.tau0[a]] for k in range(g.b) for a in range(V))
    return StuffedWalshMap(g.bubble, om, template, g.b, mu)


def from_walsh(w: StuffedWalshMap) -> ColoredGraph:
    V = w.V
    mu = [None] * (w.b * V)
    for k in range(w.b):
        for a in range(V):
            mu[k * V + w.pairing.tau0[a]] = w.mu[k * V + a]
    return ColoredGraph(w.bubble, w.b, tuple(mu))


def black_vertices(mu) -> list[tuple[tuple[int, ...], bool]]:
    """Black vertices as (slots in cyclic order, has_cilium); chains first, by starting slot."""
    n = len(mu)
    images = {x for x in mu if x is not None}
    seen = [False] * n
    out = []
    for start in range(n):
        if start in images:
            continue
        chain, y = [], start
        while True:
            seen[y] = True
            chain.append(y)
            if mu[y] is None:
                break
            y = mu[y]
        out.append((tuple(chain), True))
    for start in range(n):
        if seen[start]:
            continue
        cyc, y = [], start
        while not seen[y]:
            seen[y] = True
            cyc.append(y)
            y = mu[y]
        out.append((tuple(cyc), False))
    return out


@dataclass(frozen=True)
class GluedMap:
    """The full (alpha, sigma) of a stuffed Walsh map with bookkeeping of its parts."""

    map: EdgeColoredMap
    template_size: int
    black_base: int
    n_slots: int
    blacks: tuple

    def slot_of(self, h: int) -> Optional[int]:
        """Slot of a black half-edge, None otherwise."""
        if self.black_base <= h < self.black_base + self.n_slots:
            return h - self.black_base
        return None

    def is_black(self, h: int) -> bool:
        return h >= self.black_base


def glue(w: StuffedWalshMap) -> GluedMap:
    t = w.template.map
    Ht, V, b = t.H, w.V, w.b
    n = b * V
    base = b * Ht
    blacks = black_vertices(w.mu)
    n_cil = sum(1 for _, op in blacks if op)
    H = base + n + n_cil
    sigma = [0] * H
    alpha = [0] * H
    colors = [0] * H
    masks = w.template.masks
    for k in range(b):
        off = k * Ht
        for d in range(Ht):
            sigma[off + d] = off + t.sigma[d]
            colors[off + d] = t.colors[d]
            alpha[off + d] = off + t.alpha[d]
        for a in range(V):
            alpha[off + a] = base + k * V + a
            alpha[base + k * V + a] = off + a
            colors[base + k * V + a] = masks[a]
    cil = base + n
    full = full_mask(w.D)
    for slots, op in blacks:
        darts = [base + y for y in slots]
        if op:
            darts.append(cil)
            alpha[cil] = cil
            colors[cil] = full
            cil += 1
        for a, c in zip(darts, darts[1:] + darts[:1]):
            sigma[a] = c
    m = EdgeColoredMap(w.D, tuple(sigma), tuple(alpha), tuple(colors), b * t.n_empty)
    return GluedMap(m, Ht, base, n, tuple(blacks))


def _require_reduced(w: StuffedWalshMap) -> None:
    if not w.template.reduced:
        raise UnreducedTemplate("template has a monochromatic cycle")


def walsh_faces(w: StuffedWalshMap) -> FaceSet:
    """Faces of the colored graph read off the glued map, as white-slot sequences."""
    _require_reduced(w)
    gm = glue(w)
    m = gm.map
    masks = w.template.masks
    V = w.V
    mu = w.mu
    fs = FaceSet(w.D)
    for i in range(1, w.D + 1):
        bi = bit(i)

        def walk(y):
            # whites met after black of couple y until one where color i leaves the couple
            out = []
            while mu[y] is not None:
                y = mu[y]
                out.append(y)
                if masks[y % V] & bi:
                    break
            return out

        closed, broken = [], []
        for cyc in m.face_cycles(i):
            cil = [k for k, h in enumerate(cyc) if m.is_cilium(h)]
            if not any(gm.is_black(h) for h in cyc):
                continue
            if not cil:
                whites = []
                for h in cyc:
                    y = gm.slot_of(h)
                    if y is not None:
                        whites.extend(walk(y))
                closed.append(_rotate_min(whites))
                continue
            L = len(cyc)
            for k in cil:
                chain_slots = _chain_of(gm, cyc[k])
                whites = []
                for y in chain_slots:
                    whites.append(y)
                    if masks[y % V] & bi:
                        break
                j = (k + 1) % L
                while not m.is_cilium(cyc[j]):
                    y = gm.slot_of(cyc[j])
                    if y is not None:
                        whites.extend(walk(y))
                    j = (j + 1) % L
                broken.append(tuple(whites))
        # black vertices without any color-i half-edge
        for slots, op in gm.blacks:
            if any(masks[y % V] & bi for y in slots):
                continue
            if not op:
                closed.append(_rotate_min(list(slots[1:]) + [slots[0]]))
        fs.closed[i] = closed
        fs.broken[i] = broken
    return fs


def _chain_of(gm: GluedMap, cilium: int) -> tuple[int, ...]:
    idx = cilium - gm.black_base - gm.n_slots
    chains = [slots for slots, op in gm.blacks if op]
    return chains[idx]


def _rotate_min(seq) -> tuple[int, ...]:
    if not seq:
        return ()
    k = seq.index(min(seq))
    return tuple(seq[k:] + seq[:k])


def walsh_face_counts(w: StuffedWalshMap) -> tuple[int, ...]:
    """Closed faces per color that run along a black vertex."""
    _require_reduced(w)
    gm = glue(w)
    m = gm.map
    masks = w.template.masks
    V = w.V
    out = []
    for i in range(1, w.D + 1):
        bi = bit(i)
        n = 0
        for cyc in m.face_cycles(i):
            if any(m.is_cilium(h) for h in cyc):
                continue
            if any(gm.is_black(h) for h in cyc):
                n += 1
        n += sum(1 for slots, op in gm.blacks if not op and not any(masks[y % V] & bi for y in slots))
        out.append(n)
    return tuple(out)


@dataclass(frozen=True)
class ProjectedWalshMap:
    """White vertex per copy, black vertex per cycle or chain of mu, one edge per slot."""

    b: int
    V: int
    blacks: tuple
    edge_masks: tuple[int, ...]

    @property
    def n_vertices(self) -> int:
        return self.b + len(self.blacks)

    def edge_list(self) -> list[tuple[int, int]]:
        """(white index, vertex index of its black endpoint) per slot; blacks are numbered after whites."""
        owner = {}
        for j, (slots, _) in enumerate(self.blacks):
            for y in slots:
                owner[y] = self.b + j
        return [(y // self.V, owner[y]) for y in range(self.b * self.V)]

    def components(self) -> int:
        uf = UnionFind(self.n_vertices)
        for a, c in self.edge_list():
            uf.union(a, c)
        return uf.classes

    @property
    def L(self) -> int:
        return self.b * self.V - self.n_vertices + self.components()

    def is_tree(self) -> bool:
        return self.components() == 1 and self.L == 0


def project(w: StuffedWalshMap) -> ProjectedWalshMap:
    masks = w.template.masks
    return ProjectedWalshMap(w.b, w.V, tuple(black_vertices(w.mu)), tuple(masks[y % w.V] for y in range(w.b * w.V)))


def mono_stats(w: StuffedWalshMap) -> tuple[dict[int, tuple[int, int]], int]:
    """Per color (circuit rank, genus) of the glued map's submaps, and L of the projection."""
    st = stats(glue(w).map)
    return {i: (st[i].l, st[i].g) for i in range(1, w.D + 1)}, project(w).L


def walsh_connected(w: StuffedWalshMap) -> bool:
    return project(w).components() == 1

"""Exhaustive generators used as ground truth: gluings of bubble copies and small maps."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterator, Optional

from .bubble import Bubble, ColoredGraph, Pairing, face_counts
from .errors import CapExceeded
from .maps import EdgeColoredMap, bit, canonical_form, full_mask
from .perm import UnionFind, count_cycles

GLUING_CAP = 10


@dataclass(frozen=True)
class Gluing:
    graph: ColoredGraph
    connected: bool
    weight: int = 1


def _check_cap(bubble: Bubble, copies: int, cap: int = GLUING_CAP) -> int:
    n = copies * bubble.V
    if copies < 1:
        raise CapExceeded("need at least one copy")
    if n > cap:
        raise CapExceeded(f"{copies} copies of a bubble with {bubble.V} white vertices exceed {cap} slots")
    return n


def gluing_connected(V: int, copies: int, mu) -> bool:
    uf = UnionFind(copies)
    for y, x in enumerate(mu):
        if x is not None:
            uf.union(y // V, x // V)
    return uf.classes == 1


def _partial_injections(n: int) -> Iterator[tuple]:
    """All partial injections of range(n) into itself, lexicographic with None first."""
    def rec(y, used, acc):
        if y == n:
            yield tuple(acc)
            return
        for x in [None] + [x for x in range(n) if x not in used]:
            acc.append(x)
            if x is not None:
                used.add(x)
            yield from rec(y + 1, used, acc)
            if x is not None:
                used.discard(x)
            acc.pop()

    yield from rec(0, set(), [])


def _copy_conjugates(V: int, copies: int, mu) -> list[tuple]:
    out = []
    for perm in permutations(range(copies)):
        img = [None] * len(mu)
        for y, x in enumerate(mu):
            ny = perm[y // V] * V + y % V
            img[ny] = None if x is None else perm[x // V] * V + x % V
        out.append(tuple(img))
    return out


def enumerate_gluings(bubble: Bubble, copies: int, closed: bool = True, connected_only: bool = False,
                      up_to_copies: bool = False, first: Optional[int] = None) -> Iterator[Gluing]:
    """All gluings of ``copies`` copies in lexicographic order of mu.

    With ``up_to_copies`` only the lexicographically least member of each orbit
    under renaming the copies is produced, weighted by its orbit size.
    ``first`` restricts to gluings with ``mu[0] == first`` (one work block).
    """
    n = _check_cap(bubble, copies)
    V = bubble.V
    if closed:
        if first is None:
            source = permutations(range(n))
        else:
            source = ((first,) + rest for rest in permutations([x for x in range(n) if x != first]))
    else:
        source = (mu for mu in _partial_injections(n) if first is None or mu[0] == first)
    for mu in source:
        conn = gluing_connected(V, copies, mu)
        if connected_only and not conn:
            continue
        weight = 1
        if up_to_copies and copies > 1:
            conj = _copy_conjugates(V, copies, mu)
            if min(conj, key=_lex_key) != mu:
                continue
            weight = len(set(conj))
        yield Gluing(ColoredGraph(bubble, copies, mu), conn, weight)


def _lex_key(mu):
    return tuple(-1 if x is None else x for x in mu)


def count_gluings(bubble: Bubble, copies: int, closed: bool = True) -> int:
    n = _check_cap(bubble, copies)
    if closed:
        return math.factorial(n)
    return sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1))


def is_projected_tree(bubble: Bubble, om: Pairing, copies: int, mu) -> bool:
    """Whether the projection of the gluing's Walsh map, for pairing ``om``, is a tree."""
    V = bubble.V
    mu_p = [mu[k * V + om.tau0[a]] for k in range(copies) for a in range(V)]
    if not gluing_connected(V, copies, mu):
        return False
    return count_cycles(mu_p) + copies - 1 == len(mu_p)


@dataclass
class MaxFaces:
    faces: int
    argmax: list

    def merge(self, other: "MaxFaces") -> "MaxFaces":
        if other.faces > self.faces:
            return other
        if other.faces == self.faces:
            return MaxFaces(self.faces, self.argmax + other.argmax)
        return self


def _max_block(args) -> MaxFaces:
    bubble, om, copies, trees_only, first = args
    best = MaxFaces(-1, [])
    for gl in enumerate_gluings(bubble, copies, connected_only=True, first=first):
        mu = gl.graph.mu
        if trees_only and not is_projected_tree(bubble, om, copies, mu):
            continue
        F = sum(face_counts(bubble, copies, mu))
        if F > best.faces:
            best = MaxFaces(F, [mu])
        elif F == best.faces:
            best.argmax.append(mu)
    return best


def max_faces(bubble: Bubble, om: Optional[Pairing], copies: int, trees_only: bool = False,
              threads: int = 1) -> MaxFaces:
    """Maximum total face count over connected closed gluings, with all maximizers.

    ``trees_only`` restricts to gluings whose projection for ``om`` is a tree.
    Work is split by the image of slot 0; the merge is order independent.
    """
    n = _check_cap(bubble, copies)
    if trees_only and om is None:
        raise CapExceeded("trees_only needs a pairing")
    blocks = [(bubble, om, copies, trees_only, f) for f in range(n)]
    if threads > 1:
        with ProcessPoolExecutor(threads) as ex:
            parts = list(ex.map(_max_block, blocks))
    else:
        parts = [_max_block(b) for b in blocks]
    out = MaxFaces(-1, [])
    for p in parts:
        out = out.merge(p)
    out.argmax.sort()
    return out


# --- small maps ----------------------------------------------------------------------

MAP_EDGE_CAP = 5


def _rooted_shapes(E: int) -> list[EdgeColoredMap]:
    """Connected uncolored maps with E edges (color 1 as placeholder), up to isomorphism."""
    if E == 0:
        return [EdgeColoredMap(1, (), (), (), 1)]
    H = 2 * E
    alpha = tuple(h ^ 1 for h in range(H))
    seen = {}
    for sigma in permutations(range(H)):
        uf = UnionFind(H)
        for h in range(H):
            uf.union(h, sigma[h])
            uf.union(h, alpha[h])
        if uf.classes != 1:
            continue
        m = EdgeColoredMap(1, sigma, alpha, (1,) * H)
        seen.setdefault(canonical_form(m), m)
    return list(seen.values())


def _colorings(E: int, D: int, up_to_color_perm: bool) -> Iterator[tuple[int, ...]]:
    for cols in product(range(1, D + 1), repeat=E):
        if up_to_color_perm:
            nxt = 1
            ok = True
            for c in cols:
                if c > nxt:
                    ok = False
                    break
                if c == nxt:
                    nxt += 1
            if not ok:
                continue
        yield cols


def _add_cilia(m: EdgeColoredMap, corners) -> EdgeColoredMap:
    """Insert a cilium after each half-edge in ``corners`` (or on the empty vertex for None)."""
    sigma = list(m.sigma)
    alpha = list(m.alpha)
    colors = list(m.colors)
    n_empty = m.n_empty
    full = full_mask(m.D)
    for c in corners:
        k = len(sigma)
        if c is None:
            sigma.append(k)
            n_empty -= 1
        else:
            sigma.append(sigma[c])
            sigma[c] = k
        alpha.append(k)
        colors.append(full)
    return EdgeColoredMap(m.D, tuple(sigma), tuple(alpha), tuple(colors), n_empty)


def enumerate_maps(D: int, max_edges: int, max_cilia: int = 0, min_edges: int = 0,
                   up_to_color_perm: bool = False) -> Iterator[EdgeColoredMap]:
    """Connected maps whose edges carry a single color, with at most one cilium per vertex.

    Deduplicated by canonical form. ``up_to_color_perm`` keeps one coloring per
    orbit of the color permutations acting on edge colorings of a fixed shape,
    which is enough for quantities that do not depend on color names.
    """
    if max_edges > MAP_EDGE_CAP:
        raise CapExceeded(f"at most {MAP_EDGE_CAP} edges")
    for E in range(min_edges, max_edges + 1):
        seen = set()
        for shape in _rooted_shapes(E):
            for cols in _colorings(E, D, up_to_color_perm):
                colors = [0] * shape.H
                for e in range(E):
                    colors[2 * e] = colors[2 * e + 1] = bit(cols[e])
                base = EdgeColoredMap(D, shape.sigma, shape.alpha, tuple(colors), shape.n_empty)
                if E == 0:
                    vertex_corners = [[None]]
                else:
                    vertex_corners = [list(v) for v in base.vertices]
                for k in range(0, min(max_cilia, len(vertex_corners)) + 1):
                    for chosen in combinations(range(len(vertex_corners)), k):
                        for corners in product(*(vertex_corners[v] for v in chosen)):
                            m = _add_cilia(base, corners)
                            key = canonical_form(m)
                            if key in seen:
                                continue
                            seen.add(key)
                            yield m

"""Unhooking, tree face counts, the face-gap identity and dominance tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Optional

from .bubble import face_counts
from .errors import MismatchBug, PreconditionViolated, UnknownFamily
from .maps import bit, mask_colors, stats
from .pairing import covering_face_count, optimal_pairings
from .perm import UnionFind
from .walsh import StuffedWalshMap, black_vertices, from_walsh, glue, project

FAMILIES = ("melonic", "necklace-single", "necklace-triple", "meander6", "k33")


def graph_face_total(w: StuffedWalshMap) -> int:
    """Closed faces of the colored graph behind a closed stuffed Walsh map."""
    g = from_walsh(w)
    return sum(face_counts(g.bubble, g.b, g.mu))


@dataclass
class UnhookResult:
    walsh: StuffedWalshMap
    delta_faces: int
    two_face_colors: frozenset


def unhook_mu(mu, y: int) -> tuple:
    """Detach slot ``y`` from its black vertex, which keeps its other slots in order."""
    mu = list(mu)
    prev = next((z for z, x in enumerate(mu) if x == y), None)
    if prev is not None:
        mu[prev] = mu[y]
    mu[y] = y
    return tuple(mu)


def two_face_colors(w: StuffedWalshMap, y: int) -> frozenset:
    """Colors of slot y's edge whose two sides lie on distinct faces of the glued map."""
    gm = glue(w)
    m = gm.map
    e = gm.black_base + y
    d = m.alpha[e]
    out = set()
    for i in mask_colors(m.colors[e]):
        face_id = {}
        for k, cyc in enumerate(m.face_cycles(i)):
            for h in cyc:
                face_id[h] = k
        if face_id[e] != face_id[d]:
            out.add(i)
    return frozenset(out)


def unhook(w: StuffedWalshMap, y: int) -> UnhookResult:
    """Unhook the edge of slot ``y`` from its black endpoint into a new univalent black vertex."""
    if not w.closed:
        raise PreconditionViolated("unhooking is defined on closed maps")
    if w.mu[y] == y:
        raise PreconditionViolated("the black endpoint already has degree one")
    i2 = two_face_colors(w, y)
    new = w.with_mu(unhook_mu(w.mu, y))
    delta = graph_face_total(new) - graph_face_total(w)
    if delta != w.D - 2 * len(i2):
        raise MismatchBug(f"unhooking changed faces by {delta}, expected {w.D - 2 * len(i2)}")
    return UnhookResult(new, delta, i2)


def tree_face_count(bubble, om, n_white: int) -> int:
    if n_white < 1:
        raise PreconditionViolated("need at least one white vertex")
    return (covering_face_count(bubble, om) - bubble.D) * n_white + bubble.D


def tree_bound_counterexamples(bubble, om, copies: int) -> list[tuple]:
    """Connected closed gluings with more faces than a projected tree.

    Whether none exist for every optimal pairing is an open question; this only
    searches the given size exhaustively.
    """
    from .enumeration import enumerate_gluings

    bound = tree_face_count(bubble, om, copies)
    return [
        gl.graph.mu
        for gl in enumerate_gluings(bubble, copies, connected_only=True)
        if sum(face_counts(bubble, copies, gl.graph.mu)) > bound
    ]


def face_gap(w: StuffedWalshMap) -> int:
    """F(W) - F(T) directly and from circuit ranks and genera; the two must agree."""
    if not w.closed:
        raise PreconditionViolated("face gap needs a closed map")
    proj = project(w)
    if proj.components() != 1:
        raise PreconditionViolated("face gap needs a connected map")
    direct = graph_face_total(w) - tree_face_count(w.bubble, w.pairing, w.b)
    st = stats(glue(w).map)
    D = w.D
    via_ranks = -D * proj.L + 2 * sum(st[i].l for i in range(1, D + 1)) - 2 * sum(st[i].g for i in range(1, D + 1))
    if direct != via_ranks:
        raise MismatchBug(f"face gap {direct} != {via_ranks}")
    return direct


@lru_cache(maxsize=256)
def _optimal(bubble, om) -> bool:
    best = covering_face_count(bubble, optimal_pairings(bubble)[0])
    return covering_face_count(bubble, om) == best


def _is_optimal(w: StuffedWalshMap) -> bool:
    return _optimal(w.bubble, w.pairing)


def single_cycle_check(w: StuffedWalshMap) -> bool:
    if not w.closed or project(w).L != 1 or project(w).components() != 1:
        raise PreconditionViolated("needs a connected closed map whose projection has one cycle")
    if not _is_optimal(w):
        raise PreconditionViolated("pairing is not optimal")
    return graph_face_total(w) <= tree_face_count(w.bubble, w.pairing, w.b)


# --- graph helpers on the glued map -------------------------------------------------


def _graph(w: StuffedWalshMap):
    """Vertex count and (u, v, mask, slot) edges of the glued map."""
    gm = glue(w)
    m = gm.map
    vo = m.vertex_of
    edges = []
    for h, a in m.edges:
        slot = gm.slot_of(h) if gm.is_black(h) else gm.slot_of(a)
        edges.append((vo[h], vo[a], m.colors[h], slot))
    return m.n_vertices, edges, gm


def _rank(n: int, edges) -> int:
    uf = UnionFind(n)
    for e in edges:
        uf.union(e[0], e[1])
    return len(edges) - n + uf.classes


def _spanning_forests(n: int, edges):
    """All spanning forests (bases of the cycle matroid) of an edge list."""
    uf = UnionFind(n)
    for e in edges:
        uf.union(e[0], e[1])
    r = n - uf.classes
    for sub in combinations(range(len(edges)), r):
        uf = UnionFind(n)
        if all(uf.union(edges[k][0], edges[k][1]) for k in sub):
            yield [edges[k] for k in sub]


def _is_tree(n: int, edges) -> bool:
    uf = UnionFind(n)
    for e in edges:
        if not uf.union(e[0], e[1]):
            return False
    return uf.classes == 1


def _greedy_forest(n: int, first, rest):
    uf = UnionFind(n)
    out = []
    for e in list(first) + list(rest):
        if uf.union(e[0], e[1]):
            out.append(e)
    return out


@dataclass
class DominanceResult:
    dominant: bool
    certificate: dict = field(default_factory=dict)

    def __bool__(self):
        return self.dominant


def family_roles(masks, family: str, D: int) -> dict:
    """Color roles a family's characterization refers to, read off the leg masks.

    Raises PreconditionViolated when the template does not have the family's shape.
    """
    sets = [frozenset(mask_colors(x)) for x in masks]
    bad = PreconditionViolated(f"template legs {[sorted(c) for c in sets]} do not fit family {family}")
    if family == "melonic":
        if len(set(sets)) != 1 or len(sets[0]) != 1:
            raise bad
        return {}
    if family in ("necklace-single", "necklace-triple"):
        if D != 4 or len(set(sets)) != 1 or len(sets[0]) != 2:
            raise bad
        bundle = sorted(sets[0])
        rest = [i for i in range(1, D + 1) if i not in bundle]
        return {"bundle": bundle, "forest_colors": [bundle[-1]] + rest}
    if family == "meander6":
        common = frozenset.intersection(*sets)
        triple = [c for c in sets if len(c) == 3]
        pairs = [c for c in sets if len(c) == 2]
        if D != 4 or len(common) != 1 or len(triple) != 1 or len(pairs) != 2:
            raise bad
        (mid,) = common
        sides = sorted(triple[0] - common)
        if {frozenset(p) - common for p in pairs} != {frozenset([x]) for x in sides}:
            raise bad
        return {"shared": mid, "sides": sides}
    if D != 3 or sorted(sorted(c) for c in sets) != [[1, 2], [1, 3], [2, 3]]:
        raise bad
    return {}


def dominance_check(w: StuffedWalshMap, family: str, order_seed: Optional[int] = None) -> DominanceResult:
    if family not in FAMILIES:
        raise UnknownFamily(family)
    if not w.closed or project(w).components() != 1:
        raise PreconditionViolated("dominance is decided on connected closed maps")
    if not _is_optimal(w):
        raise PreconditionViolated("dominance characterizations assume an optimal pairing")
    w = w.with_template("simplified")
    if w.template.map.n_vertices != 1:
        raise PreconditionViolated("dominance needs a single-vertex template")
    roles = family_roles(w.template.masks, family, w.D)
    if family == "melonic":
        proj = project(w)
        return DominanceResult(proj.is_tree(), {"L": proj.L})
    st = stats(glue(w).map)
    genus = {"W": st.whole.g, **{i: st[i].g for i in range(1, w.D + 1)}}
    if family == "necklace-single":
        return DominanceResult(st.whole.g == 0, {"genus": genus})
    if family == "necklace-triple":
        return _necklace_triple(w, st, genus, roles["forest_colors"])
    if family == "meander6":
        return _meander(w, st, genus, roles["shared"], roles["sides"])
    return _k33(w, st, genus, order_seed)


def _necklace_triple(w, st, genus, colors) -> DominanceResult:
    cert = {"genus": genus, "forest_colors": colors}
    if st.whole.g or any(st[i].g for i in colors):
        return DominanceResult(False, cert)
    n, edges, _ = _graph(w)
    sub = {i: [e for e in edges if e[2] & bit(i)] for i in colors}
    if all(len(sub[i]) <= 12 for i in sub):
        for triple in product(*(list(_spanning_forests(n, sub[i])) for i in colors)):
            union = {id(e): e for f in triple for e in f}
            if not _is_tree(n, list(union.values())):
                cert["bad_triple"] = [[e[3] for e in f] for f in triple]
                return DominanceResult(False, cert)
        cert["checked"] = "all forest triples"
        return DominanceResult(True, cert)
    forests = [_greedy_forest(n, [], sub[i]) for i in colors]
    union = {id(e): e for f in forests for e in f}
    ok = _is_tree(n, list(union.values())) and st.whole.l == sum(st[i].l for i in colors)
    cert["checked"] = "greedy triple and rank identity"
    return DominanceResult(ok, cert)


def _meander(w, st, genus, shared, sides) -> DominanceResult:
    cert = {"genus": genus, "sides": sides}
    a, c = sides
    if st.whole.g or st[a].g or st[c].g:
        return DominanceResult(False, cert)
    n, edges, _ = _graph(w)
    full = bit(a) | bit(shared) | bit(c)
    core = [e for e in edges if e[2] & full == full]
    t2 = _greedy_forest(n, core, [e for e in edges if e[2] & bit(a)])
    t4 = _greedy_forest(n, core, [e for e in edges if e[2] & bit(c)])
    union = {id(e): e for e in t2 + t4}
    tree = _is_tree(n, list(union.values()))
    cert["side_forest_slots"] = sorted(e[3] for e in union.values())
    return DominanceResult(tree, cert)


def _blocks(n: int, edges) -> list[list[int]]:
    """Biconnected components of a multigraph as lists of edge indices."""
    adj = [[] for _ in range(n)]
    for k, (u, v, *_rest) in enumerate(edges):
        adj[u].append((v, k))
        adj[v].append((u, k))
    disc = [-1] * n
    low = [0] * n
    stack: list[int] = []
    out: list[list[int]] = []
    timer = [0]

    def dfs(u: int, parent_edge: int) -> None:
        disc[u] = low[u] = timer[0]
        timer[0] += 1
        for v, k in adj[u]:
            if k == parent_edge:
                continue
            if disc[v] == -1:
                stack.append(k)
                dfs(v, k)
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp = []
                    while True:
                        e = stack.pop()
                        comp.append(e)
                        if e == k:
                            break
                    out.append(comp)
            elif disc[v] < disc[u]:
                stack.append(k)
                low[u] = min(low[u], disc[v])

    for s in range(n):
        if disc[s] == -1:
            dfs(s, -1)
    return out


def _block_rank(edges, idx, mask: int = 0) -> int:
    chosen = [edges[k] for k in idx if not mask or edges[k][2] & mask]
    verts = sorted({x for k in idx for x in edges[k][:2]})
    pos = {v: j for j, v in enumerate(verts)}
    return _rank(len(verts), [(pos[e[0]], pos[e[1]]) for e in chosen])


def _k33(w, st, genus, order_seed) -> DominanceResult:
    import random

    cert = {"genus": genus, "trace": []}
    if any(st[i].g for i in range(1, w.D + 1)):
        return DominanceResult(False, cert)
    rng = random.Random(order_seed) if order_seed is not None else None
    cur = w
    while True:
        n, edges, _ = _graph(cur)
        if _rank(n, edges) == 0:
            return DominanceResult(True, cert)
        cells = []
        for blk in _blocks(n, edges):
            l = _block_rank(edges, blk)
            if l == 0:
                continue
            if l != 2 or any(_block_rank(edges, blk, bit(i)) != 1 for i in range(1, w.D + 1)):
                cert["obstruction"] = sorted(edges[k][3] for k in blk)
                return DominanceResult(False, cert)
            cells.append(sorted(edges[k][3] for k in blk))
        cells.sort()
        cell = rng.choice(cells) if rng else cells[0]
        cur = _cut_cell(cur, cell)
        cert["trace"].append(cell)


def _cut_cell(w: StuffedWalshMap, cell: list[int]) -> StuffedWalshMap:
    """Unhook two edges of a cell so that its cycles open up."""
    for _ in range(2):
        n, edges, _ = _graph(w)
        bridges_free = None
        for y in cell:
            if w.mu[y] == y:
                continue
            trial = w.with_mu(unhook_mu(w.mu, y))
            if project(trial).components() == project(w).components():
                bridges_free = trial
                break
        if bridges_free is None:
            raise MismatchBug("no cycle edge found in a cell")
        w = bridges_free
    return w


def black_degrees(w: StuffedWalshMap) -> list[int]:
    return [len(s) for s, _ in black_vertices(w.mu)]

"""Bubbles, pairings and (D+1)-colored graphs built from copies of one bubble.

Labels are 0-indexed internally; the text formats in :mod:`artifact.formats`
convert to and from 1-indexed files.

A bubble stores ``tau[i][a] = b`` when an edge of color ``i + 1`` joins white
vertex ``a`` to black vertex ``b``.  A colored graph holds ``b`` copies of the
bubble; copy ``k`` owns slots ``k*V .. k*V + V - 1`` for both its white and its
black vertices.  ``mu[y] = x`` records a color-0 edge from black slot ``y`` to
white slot ``x``; ``None`` marks a free black slot.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import Disconnected, NotBijective, OpenGraph, PreconditionViolated
from .perm import UnionFind, compose, count_cycles, identity, inverse, is_permutation


@dataclass(frozen=True)
class Bubble:
    tau: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        tau = tuple(tuple(int(x) for x in t) for t in self.tau)
        object.__setattr__(self, "tau", tau)
        if len(tau) < 2:
            raise PreconditionViolated("a bubble needs at least two colors")
        for i, t in enumerate(tau):
            if len(t) != len(tau[0]) or not is_permutation(t):
                raise NotBijective(i + 1)
        if not tau[0]:
            raise PreconditionViolated("a bubble needs at least one white vertex")

    @property
    def D(self) -> int:
        return len(self.tau)

    @property
    def V(self) -> int:
        return len(self.tau[0])

    def is_connected(self) -> bool:
        uf = UnionFind(2 * self.V)
        for t in self.tau:
            for a, b in enumerate(t):
                uf.union(a, self.V + b)
        return uf.classes == 1

    def in_pair_labels(self, om: "Pairing") -> "Bubble":
        """Rename black vertices after their partner so that the pairing becomes the identity."""
        inv0 = inverse(om.tau0)
        return Bubble(tuple(compose(inv0, t) for t in self.tau))

    def relabel(self, white: Sequence[int], black: Sequence[int]) -> "Bubble":
        """Image of the bubble under vertex renamings ``a -> white[a]`` and ``b -> black[b]``."""
        new = []
        for t in self.tau:
            img = [0] * self.V
            for a, b in enumerate(t):
                img[white[a]] = black[b]
            new.append(tuple(img))
        return Bubble(tuple(new))

    def incident_colors(self, a: int) -> frozenset[int]:
        """Colors whose edge at white ``a`` leaves the pair, assuming pair labels."""
        return frozenset(i + 1 for i, t in enumerate(self.tau) if t[a] != a)


@dataclass(frozen=True)
class Pairing:
    tau0: tuple[int, ...]

    def __post_init__(self):
        tau0 = tuple(int(x) for x in self.tau0)
        object.__setattr__(self, "tau0", tau0)
        if not is_permutation(tau0):
            raise NotBijective(0)

    @classmethod
    def identity(cls, V: int) -> "Pairing":
        return cls(identity(V))

    @property
    def V(self) -> int:
        return len(self.tau0)


def validate_bubble(b: Bubble) -> None:
    """Raise unless every color is a bijection and the bubble is connected."""
    for i, t in enumerate(b.tau):
        if len(t) != b.V or not is_permutation(t):
            raise NotBijective(i + 1)
    if not b.is_connected():
        raise Disconnected("bubble is not connected")


@dataclass(frozen=True)
class ColoredGraph:
    bubble: Bubble
    b: int
    mu: tuple[Optional[int], ...]

    def __post_init__(self):
        mu = tuple(None if x is None else int(x) for x in self.mu)
        object.__setattr__(self, "mu", mu)
        n = self.b * self.bubble.V
        if self.b < 1 or len(mu) != n:
            raise PreconditionViolated(f"mu must have {n} entries")
        images = [x for x in mu if x is not None]
        if len(set(images)) != len(images) or any(not 0 <= x < n for x in images):
            raise PreconditionViolated("mu is not an injection on slots")

    @property
    def n_slots(self) -> int:
        return self.b * self.bubble.V

    @property
    def free_black(self) -> frozenset[int]:
        return frozenset(y for y, x in enumerate(self.mu) if x is None)

    @property
    def free_white(self) -> frozenset[int]:
        return frozenset(range(self.n_slots)) - {x for x in self.mu if x is not None}

    @property
    def p(self) -> int:
        return sum(1 for x in self.mu if x is None)

    @property
    def closed(self) -> bool:
        return self.p == 0

    def color_perm(self, i: int) -> tuple[int, ...]:
        """White slot -> black slot along color ``i`` (1..D)."""
        V = self.bubble.V
        t = self.bubble.tau[i - 1]
        return tuple(k * V + t[a] for k in range(self.b) for a in range(V))

    def is_connected(self) -> bool:
        uf = UnionFind(self.b)
        V = self.bubble.V
        for y, x in enumerate(self.mu):
            if x is not None:
                uf.union(y // V, x // V)
        return uf.classes == 1


@dataclass
class FaceSet:
    """Per color: closed faces as tuples of white slots, broken faces as open chains.

    A broken face starts at a free white slot and ends at the white slot whose
    color-i black neighbour is free.
    """

    D: int
    closed: dict[int, list[tuple[int, ...]]] = field(default_factory=dict)
    broken: dict[int, list[tuple[int, ...]]] = field(default_factory=dict)

    def count(self, i: int | None = None) -> int:
        if i is None:
            return sum(len(self.closed[c]) for c in self.closed)
        return len(self.closed[i])

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.closed[i]) for i in range(1, self.D + 1))


def graph_faces(g: ColoredGraph) -> FaceSet:
    D = g.bubble.D
    n = g.n_slots
    free_white = g.free_white
    fs = FaceSet(D)
    for i in range(1, D + 1):
        t = g.color_perm(i)
        seen = [False] * n
        broken = []
        for start in sorted(free_white):
            chain = []
            x = start
            while True:
                seen[x] = True
                chain.append(x)
                nxt = g.mu[t[x]]
                if nxt is None:
                    break
                x = nxt
            broken.append(tuple(chain))
        closed = []
        for start in range(n):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = g.mu[t[x]]
            closed.append(tuple(cyc))
        fs.closed[i] = closed
        fs.broken[i] = broken
    return fs


def face_counts(bubble: Bubble, b: int, mu: Sequence[int]) -> tuple[int, ...]:
    """Closed face count per color of a closed gluing; the fast path used by enumerations."""
    V = bubble.V
    out = []
    for t in bubble.tau:
        comp = [mu[k * V + t[a]] for k in range(b) for a in range(V)]
        out.append(count_cycles(comp))
    return tuple(out)


def melonic_degree(g: ColoredGraph) -> int:
    if not g.closed:
        raise OpenGraph("melonic degree needs a closed graph")
    D, V = g.bubble.D, g.bubble.V
    return D + (D - 1) * (V - 1) * g.b - graph_faces(g).count()


def reduce_dipoles(perms: Sequence[Sequence[int]]) -> Optional[list[tuple[int, int]]]:
    """Try to reduce a k-colored bipartite graph to the 2-vertex graph.

    ``perms[c][w]`` is the black endpoint of the color-c edge at white ``w``.
    A dipole is a white/black couple joined by exactly ``k - 1`` edges; it is
    removed and the remaining color reconnected.  Returns the removed couples
    (the final 2-vertex graph last) or None when the graph is not melonic.
    """
    k = len(perms)
    fwd = [dict(enumerate(p)) for p in perms]
    bwd = [{b: w for w, b in f.items()} for f in fwd]
    whites = set(fwd[0])
    removed = []
    while len(whites) > 1:
        for w in sorted(whites):
            tally: dict[int, list[int]] = {}
            for c in range(k):
                tally.setdefault(fwd[c][w], []).append(c)
            hit = next((u for u, cs in sorted(tally.items()) if len(cs) == k - 1), None)
            if hit is not None:
                break
        else:
            return None
        u = hit
        c0 = next(c for c in range(k) if fwd[c][w] != u)
        w_other = bwd[c0][u]
        u_other = fwd[c0][w]
        for c in range(k):
            del bwd[c][fwd[c][w]]
            del fwd[c][w]
        fwd[c0][w_other] = u_other
        bwd[c0][u_other] = w_other
        whites.discard(w)
        removed.append((w, u))
    (w,) = whites
    targets = {fwd[c][w] for c in range(k)}
    if len(targets) != 1:
        return None
    removed.append((w, targets.pop()))
    return removed


def is_melonic(b: Bubble) -> tuple[bool, Optional[Pairing]]:
    """Melonicity by dipole removal; the removed couples form the dipole pairing."""
    couples = reduce_dipoles(b.tau)
    if couples is None:
        return False, None
    tau0 = [0] * b.V
    for w, u in couples:
        tau0[w] = u
    return True, Pairing(tuple(tau0))


def graph_color_perms(g: ColoredGraph) -> list[tuple[int, ...]]:
    """All D+1 colors of a closed graph as white -> black maps, color 0 first."""
    if not g.closed:
        raise OpenGraph("needs a closed graph")
    white_to_black0 = inverse(g.mu)
    return [white_to_black0] + [g.color_perm(i) for i in range(1, g.bubble.D + 1)]


def is_melonic_graph(g: ColoredGraph) -> bool:
    return reduce_dipoles(graph_color_perms(g)) is not None


def all_bubbles(D: int, V: int) -> Iterable[Bubble]:
    """Every connected bubble with the given size, as labeled tuples (no isomorphism quotient)."""
    from itertools import permutations, product

    perms = list(permutations(range(V)))
    for taus in product(perms, repeat=D):
        bub = Bubble(taus)
        if bub.is_connected():
            yield bub

"""Exact perturbative coefficients of the tensor integral and of its multi-matrix rewriting.

Both sides are computed as Laurent polynomials in N by independent Wick
expansions. The tensor Gaussian has covariance N^(1-D), so every conjugate
matrix coming out of the tensor integration carries a factor c = N^(1-D).

Sign convention. Integrating a Gaussian variable against exp(-a zbar) gives
(-a)^p, not a^p. The matrix rewriting therefore matches the tensor side
exactly when the black-vertex potential is Tr log(1 - c * sum sigma-bar)
("corrected"). Using Tr log(1 + c * sum sigma-bar) ("literal") reproduces the
tensor coefficient up to the factor (-1)^(pV).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Sequence

from .bubble import Bubble, Pairing, face_counts
from .errors import CapExceeded, PreconditionViolated, SelfTestFailed
from .laurent import LaurentPoly
from .maps import EdgeColoredMap, boundary
from .perm import UnionFind

TENSOR_CAP = 8
MATRIX_CAP = 6
CONVENTIONS = ("corrected", "literal")


def tensor_coefficient(bubble: Bubble, s: int, p: int) -> LaurentPoly:
    """Coefficient of lambda^p in the tensor partition function, disconnected gluings included."""
    if p < 0:
        raise PreconditionViolated("order must be non-negative")
    n = p * bubble.V
    if n > TENSOR_CAP:
        raise CapExceeded(f"p*V = {n} exceeds {TENSOR_CAP}")
    if p == 0:
        return LaurentPoly.constant(1)
    hist: dict[int, int] = {}
    for mu in permutations(range(n)):
        F = sum(face_counts(bubble, p, mu))
        hist[F] = hist.get(F, 0) + 1
    shift = s * p - (bubble.D - 1) * n
    poly = LaurentPoly({F + shift: k for F, k in hist.items()})
    return poly * Fraction((-1) ** p, math.factorial(p))


@dataclass(frozen=True)
class MatrixPotentialSpec:
    """Matrix potential of a bubble with a pairing, in pair labels.

    ``color_sets[a]`` holds the colors of pair a whose edge leaves the pair;
    ``pattern[a][q]`` is the pair whose column index of color q is contracted
    with the row index of color q of pair a.
    """

    D: int
    color_sets: tuple[frozenset, ...]
    pattern: tuple[dict, ...]

    @property
    def V(self) -> int:
        return len(self.color_sets)

    @classmethod
    def from_bubble(cls, bubble: Bubble, om: Pairing) -> "MatrixPotentialSpec":
        pb = bubble.in_pair_labels(om)
        sets, pattern = [], []
        for a in range(pb.V):
            cols = frozenset(q for q in range(1, pb.D + 1) if pb.tau[q - 1][a] != a)
            sets.append(cols)
            pattern.append({q: pb.tau[q - 1][a] for q in sorted(cols)})
        return cls(pb.D, tuple(sets), tuple(pattern))

    def matches_map(self, m: EdgeColoredMap) -> bool:
        """Whether indices are contracted exactly along the broken faces of ``m``."""
        bub, _ = boundary(m)
        if bub.V != self.V or bub.D != self.D:
            return False
        for a in range(self.V):
            for q in range(1, self.D + 1):
                target = bub.tau[q - 1][a]
                if q in self.color_sets[a]:
                    if self.pattern[a][q] != target:
                        return False
                elif target != a:
                    return False
        return True


def _compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def _index_loops(spec: MatrixPotentialSpec, p: int, parts: Sequence[int], assign: Sequence[int]) -> int:
    """Free index sums of one Wick configuration.

    Trace positions are numbered consecutively through the black vertices;
    position t holds the conjugate of slot ``assign[t]`` (slot = copy*V + pair).
    Variables u[t][q] are the row indices of colors q entering position t.
    """
    D, V = spec.D, spec.V
    n = p * V
    nxt = [0] * n
    t = 0
    for k in parts:
        for j in range(k):
            nxt[t + j] = t + (j + 1) % k
        t += k
    uf = UnionFind(n * D)

    def var(pos, q):
        return pos * D + (q - 1)

    where = [0] * n
    for pos, slot in enumerate(assign):
        where[slot] = pos
    for pos, slot in enumerate(assign):
        cols = spec.color_sets[slot % V]
        for q in range(1, D + 1):
            if q not in cols:
                uf.union(var(pos, q), var(nxt[pos], q))
    for slot in range(n):
        kappa, a = divmod(slot, V)
        pos = where[slot]
        for q, b in spec.pattern[a].items():
            # row index of slot (kappa, a) equals column index of slot (kappa, b)
            other = where[kappa * V + b]
            uf.union(var(pos, q), var(nxt[other], q))
    return uf.classes


def matrix_coefficient(spec: MatrixPotentialSpec, s: int, p: int, convention: str = "corrected") -> LaurentPoly:
    """Coefficient of lambda^p on the matrix side, by direct Wick expansion of both potentials."""
    if convention not in CONVENTIONS:
        raise PreconditionViolated(f"unknown sign convention {convention!r}")
    if p < 0:
        raise PreconditionViolated("order must be non-negative")
    n = p * spec.V
    if n > MATRIX_CAP:
        raise CapExceeded(f"p*V = {n} exceeds {MATRIX_CAP}")
    if p == 0:
        return LaurentPoly.constant(1)
    sign = 1 if convention == "corrected" else -1
    total = LaurentPoly()
    for parts in _compositions(n):
        m = len(parts)
        weight = Fraction(1, math.factorial(m))
        for k in parts:
            weight *= Fraction(sign ** k, k)
        hist: dict[int, int] = {}
        for assign in permutations(range(n)):
            e = _index_loops(spec, p, parts, assign)
            hist[e] = hist.get(e, 0) + 1
        total = total + LaurentPoly({e: weight * c for e, c in hist.items()})
    prefactor = Fraction((-1) ** p, math.factorial(p))
    return (total * prefactor).shift(s * p + (1 - spec.D) * n)


# --- one-variable Wick engine ----------------------------------------------------


def gaussian_moment(p: int, k: int) -> int:
    """<z^p zbar^k> for the unit complex Gaussian, counted as Wick pairings."""
    if p != k:
        return 0
    return sum(1 for _ in permutations(range(p)))


def exp_moment(p: int, sign: int = 1) -> dict[int, Fraction]:
    """<z^p exp(sign * a * zbar)> as a polynomial in a, {power: coefficient}."""
    out: dict[int, Fraction] = {}
    for k in range(p + 1):
        c = Fraction(sign ** k, math.factorial(k)) * gaussian_moment(p, k)
        if c:
            out[k] = out.get(k, 0) + c
    return out


def _poly_mul(P: dict, Q: dict) -> dict:
    out: dict = {}
    for m1, c1 in P.items():
        for m2, c2 in Q.items():
            mono = tuple(x + y for x, y in zip(m1, m2))
            out[mono] = out.get(mono, 0) + c1 * c2
    return out


def _poly_eval(P: dict, a: Sequence[Fraction]) -> Fraction:
    return sum((c * math.prod(x ** e for x, e in zip(a, mono)) for mono, c in P.items()), Fraction(0))


def multivariate_moment(P: dict, Q: dict, a: Sequence[Fraction], sign: int = 1) -> Fraction:
    """<P Q exp(sign * sum a_i zbar_i)> through per-variable Wick expansions."""
    total = Fraction(0)
    for mono, c in _poly_mul(P, Q).items():
        term = Fraction(c)
        for e, ai in zip(mono, a):
            term *= sum((coef * Fraction(ai) ** k for k, coef in exp_moment(e, sign).items()), Fraction(0))
        total += term
    return total


def wick_engine_selftest(max_p: int = 6, convention: str = "corrected", seed: int = 0) -> None:
    """Check <z^p e^{a zbar}> = a^p and the polynomial product rule; raise SelfTestFailed otherwise.

    With ``convention="literal"`` the exponent is -a zbar, as written in the
    usual statement of the rule; that variant fails for odd p.
    """
    sign = 1 if convention == "corrected" else -1
    for p in range(max_p + 1):
        got = exp_moment(p, sign)
        if got != {p: Fraction(1)}:
            raise SelfTestFailed(f"<z^{p} exp({'+' if sign > 0 else '-'}a zbar)> = {got}, expected a^{p}")
    cases = [({(1, 1): Fraction(1)}, {(2, 0): Fraction(1)}, (Fraction(2), Fraction(5)))]
    rng = random.Random(seed)
    for _ in range(20):
        K = rng.randint(1, 3)
        polys = []
        for _ in range(2):
            P = {}
            for _ in range(rng.randint(1, 3)):
                mono = tuple(rng.randint(0, 2) for _ in range(K))
                P[mono] = P.get(mono, 0) + Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            polys.append(P)
        a = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(K))
        cases.append((polys[0], polys[1], a))
    for P, Q, a in cases:
        lhs = multivariate_moment(P, Q, a, sign)
        rhs = _poly_eval(P, a) * _poly_eval(Q, a)
        if lhs != rhs:
            raise SelfTestFailed(f"product rule failed: {lhs} != {rhs} for P={P}, Q={Q}, a={a}")

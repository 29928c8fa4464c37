"""Named bubbles used throughout the tests, each with a reference pairing."""
from __future__ import annotations

from .bubble import Bubble, Pairing
from .perm import from_cycles, identity


def two_vertex(D: int = 3) -> Bubble:
    return Bubble(tuple((0,) for _ in range(D)))


def quartic_melonic(D: int = 3, color: int = 1) -> Bubble:
    """Two white/black couples; ``color`` crosses, every other color stays inside a couple."""
    return Bubble(tuple((1, 0) if i == color else (0, 1) for i in range(1, D + 1)))


def melonic_cycle(D: int = 3, n: int = 3, color: int = 1) -> Bubble:
    """Cycle alternating one ``color`` edge and D-1 parallel edges; melonic with 2n vertices."""
    shift = tuple((a + 1) % n for a in range(n))
    return Bubble(tuple(shift if i == color else identity(n) for i in range(1, D + 1)))


def necklace(n: int = 2) -> Bubble:
    """D=4 necklace with 2n vertices alternating double edges {1,2} and {3,4}.

    Black labels follow the {3,4} partner, so the identity pairing joins
    vertices sharing colors 3 and 4.
    """
    shift = tuple((a + 1) % n for a in range(n))
    return Bubble((shift, shift, identity(n), identity(n)))


def meander6() -> Bubble:
    """Six-vertex D=4 bubble.

    Under the identity pairing color 1 stays inside couples, colors 2 and 4
    form 2-cycles on couples (0 1) and (0 2), and color 3 is a 3-cycle.
    """
    return Bubble((identity(3), from_cycles(3, [(0, 1)]), (1, 2, 0), from_cycles(3, [(0, 2)])))


def k33() -> Bubble:
    """K_{3,3} with the proper 3-edge-coloring ``tau_i(a) = a + i - 1 mod 3``."""
    return Bubble(tuple(tuple((a + s) % 3 for a in range(3)) for s in range(3)))


def k33_mixed_pairing() -> Pairing:
    """A pairing whose three couples are joined by three different colors."""
    return Pairing((1, 0, 2))


def named_bubbles() -> dict[str, tuple[Bubble, Pairing]]:
    """The five bubbles of the acceptance suite with their reference optimal pairings."""
    return {
        "quartic": (quartic_melonic(3), Pairing.identity(2)),
        "melonic6": (melonic_cycle(3, 3), Pairing.identity(3)),
        "necklace": (necklace(2), Pairing.identity(2)),
        "meander6": (meander6(), Pairing.identity(3)),
        "k33": (k33(), k33_mixed_pairing()),
    }

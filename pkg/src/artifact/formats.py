"""Line-oriented text formats (1-indexed on disk) and Graphviz export.

.bub   line 1 ``D V``; then D lines with the V images of each color (black labels).
.gcg   line 1 a bubble path or an inline bubble ``D V;img1;...;imgD``;
       line 2 ``b p``; line 3 the bV images of mu, ``0`` for a free black slot.
.ecm   line 1 ``D H p`` (p counts cilia and legs); line 2 the colors of half-edges 1..H; line 3 sigma;
       line 4 alpha; optional line 5 ``empty k`` for edgeless vertices.
       A color is ``0`` for a cilium, ``i`` or ``i+j+...`` for an edge carrying
       several colors, ``0:i+j`` for a leg (an unglued half-edge with colors).
.swm   line 1 bubble reference as in .gcg; line 2 ``pairing <V ints> template <method>``;
       line 3 ``b p``; line 4 mu on couples, ``0`` free; line 5 the cilium slots.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from .bubble import Bubble, ColoredGraph, Pairing
from .errors import ParseError
from .maps import EdgeColoredMap, colors_mask, full_mask, mask_colors
from .walsh import TEMPLATE_METHODS, StuffedWalshMap, make_template

PALETTE = ("red", "blue", "green4", "orange", "purple", "brown", "magenta", "cyan", "gold", "gray40")


def _ints(line: str, what: str) -> list[int]:
    try:
        return [int(x) for x in line.split()]
    except ValueError as exc:
        raise ParseError(f"{what}: expected integers, got {line!r}") from exc


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


# --- bubbles ----------------------------------------------------------------------


def parse_bubble(text: str) -> Bubble:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty bubble file")
    head = _ints(lines[0], "bubble header")
    if len(head) != 2:
        raise ParseError("bubble header must be 'D V'")
    D, V = head
    if len(lines) != D + 1:
        raise ParseError(f"expected {D} color lines, found {len(lines) - 1}")
    tau = []
    for i, ln in enumerate(lines[1:], start=1):
        row = _ints(ln, f"color {i}")
        if len(row) != V:
            raise ParseError(f"color {i} has {len(row)} entries, expected {V}")
        if any(not 1 <= x <= V for x in row):
            raise ParseError(f"color {i} has labels outside 1..{V}")
        tau.append(tuple(x - 1 for x in row))
    return Bubble(tuple(tau))


def format_bubble(b: Bubble) -> str:
    out = [f"{b.D} {b.V}"]
    out += [" ".join(str(x + 1) for x in t) for t in b.tau]
    return "\n".join(out) + "\n"


def parse_inline_bubble(ref: str) -> Bubble:
    parts = [p.strip() for p in ref.split(";")]
    return parse_bubble("\n".join(parts))


def inline_bubble(b: Bubble) -> str:
    return ";".join(format_bubble(b).strip().splitlines())


def read_bubble(path: str) -> Bubble:
    with open(path, encoding="utf-8") as fh:
        return parse_bubble(fh.read())


def resolve_bubble(ref: str, base_dir: str = ".") -> Bubble:
    """A bubble reference is inline when it contains ';', else a path relative to ``base_dir``."""
    if ";" in ref:
        return parse_inline_bubble(ref)
    path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
    if not os.path.exists(path) and os.path.exists(ref):
        path = ref
    try:
        return read_bubble(path)
    except FileNotFoundError as exc:
        raise ParseError(f"bubble file {ref!r} not found") from exc


def parse_pairing(text: str, V: int) -> Pairing:
    vals = _ints(text.replace(",", " "), "pairing")
    if len(vals) != V or sorted(vals) != list(range(1, V + 1)):
        raise ParseError(f"pairing must be a permutation of 1..{V}")
    return Pairing(tuple(x - 1 for x in vals))


def format_pairing(om: Pairing) -> str:
    return " ".join(str(x + 1) for x in om.tau0)


# --- colored graphs -------------------------------------------------------------


@dataclass(frozen=True)
class GraphFile:
    graph: ColoredGraph
    bubble_ref: str


def _mu_line(mu) -> str:
    return " ".join("0" if x is None else str(x + 1) for x in mu)


def _parse_mu(line: str, n: int, what: str) -> tuple:
    vals = _ints(line, what)
    if len(vals) != n:
        raise ParseError(f"{what} has {len(vals)} entries, expected {n}")
    if any(not 0 <= x <= n for x in vals):
        raise ParseError(f"{what} has entries outside 0..{n}")
    return tuple(None if x == 0 else x - 1 for x in vals)


def parse_graph(text: str, base_dir: str = ".") -> GraphFile:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 3:
        raise ParseError("a .gcg file has exactly three lines")
    ref = lines[0].strip()
    bubble = resolve_bubble(ref, base_dir)
    head = _ints(lines[1], "graph header")
    if len(head) != 2:
        raise ParseError("graph header must be 'b p'")
    b, p = head
    if b < 1:
        raise ParseError("need at least one bubble copy")
    mu = _parse_mu(lines[2], b * bubble.V, "mu")
    if sum(1 for x in mu if x is None) != p:
        raise ParseError(f"header says {p} free black slots, mu has {sum(1 for x in mu if x is None)}")
    return GraphFile(ColoredGraph(bubble, b, mu), ref)


def format_graph(g: ColoredGraph, bubble_ref: Optional[str] = None) -> str:
    ref = bubble_ref if bubble_ref is not None else inline_bubble(g.bubble)
    return f"{ref}\n{g.b} {g.p}\n{_mu_line(g.mu)}\n"


def read_graph(path: str) -> GraphFile:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), os.path.dirname(os.path.abspath(path)))


# --- maps -----------------------------------------------------------------------


def _format_color(m: EdgeColoredMap, h: int) -> str:
    mask = m.colors[h]
    body = "+".join(str(i) for i in mask_colors(mask))
    if m.alpha[h] == h:
        return "0" if mask == full_mask(m.D) else f"0:{body}"
    return body


def format_map(m: EdgeColoredMap) -> str:
    out = [
        f"{m.D} {m.H} {len(m.cilia)}",
        " ".join(_format_color(m, h) for h in range(m.H)),
        " ".join(str(x + 1) for x in m.sigma),
        " ".join(str(x + 1) for x in m.alpha),
    ]
    if m.n_empty:
        out.append(f"empty {m.n_empty}")
    return "\n".join(out) + "\n"


def _parse_color(tok: str, D: int) -> tuple[int, bool]:
    """(mask, declared as unglued)."""
    try:
        if tok == "0":
            return full_mask(D), True
        if tok.startswith("0:"):
            return colors_mask(int(x) for x in tok[2:].split("+")), True
        return colors_mask(int(x) for x in tok.split("+")), False
    except ValueError as exc:
        raise ParseError(f"bad color token {tok!r}") from exc


def parse_map(text: str) -> EdgeColoredMap:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty map file")
    head = _ints(lines[0], "map header")
    if len(head) != 3:
        raise ParseError("map header must be 'D H p'")
    D, H, p = head
    n_empty = 0
    if lines[-1].startswith("empty"):
        try:
            n_empty = int(lines[-1].split()[1])
        except (IndexError, ValueError) as exc:
            raise ParseError("bad 'empty k' line") from exc
        lines = lines[:-1]
    if H == 0 and len(lines) == 1:
        return EdgeColoredMap(D, (), (), (), n_empty)
    if len(lines) != 4:
        raise ParseError("a .ecm file has four lines plus an optional 'empty k' line")
    toks = lines[1].split()
    if len(toks) != H:
        raise ParseError(f"expected {H} colors")
    parsed = [_parse_color(t, D) for t in toks]
    sigma = _ints(lines[2], "sigma")
    alpha = _ints(lines[3], "alpha")
    if len(sigma) != H or len(alpha) != H:
        raise ParseError("sigma and alpha need H entries")
    if any(not 1 <= x <= H for x in sigma + alpha):
        raise ParseError("labels outside 1..H")
    alpha0 = tuple(x - 1 for x in alpha)
    for h, (_, unglued) in enumerate(parsed):
        if unglued != (alpha0[h] == h):
            raise ParseError(f"half-edge {h + 1}: color 0 must mark exactly the alpha-fixed labels")
    m = EdgeColoredMap(D, tuple(x - 1 for x in sigma), alpha0, tuple(c for c, _ in parsed), n_empty)
    if len(m.cilia) != p:
        raise ParseError(f"header says {p} cilia, found {len(m.cilia)}")
    return m


def read_map(path: str) -> EdgeColoredMap:
    with open(path, encoding="utf-8") as fh:
        return parse_map(fh.read())


# --- stuffed Walsh maps ---------------------------------------------------------


@dataclass(frozen=True)
class WalshFile:
    walsh: StuffedWalshMap
    bubble_ref: str


def format_walsh(w: StuffedWalshMap, bubble_ref: Optional[str] = None) -> str:
    ref = bubble_ref if bubble_ref is not None else inline_bubble(w.bubble)
    cil = " ".join(str(y + 1) for y in w.cilia)
    return (
        f"{ref}\npairing {format_pairing(w.pairing)} template {w.template.method}\n"
        f"{w.b} {len(w.cilia)}\n{_mu_line(w.mu)}\n{cil}\n"
    )


def parse_walsh(text: str, base_dir: str = ".") -> WalshFile:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) == 4:
        lines.append("")
    if len(lines) != 5:
        raise ParseError("a .swm file has five lines")
    ref = lines[0].strip()
    bubble = resolve_bubble(ref, base_dir)
    toks = lines[1].split()
    if len(toks) != bubble.V + 3 or toks[0] != "pairing" or toks[-2] != "template":
        raise ParseError("line 2 must be 'pairing <V ints> template <method>'")
    om = parse_pairing(" ".join(toks[1:-2]), bubble.V)
    method = toks[-1]
    if method not in TEMPLATE_METHODS:
        raise ParseError(f"unknown template method {method!r}")
    head = _ints(lines[2], "walsh header")
    if len(head) != 2 or head[0] < 1:
        raise ParseError("walsh header must be 'b p'")
    b, p = head
    mu = _parse_mu(lines[3], b * bubble.V, "mu")
    cil = tuple(x - 1 for x in _ints(lines[4], "cilia"))
    w = StuffedWalshMap(bubble, om, make_template(bubble, om, method), b, mu)
    if cil != w.cilia or len(cil) != p:
        raise ParseError("cilium list does not match the free slots of mu")
    return WalshFile(w, ref)


def read_walsh(path: str) -> WalshFile:
    with open(path, encoding="utf-8") as fh:
        return parse_walsh(fh.read(), os.path.dirname(os.path.abspath(path)))


# --- Graphviz -------------------------------------------------------------------


def _color(i: int) -> str:
    return PALETTE[(i - 1) % len(PALETTE)]


def graph_to_dot(g: ColoredGraph) -> str:
    """Colored graph: whites hollow, blacks filled, color 0 dashed."""
    V = g.bubble.V
    out = ["graph colored {", "  node [shape=circle, label=\"\", width=0.2];"]
    for y in range(g.n_slots):
        out.append(f"  w{y + 1} [style=solid];")
        out.append(f"  b{y + 1} [style=filled, fillcolor=black];")
    for k in range(g.b):
        for i, t in enumerate(g.bubble.tau, start=1):
            for a in range(V):
                out.append(f"  w{k * V + a + 1} -- b{k * V + t[a] + 1} [color={_color(i)}];")
    for y, x in enumerate(g.mu):
        if x is not None:
            out.append(f"  b{y + 1} -- w{x + 1} [style=dashed, color=black];")
    out.append("}")
    return "\n".join(out) + "\n"


def map_to_dot(m: EdgeColoredMap) -> str:
    """Map vertices as points, one line per edge labelled by its color set, cilia dashed."""
    vo = m.vertex_of
    out = ["graph map {", "  node [shape=point, width=0.12];"]
    for v in range(m.n_vertices):
        out.append(f"  v{v + 1};")
    for h, a in m.edges:
        cols = mask_colors(m.colors[h])
        label = ",".join(str(i) for i in cols)
        out.append(f"  v{vo[h] + 1} -- v{vo[a] + 1} [color=\"{':'.join(_color(i) for i in cols)}\", label=\"{label}\"];")
    for h in range(m.H):
        if m.alpha[h] == h:
            out.append(f"  c{h + 1} [shape=none, label=\"\", width=0];")
            cols = mask_colors(m.colors[h])
            style = "dashed" if m.colors[h] == full_mask(m.D) else "dotted"
            out.append(f"  v{vo[h] + 1} -- c{h + 1} [style={style}, label=\"{','.join(map(str, cols))}\"];")
    out.append("}")
    return "\n".join(out) + "\n"


def walsh_to_dot(w: StuffedWalshMap) -> str:
    """Blue submaps boxed per copy, black vertices filled, edges labelled by color sets."""
    from .walsh import black_vertices

    t = w.template.map
    V = w.V
    out = ["graph walsh {", "  node [shape=point, width=0.12];"]
    tv = t.vertex_of
    for k in range(w.b):
        out.append(f"  subgraph cluster_{k + 1} {{ style=rounded; color=blue; label=\"copy {k + 1}\";")
        for v in range(t.n_vertices):
            out.append(f"    t{k + 1}_{v + 1} [color=blue];")
        for h, a in t.edges:
            cols = ",".join(map(str, mask_colors(t.colors[h])))
            out.append(f"    t{k + 1}_{tv[h] + 1} -- t{k + 1}_{tv[a] + 1} [color=blue, label=\"{cols}\"];")
        out.append("  }")
    for j, (slots, open_chain) in enumerate(black_vertices(w.mu)):
        shape = "doublecircle" if open_chain else "circle"
        out.append(f"  k{j + 1} [shape={shape}, style=filled, fillcolor=black, width=0.15];")
        for y in slots:
            k, a = divmod(y, V)
            cols = ",".join(map(str, mask_colors(w.template.masks[a])))
            out.append(f"  t{k + 1}_{tv[a] + 1} -- k{j + 1} [label=\"{cols}\"];")
    out.append("}")
    return "\n".join(out) + "\n"


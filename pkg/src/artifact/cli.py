"""Command-line front end. Exit codes: 0 ok, 1 parse error, 2 precondition, 3 internal bug."""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Callable

from . import formats
from .amplitude import MatrixPotentialSpec, matrix_coefficient, tensor_coefficient, wick_engine_selftest
from .analysis import FAMILIES, dominance_check
from .bubble import graph_faces, validate_bubble
from .construction import build_map, reduce_map, simplify
from .enumeration import enumerate_gluings, max_faces
from .errors import ArtifactError, ParseError, SelfTestFailed
from .maps import boundary, map_faces, stats, validate_map
from .named import named_bubbles
from .pairing import covering, covering_face_count, enumerate_pairings, optimal_pairings, optimality
from .walsh import TEMPLATE_METHODS, from_walsh, glue, project, to_walsh, walsh_faces


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _kind(path: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    if ext not in (".bub", ".gcg", ".ecm", ".swm"):
        raise ParseError(f"unknown file type {ext!r}; expected .bub, .gcg, .ecm or .swm")
    return ext[1:]


def _write(path: str | None, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _open(path: str):
    try:
        return open(path, encoding="utf-8")
    except FileNotFoundError as exc:
        raise ParseError(f"file {path!r} not found") from exc


def _read(kind: str, path: str):
    base = os.path.dirname(os.path.abspath(path))
    with _open(path) as fh:
        text = fh.read()
    if kind == "bub":
        return formats.parse_bubble(text)
    if kind == "gcg":
        return formats.parse_graph(text, base)
    if kind == "ecm":
        return formats.parse_map(text)
    return formats.parse_walsh(text, base)


def _bubble_arg(path: str):
    if _kind(path) != "bub":
        raise ParseError("expected a .bub file")
    b = _read("bub", path)
    validate_bubble(b)
    return b


# --- subcommands: each returns (text, json payload) --------------------------------


def cmd_validate(args):
    kind = _kind(args.file)
    obj = _read(kind, args.file)
    if kind == "bub":
        validate_bubble(obj)
        info = {"kind": "bubble", "D": obj.D, "V": obj.V}
    elif kind == "gcg":
        validate_bubble(obj.graph.bubble)
        info = {"kind": "graph", "b": obj.graph.b, "p": obj.graph.p}
    elif kind == "ecm":
        validate_map(obj, strict=False)
        info = {"kind": "map", "D": obj.D, "H": obj.H, "cilia": len(obj.cilia)}
    else:
        info = {"kind": "walsh", "b": obj.walsh.b, "p": len(obj.walsh.cilia)}
    fields = " ".join(f"{k}={v}" for k, v in info.items() if k != "kind")
    return f"ok {info['kind']} {fields}\n", info


def cmd_pairings(args):
    b = _bubble_arg(args.bubble)
    pool = optimal_pairings(b, dedup=args.dedup) if args.optimal else enumerate_pairings(b, dedup=args.dedup)
    rows = [
        {"pairing": [x + 1 for x in om.tau0], "faces": covering_face_count(b, om), "optimality": optimality(b, om)}
        for om in pool
    ]
    text = "".join(f"{' '.join(map(str, r['pairing']))}\t{r['faces']}\t{r['optimality']}\n" for r in rows)
    return text, {"pairings": rows}


def _pairing(b, text):
    return formats.parse_pairing(text, b.V)


def cmd_build_map(args):
    b = _bubble_arg(args.bubble)
    om = _pairing(b, args.pairing)
    m = build_map(b, om)
    if args.reduce:
        m = reduce_map(m, args.reduce)
    if args.simplify:
        m = simplify(m if args.reduce else reduce_map(m, "star"))
    if args.dot:
        _write(args.dot, formats.map_to_dot(m))
    text = formats.format_map(m)
    return text, {"ecm": text}


def cmd_boundary(args):
    if _kind(args.map) != "ecm":
        raise ParseError("expected a .ecm file")
    bub, om = boundary(_read("ecm", args.map))
    text = formats.format_bubble(bub)
    return text, {"bubble": text, "pairing": [x + 1 for x in om.tau0]}


def cmd_bijection(args):
    if args.direction == "fwd":
        if _kind(args.file) != "gcg":
            raise ParseError("bijection fwd expects a .gcg file")
        gf = _read("gcg", args.file)
        if args.pairing is None:
            raise ParseError("bijection fwd needs --pairing")
        om = _pairing(gf.graph.bubble, args.pairing)
        w = to_walsh(gf.graph, om, args.template)
        text = formats.format_walsh(w, gf.bubble_ref)
    else:
        if _kind(args.file) != "swm":
            raise ParseError("bijection inv expects a .swm file")
        wf = _read("swm", args.file)
        text = formats.format_graph(from_walsh(wf.walsh), wf.bubble_ref)
    if args.output:
        _write(args.output, text)
        return "", {"written": args.output}
    return text, {"text": text}


def _face_rows(D, closed, broken):
    return [{"color": i, "closed": closed[i], "broken": broken[i]} for i in range(1, D + 1)]


def cmd_faces(args):
    kind = _kind(args.file)
    obj = _read(kind, args.file)
    if kind == "gcg":
        fs = graph_faces(obj.graph)
        rows = _face_rows(fs.D, {i: len(fs.closed[i]) for i in fs.closed}, {i: len(fs.broken[i]) for i in fs.broken})
    elif kind == "swm":
        fs = walsh_faces(obj.walsh)
        rows = _face_rows(fs.D, {i: len(fs.closed[i]) for i in fs.closed}, {i: len(fs.broken[i]) for i in fs.broken})
    elif kind == "ecm":
        per = {i: map_faces(obj, i) for i in range(1, obj.D + 1)}
        rows = _face_rows(
            obj.D,
            {i: len(f.closed) + len(f.isolated) for i, f in per.items()},
            {i: len(f.broken) for i, f in per.items()},
        )
    else:
        raise ParseError("faces needs a .gcg, .swm or .ecm file")
    text = "".join(f"{r['color']}\t{r['closed']}\t{r['broken']}\n" for r in rows)
    return text, {"faces": rows}


def cmd_stats(args):
    kind = _kind(args.file)
    obj = _read(kind, args.file)
    extra = {}
    if kind == "swm":
        m = glue(obj.walsh).map
        extra["L"] = project(obj.walsh).L
    elif kind == "ecm":
        m = obj
    else:
        raise ParseError("stats needs a .ecm or .swm file")
    st = stats(m)
    rows = [{"part": "all", **vars(st.whole)}]
    rows += [{"part": str(i), **vars(st[i])} for i in range(1, m.D + 1)]
    keys = ("E", "V", "F", "k", "g", "l")
    text = "part\t" + "\t".join(keys) + "\n"
    text += "".join(r["part"] + "\t" + "\t".join(str(r[k]) for k in keys) + "\n" for r in rows)
    if extra:
        text += "".join(f"{k}\t{v}\n" for k, v in extra.items())
    return text, {"stats": rows, **extra}


def cmd_enumerate(args):
    b = _bubble_arg(args.bubble)
    rows = []
    total = connected = 0
    for gl in enumerate_gluings(b, args.copies, closed=not args.open):
        total += 1
        connected += gl.connected
        if args.csv:
            faces = graph_faces(gl.graph).counts()
            rows.append([" ".join("0" if x is None else str(x + 1) for x in gl.graph.mu), int(gl.connected), *faces])
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            wr = csv.writer(fh, lineterminator="\n")
            wr.writerow(["mu", "connected"] + [f"F{i}" for i in range(1, b.D + 1)])
            wr.writerows(rows)
    payload = {"gluings": total, "connected": connected}
    text = f"gluings\t{total}\nconnected\t{connected}\n"
    if args.max_faces:
        if args.open:
            raise ParseError("--max-faces works on closed gluings")
        res = max_faces(b, None, args.copies, threads=args.threads)
        payload.update(max_faces=res.faces, maximizers=len(res.argmax))
        text += f"max_faces\t{res.faces}\nmaximizers\t{len(res.argmax)}\n"
    return text, payload


def cmd_dominant(args):
    if _kind(args.walsh) != "swm":
        raise ParseError("dominant expects a .swm file")
    wf = _read("swm", args.walsh)
    res = dominance_check(wf.walsh, args.family)
    cert = json.loads(json.dumps(res.certificate, default=list))
    text = ("dominant" if res.dominant else "not dominant") + "\n"
    text += "".join(f"{k}\t{json.dumps(v, sort_keys=True)}\n" for k, v in sorted(cert.items()))
    return text, {"dominant": res.dominant, "certificate": cert}


def _poly_terms(poly) -> str:
    if not poly.terms:
        return "0"
    return " ".join(f"{c}*N^{e}" if c < 0 else f"+{c}*N^{e}" for e, c in sorted(poly.terms.items(), reverse=True))


def cmd_amplitude(args):
    b = _bubble_arg(args.bubble)
    om = _pairing(b, args.pairing)
    s = b.D - 1 if args.s is None else args.s
    out = {}
    if args.side in ("tensor", "both"):
        out["tensor"] = tensor_coefficient(b, s, args.order)
    if args.side in ("matrix", "both"):
        out["matrix"] = matrix_coefficient(MatrixPotentialSpec.from_bubble(b, om), s, args.order, args.convention)
    text = "".join(f"{k}\t{_poly_terms(v)}\n" for k, v in out.items())
    payload = {k: v.to_json() for k, v in out.items()}
    if args.side == "both":
        payload["equal"] = out["tensor"] == out["matrix"]
        text += f"equal\t{str(payload['equal']).lower()}\n"
    return text, payload


def cmd_export_dot(args):
    kind = _kind(args.file)
    obj = _read(kind, args.file)
    if kind == "gcg":
        dot = formats.graph_to_dot(obj.graph)
    elif kind == "ecm":
        dot = formats.map_to_dot(obj)
    elif kind == "swm":
        dot = formats.walsh_to_dot(obj.walsh)
    else:
        dot = formats.graph_to_dot(covering(obj, enumerate_pairings(obj)[0])) if args.covering else _bubble_dot(obj)
    if args.output:
        _write(args.output, dot)
        return "", {"written": args.output}
    return dot, {"dot": dot}


def _bubble_dot(b) -> str:
    out = ["graph bubble {", "  node [shape=circle, label=\"\", width=0.2];"]
    for a in range(b.V):
        out.append(f"  w{a + 1};")
        out.append(f"  b{a + 1} [style=filled, fillcolor=black];")
    for i, t in enumerate(b.tau, start=1):
        for a in range(b.V):
            out.append(f"  w{a + 1} -- b{t[a] + 1} [color={formats.PALETTE[(i - 1) % len(formats.PALETTE)]}];")
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_selftest(args):
    wick_engine_selftest()
    checked = 0
    for name, (b, _) in named_bubbles().items():
        for om in enumerate_pairings(b):
            pb, _ = boundary(build_map(b, om))
            if pb != b.in_pair_labels(om):
                raise SelfTestFailed(f"boundary of {name} not reconstructed")
            for gl in enumerate_gluings(b, 1):
                w = to_walsh(gl.graph, om)
                if from_walsh(w) != gl.graph or walsh_faces(w).counts() != graph_faces(gl.graph).counts():
                    raise SelfTestFailed(f"bijection check failed on {name}")
                checked += 1
    return f"selftest ok ({checked} gluings)\n", {"ok": True, "gluings": checked}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="artifact", description="Colored graphs, stuffed Walsh maps and their face counts.")
    p.add_argument("--json", action="store_true", help="print a JSON record instead of text")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes for enumerations")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, help_: str):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "parse and check a .bub, .gcg, .ecm or .swm file")
    sp.add_argument("file")
    sp = add("pairings", cmd_pairings, "list pairings with covering faces and optimality")
    sp.add_argument("bubble")
    sp.add_argument("--optimal", action="store_true")
    sp.add_argument("--dedup", action="store_true")
    sp = add("build-map", cmd_build_map, "build the ciliated map of a bubble with a pairing")
    sp.add_argument("bubble")
    sp.add_argument("--pairing", required=True)
    sp.add_argument("--reduce", choices=("star", "edges"))
    sp.add_argument("--simplify", action="store_true")
    sp.add_argument("--dot")
    sp = add("boundary", cmd_boundary, "boundary bubble of a ciliated map")
    sp.add_argument("map")
    sp = add("bijection", cmd_bijection, "colored graph <-> stuffed Walsh map")
    sp.add_argument("direction", choices=("fwd", "inv"))
    sp.add_argument("file")
    sp.add_argument("--pairing")
    sp.add_argument("--template", choices=TEMPLATE_METHODS, default="star")
    sp.add_argument("-o", "--output")
    sp = add("faces", cmd_faces, "closed and broken faces per color")
    sp.add_argument("file")
    sp = add("stats", cmd_stats, "Euler data of a map and its monochromatic submaps")
    sp.add_argument("file")
    sp = add("enumerate", cmd_enumerate, "count gluings of bubble copies")
    sp.add_argument("bubble")
    sp.add_argument("--copies", type=int, required=True)
    sp.add_argument("--open", action="store_true", help="partial gluings with free black slots")
    sp.add_argument("--max-faces", action="store_true")
    sp.add_argument("--csv")
    sp = add("dominant", cmd_dominant, "decide dominance with a family's characterization")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("walsh")
    sp = add("amplitude", cmd_amplitude, "perturbative coefficient as a Laurent polynomial in N")
    sp.add_argument("bubble")
    sp.add_argument("--pairing", required=True)
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--side", choices=("tensor", "matrix", "both"), default="both")
    sp.add_argument("--s", type=int, help="scaling exponent (default D-1)")
    sp.add_argument("--convention", choices=("corrected", "literal"), default="corrected")
    sp = add("export-dot", cmd_export_dot, "Graphviz rendering of any supported file")
    sp.add_argument("file")
    sp.add_argument("--covering", action="store_true", help="for a bubble, draw its first covering")
    sp.add_argument("-o", "--output")
    add("selftest", cmd_selftest, "run the built-in consistency checks")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1:
            raise ParseError("--threads must be positive")
        text, payload = args.fn(args)
    except ArtifactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

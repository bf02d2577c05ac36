"""Line-oriented text formats for drawings with marked points and for
Aztec regions.

Graph file::

    # comment
    variables x y
    vertex <id> <x> <y>
    edge <src> <dst> <weight> [supergraph_only]
    source <id>
    sink <id>
    starts <id> ...
    ends <id> ...

The weight is everything between ``dst`` and the optional trailing flag, in
the polynomial syntax of :func:`lgvx.polyring.parse_poly`.

Region file::

    aztec <m> <n> [mixed|full]
    hole <A> <B>

Holes are given in diagonal cell coordinates (see :mod:`lgvx.aztec`).
"""

from __future__ import annotations

import re

from .aztec import AztecRegion, RegionError, punch_holes
from .drawing import Drawing, DrawingError, Edge, MarkedConfig, Vertex, validate_drawing
from .polyring import PolySyntaxError, WeightPoly, parse_poly

SUPERGRAPH_FLAG = "supergraph_only"
_TOKEN = re.compile(r"\S+")


class FileFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ValidationFailed(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("invalid drawing:\n  " + "\n  ".join(violations))
        self.violations = violations


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(body)]
        if toks:
            yield lineno, body, toks


def _int(tok: tuple[int, str], lineno: int, what: str) -> int:
    col, s = tok
    try:
        return int(s)
    except ValueError:
        raise FileFormatError(f"{what} must be an integer, got {s!r}", lineno, col) from None


def parse_graph_file(text: str, validate: bool = True) -> tuple[Drawing, MarkedConfig]:
    variables: tuple[str, ...] | None = None
    vertices: dict[str, Vertex] = {}
    edges: list[Edge] = []
    single: dict[str, str] = {}
    lists: dict[str, tuple[str, ...]] = {}

    for lineno, body, toks in _lines(text):
        key = toks[0][1]
        args = toks[1:]

        def need(k: int):
            if len(args) != k:
                raise FileFormatError(f"'{key}' takes {k} argument(s), got {len(args)}", lineno, toks[0][0])

        if key == "variables":
            if variables is not None:
                raise FileFormatError("variables declared twice", lineno, 1)
            variables = tuple(t for _, t in args)
        elif key == "vertex":
            need(3)
            vid = args[0][1]
            if vid in vertices:
                raise FileFormatError(f"duplicate vertex id {vid!r}", lineno, args[0][0])
            vertices[vid] = Vertex(vid, _int(args[1], lineno, "x"), _int(args[2], lineno, "y"))
        elif key == "edge":
            if variables is None:
                raise FileFormatError("edge before variables", lineno, toks[0][0])
            if len(args) < 3:
                raise FileFormatError("edge needs src, dst and a weight", lineno, toks[0][0])
            flag = args[-1][1] == SUPERGRAPH_FLAG
            wtoks = args[2:-1] if flag else args[2:]
            if not wtoks:
                raise FileFormatError("edge needs a weight", lineno, args[-1][0])
            start = wtoks[0][0]
            end = wtoks[-1][0] + len(wtoks[-1][1])
            try:
                w = parse_poly(body[start - 1:end - 1], variables)
            except PolySyntaxError as exc:
                msg = str(exc).split(": ", 1)[-1]
                raise FileFormatError(msg, lineno, start + exc.column - 1) from None
            src, dst = args[0][1], args[1][1]
            for col, v in args[:2]:
                if v not in vertices:
                    raise FileFormatError(f"unknown vertex {v!r}", lineno, col)
            edges.append(Edge(f"{src}>{dst}", src, dst, w, in_subgraph=not flag))
        elif key in ("source", "sink"):
            need(1)
            if key in single:
                raise FileFormatError(f"{key} given twice", lineno, 1)
            single[key] = args[0][1]
        elif key in ("starts", "ends"):
            if key in lists:
                raise FileFormatError(f"{key} given twice", lineno, 1)
            for col, v in args:
                if v not in vertices:
                    raise FileFormatError(f"unknown vertex {v!r}", lineno, col)
            lists[key] = tuple(t for _, t in args)
        else:
            raise FileFormatError(f"unknown keyword {key!r}", lineno, toks[0][0])

    for key in ("source", "sink"):
        if key not in single:
            raise FileFormatError(f"missing '{key}' line", 0, 0)
    if variables is None:
        raise FileFormatError("missing 'variables' line", 0, 0)
    d = Drawing(variables, tuple(vertices.values()), tuple(edges), single["source"], single["sink"])
    if validate:
        problems = validate_drawing(d)
        if problems:
            raise ValidationFailed(problems)
    try:
        config = MarkedConfig(lists.get("starts", ()), lists.get("ends", ()))
        config.check_against(d)
    except DrawingError as exc:
        raise ValidationFailed([f"marked points: {exc}"]) from None
    return d, config


def emit_graph(d: Drawing, config: MarkedConfig | None = None) -> str:
    out = ["variables " + " ".join(d.variables)]
    out += [f"vertex {v.id} {v.x} {v.y}" for v in d.vertices]
    for e in d.edges:
        line = f"edge {e.src} {e.dst} {e.weight}"
        if not e.in_subgraph:
            line += " " + SUPERGRAPH_FLAG
        out.append(line)
    out += [f"source {d.source}", f"sink {d.sink}"]
    if config is not None:
        out.append(" ".join(("starts",) + config.starts))
        out.append(" ".join(("ends",) + config.ends))
    return "\n".join(out) + "\n"


def parse_region_file(text: str) -> AztecRegion:
    region = None
    holes: list[tuple[int, tuple[int, int]]] = []
    for lineno, _, toks in _lines(text):
        key = toks[0][1]
        args = toks[1:]
        if key == "aztec":
            if region is not None:
                raise FileFormatError("region declared twice", lineno, 1)
            if len(args) not in (2, 3):
                raise FileFormatError("usage: aztec <m> <n> [mixed|full]", lineno, 1)
            m, n = _int(args[0], lineno, "m"), _int(args[1], lineno, "n")
            kind = args[2][1] if len(args) == 3 else "mixed"
            if kind not in ("mixed", "full"):
                raise FileFormatError(f"region kind must be mixed or full, got {kind!r}", lineno, args[2][0])
            try:
                region = AztecRegion(m, n, mixed=kind == "mixed")
            except RegionError as exc:
                raise FileFormatError(str(exc), lineno, args[0][0]) from None
        elif key == "hole":
            if len(args) != 2:
                raise FileFormatError("usage: hole <A> <B>", lineno, 1)
            holes.append((lineno, (_int(args[0], lineno, "A"), _int(args[1], lineno, "B"))))
        else:
            raise FileFormatError(f"unknown keyword {key!r}", lineno, toks[0][0])
    if region is None:
        raise FileFormatError("missing 'aztec' line", 0, 0)
    for lineno, cell in holes:
        try:
            region = punch_holes(region, [cell])
        except RegionError as exc:
            raise FileFormatError(str(exc), lineno, 1) from None
    return region


def emit_region(r: AztecRegion) -> str:
    out = [f"aztec {r.m} {r.n} {'mixed' if r.mixed else 'full'}"]
    out += [f"hole {A} {B}" for A, B in r.holes]
    return "\n".join(out) + "\n"


def is_region_text(text: str) -> bool:
    for _, _, toks in _lines(text):
        return toks[0][1] == "aztec"
    return False


__all__ = ["FileFormatError", "ValidationFailed", "parse_graph_file", "emit_graph",
           "parse_region_file", "emit_region", "is_region_text", "WeightPoly"]

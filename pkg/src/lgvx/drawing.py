"""Upward planar drawings with exact integer coordinates.

A :class:`Drawing` carries the st-planar host graph together with a flag per
edge saying whether it belongs to the subgraph on which paths are counted.
Geometry (segment intersection, angular order, point-in-region) is done in
exact integer/rational arithmetic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .polyring import WeightPoly

Point = tuple[int, int]
Path = tuple[str, ...]


class DrawingError(ValueError):
    pass


class UnreachableError(DrawingError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: str
    x: int
    y: int


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str
    weight: WeightPoly
    in_subgraph: bool = True


@dataclass(frozen=True, eq=False)
class Drawing:
    variables: tuple[str, ...]
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    source: str
    sink: str

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    def __eq__(self, other):
        if not isinstance(other, Drawing):
            return NotImplemented
        return (self.variables == other.variables
                and sorted(self.vertices, key=lambda v: v.id) == sorted(other.vertices, key=lambda v: v.id)
                and self._edge_key() == other._edge_key()
                and self.source == other.source and self.sink == other.sink)

    __hash__ = object.__hash__

    def _edge_key(self):
        # edge ids are labels only; structure is endpoints, weight and flag
        return sorted((e.src, e.dst, str(e.weight), e.in_subgraph) for e in self.edges)

    @cached_property
    def pos(self) -> dict[str, Point]:
        return {v.id: (v.x, v.y) for v in self.vertices}

    @cached_property
    def edge_by_ends(self) -> dict[tuple[str, str], Edge]:
        return {(e.src, e.dst): e for e in self.edges}

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _out_host(self) -> dict[str, list[Edge]]:
        out: dict[str, list[Edge]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        for vid, es in out.items():
            es.sort(key=lambda e: pseudo_angle(self.direction(e.src, e.dst)))
        return out

    @cached_property
    def _out_sub(self) -> dict[str, list[Edge]]:
        return {v: [e for e in es if e.in_subgraph] for v, es in self._out_host.items()}

    def out_edges(self, v: str, subgraph: bool = True) -> list[Edge]:
        """Outgoing edges of ``v`` in counterclockwise order from the east."""
        return (self._out_sub if subgraph else self._out_host)[v]

    def direction(self, a: str, b: str) -> Point:
        (ax, ay), (bx, by) = self.pos[a], self.pos[b]
        return bx - ax, by - ay

    def weight(self, a: str, b: str) -> WeightPoly:
        return self.edge_by_ends[(a, b)].weight

    def path_weight(self, path: Sequence[str]) -> WeightPoly:
        w = WeightPoly.one(self.variables)
        for a, b in zip(path, path[1:]):
            w = w * self.weight(a, b)
        return w

    def is_subgraph_path(self, path: Sequence[str]) -> bool:
        for a, b in zip(path, path[1:]):
            e = self.edge_by_ends.get((a, b))
            if e is None or not e.in_subgraph:
                return False
        return True

    @cached_property
    def topological_order(self) -> list[str]:
        indeg = {v.id: 0 for v in self.vertices}
        for e in self.edges:
            indeg[e.dst] += 1
        ready = deque(v.id for v in self.vertices if indeg[v.id] == 0)
        order = []
        while ready:
            v = ready.popleft()
            order.append(v)
            for e in self._out_host[v]:
                indeg[e.dst] -= 1
                if indeg[e.dst] == 0:
                    ready.append(e.dst)
        if len(order) != len(self.vertices):
            raise DrawingError("graph has a directed cycle")
        return order

    def reaching(self, target: str, subgraph: bool = False) -> frozenset[str]:
        """Vertices from which ``target`` can be reached."""
        return self._reaching(target, subgraph)

    def _reaching(self, target, subgraph):
        cache = self.__dict__.setdefault("_reach_cache", {})
        key = (target, subgraph)
        if key not in cache:
            preds: dict[str, list[str]] = self._preds_sub if subgraph else self._preds_host
            seen = {target}
            stack = [target]
            while stack:
                v = stack.pop()
                for u in preds[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            cache[key] = frozenset(seen)
        return cache[key]

    @cached_property
    def _preds_host(self):
        preds = {v.id: [] for v in self.vertices}
        for e in self.edges:
            preds[e.dst].append(e.src)
        return preds

    @cached_property
    def _preds_sub(self):
        preds = {v.id: [] for v in self.vertices}
        for e in self.edges:
            if e.in_subgraph:
                preds[e.dst].append(e.src)
        return preds


@dataclass(frozen=True)
class MarkedConfig:
    starts: tuple[str, ...]
    ends: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "starts", tuple(self.starts))
        object.__setattr__(self, "ends", tuple(self.ends))
        if len(self.starts) != len(self.ends):
            raise DrawingError(f"{len(self.starts)} starting points but {len(self.ends)} ending points")
        if len(set(self.starts)) != len(self.starts) or len(set(self.ends)) != len(self.ends):
            raise DrawingError("marked points must be distinct")
        common = set(self.starts) & set(self.ends)
        if common:
            raise DrawingError(f"vertices {sorted(common)} are both starting and ending points")

    @property
    def n(self) -> int:
        return len(self.starts)

    @property
    def points(self) -> tuple[str, ...]:
        return self.starts + self.ends

    def check_against(self, d: Drawing) -> None:
        missing = [v for v in self.points if v not in d.pos]
        if missing:
            raise DrawingError(f"marked points {missing} are not vertices")


# -- exact geometry --------------------------------------------------------


def cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def on_segment(p: Point, a: Point, b: Point) -> bool:
    return (cross(a, b, p) == 0
            and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    d1, d2 = cross(c, d, a), cross(c, d, b)
    d3, d4 = cross(a, b, c), cross(a, b, d)
    if ((d1 > 0 > d2) or (d1 < 0 < d2)) and ((d3 > 0 > d4) or (d3 < 0 < d4)):
        return True
    return on_segment(a, c, d) or on_segment(b, c, d) or on_segment(c, a, b) or on_segment(d, a, b)


def pseudo_angle(v: Point) -> Fraction:
    """Monotone stand-in for atan2 on [0, 4), exact for integer vectors."""
    dx, dy = v
    if dx == 0 and dy == 0:
        raise ValueError("zero vector has no angle")
    t = Fraction(dy, abs(dx) + abs(dy))
    if dx >= 0 and dy >= 0:
        return t
    if dx < 0:
        return 2 - t
    return 4 + t


def ray_crosses(p: Point, a: Point, b: Point) -> bool:
    """Does segment ab cross the ray from p towards +x?  Half-open in y."""
    if (a[1] > p[1]) == (b[1] > p[1]):
        return False
    # x-coordinate of the crossing compared with p[0], sign-corrected
    num = (p[1] - a[1]) * (b[0] - a[0])
    den = b[1] - a[1]
    lhs = (p[0] - a[0]) * den
    return lhs < num if den > 0 else lhs > num


def point_in_closed_curve(p: Point, curve: Sequence[Point]) -> bool:
    """Even-odd membership in a closed polyline, boundary counted as inside."""
    k = len(curve)
    if k == 1:
        return p == curve[0]
    segs = [(curve[i], curve[(i + 1) % k]) for i in range(k)]
    if any(on_segment(p, a, b) for a, b in segs):
        return True
    return sum(ray_crosses(p, a, b) for a, b in segs) % 2 == 1


# -- validation ------------------------------------------------------------


def validate_drawing(d: Drawing) -> list[str]:
    """All violated invariants, each as ``"<kind>: <detail>"``; empty if valid."""
    problems: list[str] = []
    ids = [v.id for v in d.vertices]
    seen: set[str] = set()
    for vid in ids:
        if vid in seen:
            problems.append(f"vertices: duplicate vertex id {vid}")
        seen.add(vid)
    coords: dict[Point, str] = {}
    for v in d.vertices:
        if (v.x, v.y) in coords:
            problems.append(f"vertices: {v.id} and {coords[(v.x, v.y)]} share coordinates ({v.x}, {v.y})")
        coords[(v.x, v.y)] = v.id
    if not d.vertices:
        return problems + ["vertices: drawing has no vertices"]

    pos = {v.id: (v.x, v.y) for v in d.vertices}
    bad_edges = False
    pairs: set[tuple[str, str]] = set()
    for e in d.edges:
        if e.src not in pos or e.dst not in pos:
            problems.append(f"edges: edge {e.id} uses an unknown vertex")
            bad_edges = True
            continue
        if e.src == e.dst:
            problems.append(f"simplicity: edge {e.id} is a loop")
            bad_edges = True
            continue
        key = (min(e.src, e.dst), max(e.src, e.dst))
        if key in pairs:
            problems.append(f"simplicity: parallel edges between {e.src} and {e.dst}")
        pairs.add(key)
        if e.weight.variables != d.variables:
            problems.append(f"weights: edge {e.id} weight uses variables {e.weight.variables}")
        if pos[e.dst][1] < pos[e.src][1]:
            problems.append(f"upwardness: edge {e.id} ({e.src}->{e.dst}) points down")
    if bad_edges:
        return problems

    for v in (d.source, d.sink):
        if v not in pos:
            problems.append(f"source/sink: {v} is not a vertex")
    if any(p.startswith("source/sink") for p in problems):
        return problems

    # planarity: every pair of segments meets at most in a shared endpoint
    segs = [(e, pos[e.src], pos[e.dst]) for e in d.edges]
    segs.sort(key=lambda s: min(s[1][0], s[2][0]))
    for i, (e, a, b) in enumerate(segs):
        xmax = max(a[0], b[0])
        for f, c, dd in segs[i + 1:]:
            if min(c[0], dd[0]) > xmax:
                break
            if not segments_intersect(a, b, c, dd):
                continue
            shared = {e.src, e.dst} & {f.src, f.dst}
            if len(shared) == 2:
                continue
            if len(shared) == 1:
                w = pos[shared.pop()]
                # touching only at the shared endpoint is fine; overlap is not
                other_e = b if a == w else a
                other_f = dd if c == w else c
                if cross(w, other_e, other_f) != 0 or _same_ray(w, other_e, other_f) is False:
                    continue
            problems.append(f"planarity: edges {e.id} and {f.id} intersect")
    for v in d.vertices:
        p = (v.x, v.y)
        for e, a, b in segs:
            if p != a and p != b and on_segment(p, a, b):
                problems.append(f"planarity: vertex {v.id} lies on edge {e.id}")

    # acyclicity
    indeg = {vid: 0 for vid in pos}
    out: dict[str, list[str]] = {vid: [] for vid in pos}
    for e in d.edges:
        indeg[e.dst] += 1
        out[e.src].append(e.dst)
    deg = dict(indeg)
    ready = [v for v in pos if deg[v] == 0]
    count = 0
    while ready:
        v = ready.pop()
        count += 1
        for w in out[v]:
            deg[w] -= 1
            if deg[w] == 0:
                ready.append(w)
    if count != len(pos):
        problems.append("acyclicity: graph has a directed cycle")

    # connectivity (undirected)
    adj: dict[str, set[str]] = {vid: set() for vid in pos}
    for e in d.edges:
        adj[e.src].add(e.dst)
        adj[e.dst].add(e.src)
    start = next(iter(pos))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v] - seen:
            seen.add(w)
            stack.append(w)
    if len(seen) != len(pos):
        problems.append(f"connectivity: {len(pos) - len(seen)} vertices are disconnected")

    sources = sorted(v for v in pos if indeg[v] == 0)
    sinks = sorted(v for v in pos if not out[v])
    if sources != [d.source]:
        problems.append(f"source: vertices without incoming edges are {sources}, expected only {d.source}")
    if sinks != [d.sink]:
        problems.append(f"sink: vertices without outgoing edges are {sinks}, expected only {d.sink}")

    if len(pos) > 1 and not problems:
        outer = _outer_face_vertices(pos, d.edges)
        for name, v in (("source", d.source), ("sink", d.sink)):
            if v not in outer:
                problems.append(f"outer face: {name} {v} is not on the outer face")
    return problems


def _same_ray(w: Point, a: Point, b: Point):
    # a and b collinear with w: on the same side means overlapping segments
    return (a[0] - w[0]) * (b[0] - w[0]) + (a[1] - w[1]) * (b[1] - w[1]) > 0


def _outer_face_vertices(pos: dict[str, Point], edges: Sequence[Edge]) -> set[str]:
    """Vertices met by walking the outer face of a connected plane graph."""
    nbrs: dict[str, list[str]] = {v: [] for v in pos}
    for e in edges:
        nbrs[e.src].append(e.dst)
        nbrs[e.dst].append(e.src)

    def ang(a, b):
        return pseudo_angle((pos[b][0] - pos[a][0], pos[b][1] - pos[a][1]))

    for v in nbrs:
        nbrs[v].sort(key=lambda w: ang(v, w))

    def next_ccw(v: str, after: Fraction) -> str:
        for w in nbrs[v]:
            if ang(v, w) > after:
                return w
        return nbrs[v][0]

    v0 = min(pos, key=lambda v: (pos[v][1], pos[v][0]))
    if not nbrs[v0]:
        return {v0}
    # straight down from the lowest vertex lies in the outer face
    first = (v0, next_ccw(v0, Fraction(3)))
    seen = {v0}
    a, b = first
    while True:
        seen.add(b)
        c = next_ccw(b, ang(b, a))
        a, b = b, c
        if (a, b) == first:
            return seen


# -- embedding queries -----------------------------------------------------


def angular_order(d: Drawing, v: str) -> list[str]:
    """Incident edge ids counterclockwise by the direction pointing away from v."""
    if v not in d.pos:
        raise DrawingError(f"unknown vertex {v}")
    inc = []
    for e in d.edges:
        if e.src == v:
            inc.append((pseudo_angle(d.direction(v, e.dst)), e.id))
        elif e.dst == v:
            inc.append((pseudo_angle(d.direction(v, e.src)), e.id))
    return [eid for _, eid in sorted(inc)]


def leftmost_path(d: Drawing, start: str, end: str) -> Path:
    """Walk the host graph from ``start`` taking the most counterclockwise
    outgoing edge from which ``end`` is still reachable."""
    for v in (start, end):
        if v not in d.pos:
            raise DrawingError(f"unknown vertex {v}")
    ok = d.reaching(end)
    if start not in ok:
        raise UnreachableError(f"{end} is not reachable from {start}")
    path = [start]
    v = start
    while v != end:
        # out_edges are sorted by increasing angle; the last feasible is leftmost
        v = next(e.dst for e in reversed(d.out_edges(v, subgraph=False)) if e.dst in ok)
        path.append(v)
    return tuple(path)


@dataclass(frozen=True)
class LeftSideRegion:
    vertex_ids: tuple[str, ...]
    boundary: tuple[Point, ...]

    def contains(self, p: Point) -> bool:
        return point_in_closed_curve(p, self.boundary)


def left_side_region(d: Drawing, p: Sequence[str]) -> LeftSideRegion:
    u, v = p[0], p[-1]
    lower = leftmost_path(d, d.source, u)
    upper = leftmost_path(d, v, d.sink)
    rim = leftmost_path(d, d.source, d.sink)
    loop = list(lower) + list(p[1:]) + list(upper[1:]) + list(reversed(rim))[1:-1]
    return LeftSideRegion(tuple(loop), tuple(d.pos[x] for x in loop))


def left_marked_points(d: Drawing, p: Sequence[str], m: MarkedConfig) -> frozenset[str]:
    region = left_side_region(d, p)
    return frozenset(w for w in m.points if region.contains(d.pos[w]))


def path_sign(d: Drawing, p: Sequence[str], m: MarkedConfig) -> int:
    return -1 if len(left_marked_points(d, p, m)) % 2 else 1


def family_sign(d: Drawing, paths: Iterable[Sequence[str]], m: MarkedConfig) -> int:
    s = 1
    for p in paths:
        s *= path_sign(d, p, m)
    return s


# -- fast sign bookkeeping --------------------------------------------------


@dataclass
class SignContext:
    """Per-configuration data that turns left-side membership into bit masks.

    For a marked point w off the fixed part of the boundary, membership in
    L(p) is the parity of ray crossings, which is additive over segments; so
    each subgraph edge gets a crossing mask and the fixed boundary pieces a
    base mask per (u, v).
    """

    drawing: Drawing
    config: MarkedConfig
    bit: dict[str, int] = field(init=False)
    edge_mask: dict[tuple[str, str], int] = field(init=False)

    def __post_init__(self):
        d, m = self.drawing, self.config
        self.bit = {w: 1 << k for k, w in enumerate(m.points)}
        pts = [(self.bit[w], d.pos[w]) for w in m.points]
        self.edge_mask = {}
        for e in d.edges:
            a, b = d.pos[e.src], d.pos[e.dst]
            mask = 0
            for bit, q in pts:
                if ray_crosses(q, a, b):
                    mask |= bit
            self.edge_mask[(e.src, e.dst)] = mask
        self._fixed: dict[tuple[str, str], tuple[int, int]] = {}

    def fixed(self, u: str, v: str) -> tuple[int, int]:
        """(on-boundary mask, crossing-parity mask) of the pieces that do not depend on p."""
        key = (u, v)
        if key not in self._fixed:
            d = self.drawing
            pieces = [leftmost_path(d, d.source, u), leftmost_path(d, v, d.sink),
                      leftmost_path(d, d.source, d.sink)]
            on = 0
            par = 0
            for piece in pieces:
                for w in piece:
                    on |= self.bit.get(w, 0)
                for a, b in zip(piece, piece[1:]):
                    par ^= self.edge_mask[(a, b)]
            self._fixed[key] = (on, par)
        return self._fixed[key]

    def marked_mask(self, path: Sequence[str]) -> int:
        mask = 0
        for w in path:
            mask |= self.bit.get(w, 0)
        return mask

    def left_mask(self, path: Sequence[str]) -> int:
        on, par = self.fixed(path[0], path[-1])
        for a, b in zip(path, path[1:]):
            par ^= self.edge_mask[(a, b)]
        return on | par | self.marked_mask(path)

    def sign(self, path: Sequence[str]) -> int:
        return -1 if bin(self.left_mask(path)).count("1") % 2 else 1

"""The tail-swapping involution on path families and transversal intersection
numbers.  These are not needed to compute counts; they certify the sign
theory on small instances."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .drawing import Drawing, Path, pseudo_angle
from .pathcount import PathFamily

VertexKey = Callable[[str], object]


def default_order(d: Drawing) -> VertexKey:
    """Total order on vertices by (y, x, id)."""
    pos = d.pos
    return lambda v: (pos[v][1], pos[v][0], v)


def phi(fam: PathFamily, order: VertexKey) -> PathFamily:
    """Swap tails of the two lowest-indexed paths through the least shared vertex.

    Vertex-disjoint families are fixed points."""
    owners: dict[str, list[int]] = {}
    for i, p in enumerate(fam.paths):
        for v in p:
            owners.setdefault(v, []).append(i)
    shared = [v for v, idx in owners.items() if len(idx) > 1]
    if not shared:
        return fam
    x = min(shared, key=order)
    i, j = owners[x][:2]
    pi, pj = fam.paths[i], fam.paths[j]
    ki, kj = pi.index(x), pj.index(x)
    paths = list(fam.paths)
    paths[i] = pi[:ki] + pj[kj:]
    paths[j] = pj[:kj] + pi[ki:]
    conn = list(fam.connection)
    conn[i], conn[j] = conn[j], conn[i]
    return PathFamily(tuple(paths), tuple(conn))


@dataclass(frozen=True)
class CommonSubpath:
    vertices: tuple[str, ...]


def common_subpaths(p: Sequence[str], q: Sequence[str]) -> list[CommonSubpath]:
    """Maximal runs shared by both paths, in the order p traverses them."""
    qi = {v: k for k, v in enumerate(q)}
    runs: list[CommonSubpath] = []
    run: list[str] = []
    for v in p:
        if v in qi and run and qi[v] == qi[run[-1]] + 1:
            run.append(v)
            continue
        if run:
            runs.append(CommonSubpath(tuple(run)))
        run = [v] if v in qi else []
    if run:
        runs.append(CommonSubpath(tuple(run)))
    return runs


def _on_left(d: Drawing, at: str, back: str, fwd: str, probe: str) -> bool:
    # Facing from `at` towards `fwd`, the left side is the sector swept
    # counterclockwise from fwd until back.
    def rel(w: str) -> Fraction:
        a = pseudo_angle(d.direction(at, w)) - pseudo_angle(d.direction(at, fwd))
        return a % 4

    return rel(probe) < rel(back)


def is_transversal(p: Sequence[str], q: Sequence[str], c: CommonSubpath, d: Drawing) -> bool:
    """Does p arrive at and leave c on different sides of q?

    Runs that touch an end of either path have no arrive/leave pair and are
    classified non-transversal."""
    first, last = c.vertices[0], c.vertices[-1]
    ip, jp = p.index(first), p.index(last)
    iq, jq = q.index(first), q.index(last)
    if ip == 0 or jp == len(p) - 1 or iq == 0 or jq == len(q) - 1:
        return False
    p_in, p_out = p[ip - 1], p[jp + 1]
    q_in, q_out = q[iq - 1], q[jq + 1]
    # q's direction through the entry and exit vertices of the run
    q_after_first = q[iq + 1]
    q_before_last = q[jq - 1]
    side_in = _on_left(d, first, q_in, q_after_first, p_in)
    side_out = _on_left(d, last, q_before_last, q_out, p_out)
    return side_in != side_out


def pair_intersection_number(p: Sequence[str], q: Sequence[str], d: Drawing) -> int:
    return sum(is_transversal(p, q, c, d) for c in common_subpaths(p, q))


def intersection_number(fam: PathFamily | Sequence[Path], d: Drawing) -> int:
    paths = fam.paths if isinstance(fam, PathFamily) else tuple(fam)
    total = 0
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            total += pair_intersection_number(paths[i], paths[j], d)
    return total

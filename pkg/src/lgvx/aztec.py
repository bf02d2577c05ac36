"""Domino tilings of (mixed) Aztec rectangles with unit holes.

Cells are addressed by diagonal coordinates ``(A, B)`` where, for the unit
square with lower-left corner ``(x, y)``, ``A = x + y + 1`` and ``B = y - x``.
In these coordinates the Aztec rectangle AR(m, n) is

    0 <= A <= 2n,  0 <= B <= 2m,  A + B odd

and the mixed Aztec rectangle MR(m, n) drops the ``A = 0`` and ``B = 0``
rows.  The top-right side is ``A = 2n``, so black cells are those with even A.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, replace

from .drawing import Drawing, MarkedConfig
from .lattices import XYZ, build_tri_grid, tri_id, weighted_delannoy, weighted_schroder
from .pathcount import ResourceLimitError, limit, matrix_M

Cell = tuple[int, int]
DEFAULT_CELL_LIMIT = 800


class NoTilings(ValueError):
    """Hole colours are unbalanced, so there is no tiling at all."""


class RegionError(ValueError):
    pass


def to_xy(cell: Cell) -> tuple[int, int]:
    A, B = cell
    return (A - 1 - B) // 2, (A - 1 + B) // 2


def from_xy(x: int, y: int) -> Cell:
    return x + y + 1, y - x


def is_black(cell: Cell) -> bool:
    return cell[0] % 2 == 0


@dataclass(frozen=True)
class AztecRegion:
    m: int
    n: int
    mixed: bool = True
    holes: tuple[Cell, ...] = ()
    cells: frozenset[Cell] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise RegionError("m and n must be positive")
        lo = 1 if self.mixed else 0
        cells = frozenset((A, B) for A in range(lo, 2 * self.n + 1)
                          for B in range(lo, 2 * self.m + 1) if (A + B) % 2)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "holes", tuple(self.holes))

    @property
    def open_cells(self) -> frozenset[Cell]:
        return self.cells - set(self.holes)

    def color_balance(self) -> tuple[int, int]:
        cells = self.open_cells
        black = sum(1 for c in cells if is_black(c))
        return black, len(cells) - black


def build_mixed_aztec(m: int, n: int) -> AztecRegion:
    return AztecRegion(m, n, mixed=True)


def build_aztec_rectangle(m: int, n: int) -> AztecRegion:
    return AztecRegion(m, n, mixed=False)


def aztec_diamond(order: int) -> AztecRegion:
    return AztecRegion(order, order, mixed=False)


def punch_holes(r: AztecRegion, holes) -> AztecRegion:
    holes = [tuple(h) for h in holes]
    all_holes = list(r.holes) + holes
    if len(set(all_holes)) != len(all_holes):
        raise RegionError("duplicate hole")
    outside = [h for h in holes if h not in r.cells]
    if outside:
        raise RegionError(f"holes {outside} are outside the region")
    return replace(r, holes=tuple(all_holes))


def count_tilings_brute(r: AztecRegion, max_cells: int | None = None) -> int:
    """Exhaustive domino tiling count.

    Fills the first empty cell (row-major in the plane) with a horizontal or
    vertical domino; repeated partial fillings are memoised."""
    cells = sorted(r.open_cells, key=lambda c: (to_xy(c)[1], to_xy(c)[0]))
    ceiling = limit(DEFAULT_CELL_LIMIT) if max_cells is None else max_cells
    if len(cells) > ceiling:
        raise ResourceLimitError(f"region has {len(cells)} cells, limit is {ceiling}")
    black, white = r.color_balance()
    if black != white:
        return 0
    if not cells:
        return 1
    index = {to_xy(c): k for k, c in enumerate(cells)}
    xy = [to_xy(c) for c in cells]
    partners = []
    for x, y in xy:
        partners.append([index[q] for q in ((x + 1, y), (x, y + 1)) if q in index])
    full = (1 << len(cells)) - 1
    memo: dict[int, int] = {}

    def count(filled: int) -> int:
        if filled == full:
            return 1
        hit = memo.get(filled)
        if hit is not None:
            return hit
        free = ~filled & full
        k = (free & -free).bit_length() - 1
        total = 0
        for j in partners[k]:
            if not filled >> j & 1:
                total += count(filled | 1 << k | 1 << j)
        memo[filled] = total
        return total

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, len(cells) + 100))
    try:
        return count(0)
    finally:
        sys.setrecursionlimit(old)


# -- the path picture ----------------------------------------------------------


def black_tricoord(r: AztecRegion, cell: Cell) -> tuple[int, int]:
    A, B = cell
    return (2 * r.m - 1 - B) // 2, (A - 2) // 2


def start_tricoord(r: AztecRegion, white: Cell) -> tuple[int, int]:
    A, B = white
    return black_tricoord(r, (A + 1, B - 1))


def region_to_paths(r: AztecRegion, margin: int = 1) -> tuple[Drawing, MarkedConfig]:
    """Non-intersecting Delannoy path instance whose families biject with tilings.

    Vertices sit at the left-edge midpoints of black cells; a domino made of
    a black cell b and a white neighbour w (not to b's left) is a step from
    b's point to the point just right of w.  White holes give starting
    points, black holes ending points.  A white hole directly left of a black
    hole forces a length-zero path; that vertex is taken out of the subgraph
    and both marked points are dropped.  The host is the triangular rhombus
    spanning the region plus ``margin`` on every side.
    """
    if not r.mixed:
        raise RegionError("the path bijection is set up for mixed Aztec rectangles")
    whites = [h for h in r.holes if not is_black(h)]
    blacks = [h for h in r.holes if is_black(h)]
    if len(whites) != len(blacks):
        raise NoTilings(f"{len(whites)} white holes but {len(blacks)} black holes")
    P, Q = r.m - 1, r.n - 1
    if P + Q == 0:
        margin = max(margin, 1)  # a one-vertex lattice is not a drawing
    host = build_tri_grid(P + 2 * margin, Q + 2 * margin, offset=(-margin, -margin))

    inside = {tri_id(p, q) for p in range(P + 1) for q in range(Q + 1)}
    starts = {tri_id(*start_tricoord(r, w)) for w in whites}
    ends = {tri_id(*black_tricoord(r, b)) for b in blacks}
    absorbed = starts & ends
    starts -= absorbed
    ends -= absorbed
    black_hole_pts = {tri_id(*black_tricoord(r, b)) for b in blacks}

    def allowed(e) -> bool:
        if e.src not in inside or e.dst not in inside:
            return False
        if e.src in black_hole_pts or e.dst in starts:
            return False
        if e.src in absorbed or e.dst in absorbed:
            return False
        return True

    edges = tuple(replace(e, in_subgraph=allowed(e)) for e in host.edges)
    d = Drawing(host.variables, host.vertices, edges, host.source, host.sink)
    pos = d.pos

    def by_plane(ids):
        return tuple(sorted(ids, key=lambda v: (pos[v][1], pos[v][0])))

    return d, MarkedConfig(by_plane(starts), by_plane(ends))


def count_tilings_via_paths(r: AztecRegion, margin: int = 1) -> int:
    try:
        d, config = region_to_paths(r, margin)
    except NoTilings:
        return 0
    res = matrix_M(d, config)
    return res.normalized_count.evaluate({v: 1 for v in XYZ})


Domino = tuple[Cell, Cell]


def iter_tilings(r: AztecRegion, max_cells: int = 60):
    """Explicit tilings as frozensets of dominoes; for small regions only."""
    cells = sorted(r.open_cells, key=lambda c: (to_xy(c)[1], to_xy(c)[0]))
    if len(cells) > max_cells:
        raise ResourceLimitError(f"region has {len(cells)} cells, limit is {max_cells}")
    free = set(cells)
    chosen: list[Domino] = []

    def walk(k: int):
        while k < len(cells) and cells[k] not in free:
            k += 1
        if k == len(cells):
            yield frozenset(chosen)
            return
        c = cells[k]
        x, y = to_xy(c)
        for other in (from_xy(x + 1, y), from_xy(x, y + 1)):
            if other in free:
                free.difference_update((c, other))
                chosen.append((c, other))
                yield from walk(k + 1)
                chosen.pop()
                free.update((c, other))

    yield from walk(0)


def tiling_steps(r: AztecRegion, tiling) -> dict[str, str]:
    """Lattice steps read off a tiling: the black cell's point to the point
    right of its white partner.  Dominoes with the white cell on the left
    give no step."""
    steps = {}
    for c1, c2 in tiling:
        b, w = (c1, c2) if is_black(c1) else (c2, c1)
        bx, by = to_xy(b)
        wx, wy = to_xy(w)
        if wx < bx:
            continue
        steps[tri_id(*black_tricoord(r, b))] = tri_id(*start_tricoord(r, w))
    return steps


def tiling_to_paths(r: AztecRegion, tiling, config: MarkedConfig) -> tuple[tuple[str, ...], ...]:
    """Follow the steps of a tiling from every starting point."""
    steps = tiling_steps(r, tiling)
    paths = []
    for u in config.starts:
        path = [u]
        while path[-1] in steps:
            path.append(steps[path[-1]])
        paths.append(tuple(path))
    return tuple(paths)


# -- four collinear holes ---------------------------------------------------------


def delannoy_number(n: int, k: int) -> int:
    return weighted_delannoy(n, k).evaluate({"x": 1, "y": 1, "z": 1})


def schroder_number(n: int) -> int:
    return weighted_schroder(n).evaluate({"x": 1, "y": 1, "z": 1})


def aztec_formula(a: int, b: int, c: int) -> int:
    """Tilings of a mixed Aztec rectangle with holes white, white, black, black
    in a row, separated by 2a-1, 2b and 2c-1 cells."""
    if a < 1 or c < 1 or b < 0:
        raise ValueError(f"need a, c >= 1 and b >= 0, got {a}, {b}, {c}")
    d = delannoy_number
    rho = sum(schroder_number(b + i + j - 1) * d(a - i, a - i) * d(c - j, c - j)
              for i in range(1, a + 1) for j in range(1, c + 1))
    return 2 * d(b, b) * rho


def collinear_holes(a: int, b: int, c: int, x0: int, y: int) -> list[Cell]:
    """Cells of the four holes with the first (white) one at plane cell (x0, y)."""
    xs = [x0, x0 + 2 * a, x0 + 2 * a + 2 * b + 1, x0 + 2 * a + 2 * b + 2 * c + 1]
    cells = [from_xy(x, y) for x in xs]
    if is_black(cells[0]):
        raise RegionError(f"cell ({x0}, {y}) is black; the first hole must be white")
    return cells


def collinear_placements(a: int, b: int, c: int, count: int = 3, max_size: int = 12):
    """Distinct (m, n, holes) placements, smallest regions first."""
    out = []
    for size in range(2, 2 * max_size + 1):
        for m in range(1, max_size + 1):
            n = size - m
            if n < 1 or n > max_size:
                continue
            region = build_mixed_aztec(m, n)
            for y in range(-2 * max_size, 2 * max_size):
                for x0 in range(-2 * max_size, 2 * max_size):
                    if (x0 + y) % 2:
                        continue
                    holes = collinear_holes(a, b, c, x0, y)
                    if all(h in region.cells for h in holes):
                        out.append((m, n, holes))
                        if len(out) >= count:
                            return out
    return out


def translate(holes, dx: int, dy: int) -> list[Cell]:
    return [from_xy(x + dx, y + dy) for x, y in map(to_xy, holes)]


def count_cells(r: AztecRegion) -> int:
    return len(r.open_cells)


def aztec_diamond_count(order: int) -> int:
    return 2 ** (order * (order + 1) // 2)


__all__ = [name for name in dir() if not name.startswith("_") and name not in {"sys", "dataclass", "field", "replace", "annotations"}]

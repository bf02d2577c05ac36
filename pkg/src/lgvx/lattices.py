"""Square and triangular lattice builders, and the weighted Delannoy /
Schröder / binomial / Catalan closed forms for four collinear marked points."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .drawing import Drawing, Edge, MarkedConfig, Vertex
from .polyring import WeightPoly

XYZ = ("x", "y", "z")
XY = ("x", "y")


def grid_id(x: int, y: int) -> str:
    return f"{x},{y}"


def tri_id(p: int, q: int) -> str:
    return f"{p},{q}"


def tri_to_plane(p: int, q: int) -> tuple[int, int]:
    """Upward placement of triangular-lattice coordinates."""
    return q - p, p + q


def build_grid(w: int, hgt: int, wx: WeightPoly | None = None, wy: WeightPoly | None = None) -> Drawing:
    """(w+1) x (hgt+1) square grid, east edges weighted ``wx``, north ``wy``."""
    if w < 1 or hgt < 1:
        raise ValueError("grid dimensions must be positive")
    wx = wx if wx is not None else WeightPoly.var(XY, "x")
    wy = wy if wy is not None else WeightPoly.var(wx.variables, "y")
    if wx.variables != wy.variables:
        raise ValueError("edge weights must share variables")
    verts = [Vertex(grid_id(x, y), x, y) for y in range(hgt + 1) for x in range(w + 1)]
    edges = []
    for y in range(hgt + 1):
        for x in range(w + 1):
            if x < w:
                edges.append(Edge(f"e{x},{y}", grid_id(x, y), grid_id(x + 1, y), wx))
            if y < hgt:
                edges.append(Edge(f"n{x},{y}", grid_id(x, y), grid_id(x, y + 1), wy))
    return Drawing(wx.variables, tuple(verts), tuple(edges), grid_id(0, 0), grid_id(w, hgt))


def build_tri_grid(P: int, Q: int, wx: WeightPoly | None = None, wy: WeightPoly | None = None,
                   wz: WeightPoly | None = None, offset: tuple[int, int] = (0, 0)) -> Drawing:
    """Triangular lattice on TriCoords [0, P] x [0, Q] (plus ``offset``).

    Steps (1,0), (0,1), (1,1) carry weights wx, wy, wz."""
    if P < 0 or Q < 0 or P + Q == 0:
        raise ValueError("triangular grid needs at least two vertices")
    wx = wx if wx is not None else WeightPoly.var(XYZ, "x")
    wy = wy if wy is not None else WeightPoly.var(wx.variables, "y")
    wz = wz if wz is not None else WeightPoly.var(wx.variables, "z")
    op, oq = offset
    verts = []
    edges = []
    for p in range(P + 1):
        for q in range(Q + 1):
            x, y = tri_to_plane(p + op, q + oq)
            verts.append(Vertex(tri_id(p + op, q + oq), x, y))
            here = tri_id(p + op, q + oq)
            if p < P:
                edges.append(Edge(f"x{here}", here, tri_id(p + op + 1, q + oq), wx))
            if q < Q:
                edges.append(Edge(f"y{here}", here, tri_id(p + op, q + oq + 1), wy))
            if p < P and q < Q:
                edges.append(Edge(f"z{here}", here, tri_id(p + op + 1, q + oq + 1), wz))
    return Drawing(wx.variables, tuple(verts), tuple(edges),
                   tri_id(op, oq), tri_id(P + op, Q + oq))


def build_tri_rhombus(N: int, wx: WeightPoly | None = None, wy: WeightPoly | None = None,
                      wz: WeightPoly | None = None) -> Drawing:
    if N < 1:
        raise ValueError("rhombus size must be positive")
    return build_tri_grid(N, N, wx, wy, wz)


# -- closed forms --------------------------------------------------------------


def _v(name: str, variables=XYZ) -> WeightPoly:
    return WeightPoly.var(variables, name)


def weighted_delannoy(n: int, k: int) -> WeightPoly:
    """Closed form sum_i C(n,i) C(k,i) x^(n-i) y^(k-i) (xy+z)^i."""
    if n < 0 or k < 0:
        raise ValueError("Delannoy indices must be non-negative")
    x, y, z = (_v(s) for s in XYZ)
    xyz = x * y + z
    total = WeightPoly.zero(XYZ)
    for i in range(min(n, k) + 1):
        total = total + comb(n, i) * comb(k, i) * x ** (n - i) * y ** (k - i) * xyz ** i
    return total


@lru_cache(maxsize=None)
def weighted_delannoy_rec(n: int, k: int) -> WeightPoly:
    """The three-step recurrence with boundary values x^n and y^k."""
    if n < 0 or k < 0:
        raise ValueError("Delannoy indices must be non-negative")
    x, y, z = (_v(s) for s in XYZ)
    if k == 0:
        return x ** n
    if n == 0:
        return y ** k
    return (z * weighted_delannoy_rec(n - 1, k - 1) + x * weighted_delannoy_rec(n - 1, k)
            + y * weighted_delannoy_rec(n, k - 1))


def _exact(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num}/{den} is not an integer")
    return q


def weighted_schroder(n: int) -> WeightPoly:
    """Weighted large Schröder number: sum_i Cat(i) C(n+i, n-i) x^i y^i z^(n-i)."""
    if n < 0:
        raise ValueError("length must be non-negative")
    total = WeightPoly.zero(XYZ)
    for i in range(n + 1):
        coef = _exact(comb(2 * i, i) * comb(n + i, n - i), i + 1)
        total = total + WeightPoly.monomial(XYZ, coef, x=i, y=i, z=n - i)
    return total


def weighted_binomial(n: int, k: int) -> WeightPoly:
    if n < 0 or k < 0:
        raise ValueError("indices must be non-negative")
    return WeightPoly.monomial(XYZ, comb(n + k, k), x=k, y=n)


def weighted_catalan(n: int) -> WeightPoly:
    if n < 0:
        raise ValueError("index must be non-negative")
    return WeightPoly.monomial(XYZ, _exact(comb(2 * n, n), n + 1), x=n, y=n)


@dataclass(frozen=True)
class ClosedFormParams:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a < 1 or self.c < 1 or self.b < 0:
            raise ValueError(f"need a, c >= 1 and b >= 0, got {self.a}, {self.b}, {self.c}")

    @property
    def N(self) -> int:
        return self.a + self.b + self.c


def _collinear_formula(params: ClosedFormParams, straight, dyck) -> WeightPoly:
    a, b, c = params.a, params.b, params.c
    rho = WeightPoly.zero(XYZ)
    for i in range(1, a + 1):
        for j in range(1, c + 1):
            rho = rho + dyck(b + i + j - 1) * straight(a - i, a - i) * straight(c - j, c - j)
    # the unit steps leaving and rejoining the diagonal contribute x*y
    return 2 * _v("x") * _v("y") * straight(b, b) * rho


def theorem51(params: ClosedFormParams) -> WeightPoly:
    """Weight of non-intersecting pairs for four collinear diagonal points."""
    return _collinear_formula(params, weighted_delannoy, weighted_schroder)


def corollary52(params: ClosedFormParams) -> WeightPoly:
    """Square-lattice counterpart (no diagonal steps)."""
    return _collinear_formula(params, weighted_binomial, weighted_catalan)


def marked_config_thm51(params: ClosedFormParams) -> tuple[Drawing, MarkedConfig]:
    a, b, c = params.a, params.b, params.c
    if b == 0:
        raise ValueError("b = 0 makes the second start and the first end coincide")
    d = build_tri_rhombus(params.N)
    m = MarkedConfig((tri_id(0, 0), tri_id(a, a)), (tri_id(a + b, a + b), tri_id(a + b + c, a + b + c)))
    return d, m


# -- brute-force oracles for the closed forms -----------------------------------


def lattice_paths(n: int, k: int, steps=((1, 0), (0, 1), (1, 1)), stay_above: bool = False):
    """All step sequences from (0,0) to (n,k); optionally never below y = x."""
    out = []

    def walk(p, q, seq):
        if (p, q) == (n, k):
            out.append(tuple(seq))
            return
        for dp, dq in steps:
            np_, nq = p + dp, q + dq
            if np_ > n or nq > k or (stay_above and nq < np_):
                continue
            seq.append((dp, dq))
            walk(np_, nq, seq)
            seq.pop()

    walk(0, 0, [])
    return out


def step_weight(seq) -> WeightPoly:
    x, y, z = (_v(s) for s in XYZ)
    w = WeightPoly.one(XYZ)
    for st in seq:
        w = w * {(1, 0): x, (0, 1): y, (1, 1): z}[st]
    return w

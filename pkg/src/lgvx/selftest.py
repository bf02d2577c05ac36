"""Randomized self-checks comparing every fast route with a brute-force oracle.

Each suite draws its own stream from ``random.Random(f"{seed}:{suite}")`` so
results are reproducible and suites are independent of one another.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace

from .aztec import (build_mixed_aztec, count_tilings_brute, count_tilings_via_paths, is_black,
                    punch_holes, translate)
from .drawing import Drawing, MarkedConfig, SignContext
from .involution import default_order, intersection_number, phi
from .lattices import build_grid, build_tri_rhombus
from .pathcount import (MixedSignDeterminant, PathFamily, brute_force_by_type, brute_force_nonintersecting,
                        check_compatibility, enumerate_paths, iter_families, lgv_signed, matrix_M,
                        normalize_sign, permutation_sign)
from .polyring import PolyMatrix, WeightPoly, det, parse_poly

WEIGHT_VARS = ("a", "b", "c")
_WEIGHT_POOL = ("a", "b", "c", "2*a", "a + b", "1", "b*c", "3")


# -- instance generators ----------------------------------------------------------


def random_drawing(rng: random.Random) -> Drawing:
    """A square grid (up to 5x5) or triangular rhombus (up to 4) with random
    edge weights and a random subgraph mask."""
    pool = [parse_poly(s, WEIGHT_VARS) for s in _WEIGHT_POOL]
    a, b, c = (WeightPoly.var(WEIGHT_VARS, v) for v in WEIGHT_VARS)
    if rng.random() < 0.5:
        d = build_grid(rng.randint(1, 5), rng.randint(1, 5), a, b)
    else:
        d = build_tri_rhombus(rng.randint(1, 4), a, b, c)
    keep = rng.choice([1.0, 0.9, 0.75])
    edges = tuple(replace(e, in_subgraph=rng.random() < keep, weight=rng.choice(pool)) for e in d.edges)
    return Drawing(d.variables, d.vertices, edges, d.source, d.sink)


def random_marked(rng: random.Random, d: Drawing, n: int) -> MarkedConfig | None:
    """Starts biased low, ends biased high; None when the drawing is too small
    or the subgraph leaves some start or end stranded."""
    vs = sorted(d.vertices, key=lambda v: (v.y, v.x))
    if len(vs) < 2 * n:
        return None
    low = [v.id for v in vs[: len(vs) * 2 // 3]]
    if len(low) < n:
        return None
    starts = rng.sample(low, n)
    rest = [v.id for v in vs[len(vs) // 3:] if v.id not in starts]
    if len(rest) < n:
        return None
    ends = rng.sample(rest, n)
    reach = {v: d.reaching(v, subgraph=True) for v in ends}
    if not all(any(u in reach[v] for v in ends) for u in starts):
        return None
    if not all(any(u in reach[v] for u in starts) for v in ends):
        return None
    return MarkedConfig(tuple(starts), tuple(ends))


def random_instance(rng: random.Random, n: int | None = None, tries: int = 50):
    for _ in range(tries):
        d = random_drawing(rng)
        m = random_marked(rng, d, n if n is not None else rng.randint(1, 3))
        if m is not None:
            return d, m
    raise RuntimeError("could not draw an instance")


def random_small_grid_instance(rng: random.Random, size: int = 3):
    d = build_grid(size, size)
    for _ in range(100):
        n = rng.randint(1, 3)
        vs = sorted(d.vertices, key=lambda v: (v.x + v.y, v.y))
        low = [v.id for v in vs[: len(vs) * 5 // 8]]
        starts = rng.sample(low, n)
        high = [v.id for v in vs[len(vs) * 3 // 8:] if v.id not in starts]
        ends = rng.sample(high, n)
        m = MarkedConfig(tuple(starts), tuple(ends))
        if all(enumerate_paths(d, u, v) for u, v in zip(starts, ends)):
            return d, m
    raise RuntimeError("could not draw an instance")


def random_holey_region(rng: random.Random, max_side: int = 5, max_pairs: int = 2):
    m, n = rng.randint(1, max_side), rng.randint(1, max_side)
    r = build_mixed_aztec(m, n)
    cells = sorted(r.cells)
    whites = [c for c in cells if not is_black(c)]
    blacks = [c for c in cells if is_black(c)]
    k = rng.randint(0, min(max_pairs, len(whites)))
    return punch_holes(r, rng.sample(whites, k) + rng.sample(blacks, k))


def random_translation(rng: random.Random, tries: int = 200):
    """A holey region and a colour-preserving shift keeping holes inside."""
    for _ in range(tries):
        r = random_holey_region(rng, max_side=5)
        if not r.holes:
            continue
        dx, dy = rng.randint(-3, 3), rng.randint(-3, 3)
        if (dx + dy) % 2 or (dx, dy) == (0, 0):
            continue
        moved = translate(r.holes, dx, dy)
        if all(h in r.cells for h in moved):
            return r, punch_holes(build_mixed_aztec(r.m, r.n), moved)
    raise RuntimeError("could not draw a translation")


# -- suite bodies ---------------------------------------------------------------------


def family_sign(ctx: SignContext, fam: PathFamily) -> int:
    odd = sum(bin(ctx.left_mask(p)).count("1") for p in fam.paths) % 2
    return -1 if odd else 1


def check_sign_matrix(d: Drawing, m: MarkedConfig, fault: str | None = None) -> str | None:
    res = matrix_M(d, m)
    oracle = brute_force_nonintersecting(d, m)
    if fault == "sign-flip" and m.n >= 2:
        rows = [list(r) for r in res.M.entries]
        rows[0][0] = -rows[0][0]
        try:
            count = normalize_sign(det(PolyMatrix(tuple(map(tuple, rows))), variables=d.variables))
        except MixedSignDeterminant as exc:
            return str(exc)
    else:
        count = res.normalized_count
    if count != oracle:
        return f"|det M| = {count} but brute force gives {oracle} for {m}"
    return None


def check_lgv(d: Drawing, m: MarkedConfig) -> str | None:
    value = lgv_signed(d, m)
    signed = WeightPoly.zero(d.variables)
    by_type = brute_force_by_type(d, m)
    for perm, gf in by_type.items():
        signed = signed + gf if permutation_sign(perm) > 0 else signed - gf
    if value != signed:
        return f"det(h) = {value} but the signed sum is {signed} for {m}"
    if check_compatibility(d, m):
        total = brute_force_nonintersecting(d, m)
        if value != total:
            return f"compatible instance {m}: det(h) = {value}, count = {total}"
    return None


@dataclass
class InvolutionStats:
    families: int = 0
    intersecting: int = 0
    failures: list[str] = field(default_factory=list)


def check_involution(d: Drawing, m: MarkedConfig, stats: InvolutionStats | None = None) -> list[str]:
    stats = stats if stats is not None else InvolutionStats()
    order = default_order(d)
    ctx = SignContext(d, m)
    out = []
    for fam in iter_families(d, m):
        stats.families += 1
        img = phi(fam, order)
        if phi(img, order) != fam:
            out.append(f"phi is not an involution on {fam}")
        w1 = _family_weight(d, fam)
        if w1 != _family_weight(d, img):
            out.append(f"phi changes the weight of {fam}")
        if family_sign(ctx, fam) != family_sign(ctx, img):
            out.append(f"phi changes the family sign of {fam}")
        if not fam.is_nonintersecting():
            stats.intersecting += 1
            if permutation_sign(fam.connection) != -permutation_sign(img.connection):
                out.append(f"phi keeps the permutation sign of {fam}")
        elif img != fam:
            out.append(f"phi moves the disjoint family {fam}")
    stats.failures += out
    return out


def _family_weight(d: Drawing, fam: PathFamily) -> WeightPoly:
    w = WeightPoly.one(d.variables)
    for p in fam.paths:
        w = w * d.path_weight(p)
    return w


@dataclass
class LemmaCounts:
    parity: int = 0
    sign: int = 0
    transposition: int = 0


def check_intersection_lemmas(d: Drawing, m: MarkedConfig, counts: LemmaCounts | None = None,
                              per_type: int = 30) -> list[str]:
    """Parity of intersection numbers under a one-path change, the sign
    relation to a disjoint family of the same type, and opposite signs of
    disjoint families whose types differ by a transposition."""
    counts = counts if counts is not None else LemmaCounts()
    ctx = SignContext(d, m)
    marked = set(m.points)
    out = []

    def clean(p):
        return marked.isdisjoint(p[1:-1])

    fams = list(iter_families(d, m))
    eligible = [f for f in fams if all(clean(p) for p in f.paths)]
    disjoint: dict[tuple[int, ...], PathFamily] = {}
    for f in eligible:
        if f.is_nonintersecting():
            disjoint.setdefault(f.connection, f)
    for f in eligible:
        q = disjoint.get(f.connection)
        if q is None:
            continue
        counts.sign += 1
        if family_sign(ctx, f) != family_sign(ctx, q) * (-1) ** intersection_number(f, d):
            out.append(f"sign relation fails for {f} against {q}")

    by_type: dict[tuple[int, ...], list[PathFamily]] = {}
    for f in eligible:
        by_type.setdefault(f.connection, []).append(f)
    for conn, fs in by_type.items():
        for f in fs[:per_type]:
            base = intersection_number(f, d)
            for i in range(m.n):
                old = f.paths[i]
                for new in enumerate_paths(d, old[0], old[-1]):
                    if not clean(new):
                        continue
                    g = PathFamily(f.paths[:i] + (new,) + f.paths[i + 1:], conn)
                    shift = bin(ctx.left_mask(old)).count("1") - bin(ctx.left_mask(new)).count("1")
                    counts.parity += 1
                    if (intersection_number(g, d) - base - shift) % 2:
                        out.append(f"parity relation fails replacing path {i} of {f} by {new}")

    disjoint_all = [f for f in fams if f.is_nonintersecting()]
    for f, g in itertools.combinations(disjoint_all, 2):
        diff = [k for k in range(m.n) if f.connection[k] != g.connection[k]]
        if len(diff) == 2:
            counts.transposition += 1
            if family_sign(ctx, f) != -family_sign(ctx, g):
                out.append(f"{f} and {g} differ by a transposition but share a sign")
    return out


def check_bijection(rng: random.Random) -> str | None:
    r = random_holey_region(rng)
    a, b = count_tilings_brute(r), count_tilings_via_paths(r)
    if a != b:
        return f"region {r}: brute force {a}, paths {b}"
    return None


def check_translation(rng: random.Random) -> str | None:
    r, moved = random_translation(rng)
    a, b = count_tilings_brute(r), count_tilings_brute(moved)
    if a != b:
        return f"holes {r.holes} -> {moved.holes} in MR({r.m},{r.n}): {a} vs {b}"
    return None


# -- driver ----------------------------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    instances: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class SelftestReport:
    seed: int
    instances: int
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def render(self) -> str:
        lines = [f"selftest seed={self.seed} instances={self.instances}"]
        for s in self.suites:
            status = "PASS" if s.passed else f"FAIL ({len(s.failures)})"
            lines.append(f"  {s.name:<22} {s.instances:>4} instances  {status}")
            lines += [f"    {_clip(msg)}" for msg in s.failures[:5]]
        for s in self.suites:
            if s.instances == 0:
                lines.append(f"WARNING: suite {s.name} ran 0 instances")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _clip(msg: str, width: int = 160) -> str:
    return msg if len(msg) <= width else msg[: width - 3] + "..."


SUITES = ("sign-matrix", "lgv", "involution", "intersection-lemmas", "bijection", "translation")
DEFAULT_INSTANCES = 40


def run_selftest(seed: int = 0, instances: int = DEFAULT_INSTANCES, fault: str | None = None) -> SelftestReport:
    """Run every suite; ``fault="sign-flip"`` corrupts the signed matrix so
    the harness can show it notices."""
    if fault not in (None, "sign-flip"):
        raise ValueError(f"unknown fault {fault!r}")
    suites = []
    for name in SUITES:
        rng = random.Random(f"{seed}:{name}")
        failures: list[str] = []
        for _ in range(instances):
            if name == "sign-matrix":
                d, m = random_instance(rng)
                msg = check_sign_matrix(d, m, fault)
            elif name == "lgv":
                d, m = random_instance(rng)
                msg = check_lgv(d, m)
            elif name == "involution":
                d, m = random_small_grid_instance(rng)
                msg = "; ".join(check_involution(d, m)) or None
            elif name == "intersection-lemmas":
                d, m = random_small_grid_instance(rng)
                msg = "; ".join(check_intersection_lemmas(d, m)) or None
            elif name == "bijection":
                msg = check_bijection(rng)
            else:
                msg = check_translation(rng)
            if msg:
                failures.append(msg)
        suites.append(SuiteResult(name, instances, failures))
    return SelftestReport(seed, instances, suites)

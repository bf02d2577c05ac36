"""Path enumeration, the classic LGV determinant, the signed matrix whose
determinant counts non-intersecting families, and brute-force oracles."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from .drawing import Drawing, DrawingError, MarkedConfig, Path, SignContext, path_sign
from .polyring import PolyMatrix, WeightPoly, det

DEFAULT_PATH_LIMIT = 500_000
DEFAULT_TUPLE_LIMIT = 5_000_000


class ResourceLimitError(RuntimeError):
    pass


class MixedSignDeterminant(ArithmeticError):
    pass


def limit(default: int) -> int:
    env = os.environ.get("LGVX_LIMIT")
    return int(env) if env else default


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class PathFamily:
    paths: tuple[Path, ...]
    connection: tuple[int, ...]

    @classmethod
    def from_paths(cls, paths: Sequence[Sequence[str]], config: MarkedConfig) -> PathFamily:
        index = {v: j for j, v in enumerate(config.ends)}
        paths = tuple(tuple(p) for p in paths)
        for p, u in zip(paths, config.starts):
            if p[0] != u:
                raise DrawingError(f"path {p} does not start at {u}")
        return cls(paths, tuple(index[p[-1]] for p in paths))

    def is_nonintersecting(self) -> bool:
        seen: set[str] = set()
        for p in self.paths:
            for v in p:
                if v in seen:
                    return False
                seen.add(v)
        return True


def _check_vertex(d: Drawing, v: str) -> None:
    if v not in d.pos:
        raise DrawingError(f"unknown vertex {v}")


def iter_paths(d: Drawing, u: str, v: str, limit_paths: int | None = None) -> Iterator[Path]:
    """Depth-first over subgraph edges, outgoing edges in angular order."""
    _check_vertex(d, u)
    _check_vertex(d, v)
    ok = d.reaching(v, subgraph=True)
    if u not in ok:
        return
    ceiling = limit(DEFAULT_PATH_LIMIT) if limit_paths is None else limit_paths
    count = 0
    path = [u]

    def walk(x: str):
        nonlocal count
        if x == v:
            count += 1
            if count > ceiling:
                raise ResourceLimitError(f"more than {ceiling} paths from {u} to {v}")
            yield tuple(path)
            return
        for e in d.out_edges(x):
            if e.dst in ok:
                path.append(e.dst)
                yield from walk(e.dst)
                path.pop()

    yield from walk(u)


def enumerate_paths(d: Drawing, u: str, v: str) -> list[Path]:
    return list(iter_paths(d, u, v))


def h(d: Drawing, u: str, v: str, method: str = "dp") -> WeightPoly:
    """Total weight of subgraph paths from u to v."""
    if method == "enumerate":
        total = WeightPoly.zero(d.variables)
        for p in iter_paths(d, u, v):
            total = total + d.path_weight(p)
        return total
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    _check_vertex(d, u)
    _check_vertex(d, v)
    acc = {u: WeightPoly.one(d.variables)}
    ok = d.reaching(v, subgraph=True)
    for x in d.topological_order:
        if x not in acc:
            continue
        if x == v:
            return acc[x]
        for e in d.out_edges(x):
            if e.dst in ok:
                term = acc[x] * e.weight
                acc[e.dst] = acc[e.dst] + term if e.dst in acc else term
    return WeightPoly.zero(d.variables)


def signed_entry(d: Drawing, m: MarkedConfig, i: int, j: int, method: str = "dp",
                 ctx: SignContext | None = None) -> WeightPoly:
    """Sum of sgn(p) wt(p) over subgraph paths from the i-th start to the j-th end.

    ``"enumerate"`` builds each left-side region explicitly; ``"dp"`` runs a
    dynamic programme over (crossing-parity, visited-marked) masks.
    """
    u, v = m.starts[i], m.ends[j]
    if method == "enumerate":
        total = WeightPoly.zero(d.variables)
        for p in iter_paths(d, u, v):
            w = d.path_weight(p)
            total = total + w if path_sign(d, p, m) > 0 else total - w
        return total
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    ctx = ctx or SignContext(d, m)
    ok = d.reaching(v, subgraph=True)
    if u not in ok:
        return WeightPoly.zero(d.variables)
    on, par0 = ctx.fixed(u, v)
    one = WeightPoly.one(d.variables)
    states: dict[str, dict[tuple[int, int], WeightPoly]] = {u: {(par0, ctx.bit.get(u, 0)): one}}
    for x in d.topological_order:
        here = states.pop(x, None)
        if here is None:
            continue
        if x == v:
            total = WeightPoly.zero(d.variables)
            for (par, vis), w in here.items():
                odd = bin(on | par | vis).count("1") % 2
                total = total - w if odd else total + w
            return total
        for e in d.out_edges(x):
            if e.dst not in ok:
                continue
            emask = ctx.edge_mask[(x, e.dst)]
            dbit = ctx.bit.get(e.dst, 0)
            nxt = states.setdefault(e.dst, {})
            for (par, vis), w in here.items():
                key = (par ^ emask, vis | dbit)
                term = w * e.weight
                nxt[key] = nxt[key] + term if key in nxt else term
    return WeightPoly.zero(d.variables)


@dataclass(frozen=True)
class SignedMatrixResult:
    M: PolyMatrix
    determinant: WeightPoly
    normalized_count: WeightPoly


def normalize_sign(p: WeightPoly) -> WeightPoly:
    coefs = p.coefficients()
    if all(c >= 0 for c in coefs):
        return p
    if all(c <= 0 for c in coefs):
        return -p
    raise MixedSignDeterminant(f"determinant {p} has coefficients of both signs")


def matrix_M(d: Drawing, m: MarkedConfig, method: str = "dp") -> SignedMatrixResult:
    m.check_against(d)
    ctx = SignContext(d, m) if method == "dp" else None
    rows = tuple(tuple(signed_entry(d, m, i, j, method=method, ctx=ctx) for j in range(m.n))
                 for i in range(m.n))
    M = PolyMatrix(rows)
    dm = det(M, variables=d.variables)
    return SignedMatrixResult(M, dm, normalize_sign(dm))


def h_matrix(d: Drawing, m: MarkedConfig) -> PolyMatrix:
    return PolyMatrix(tuple(tuple(h(d, u, v) for v in m.ends) for u in m.starts))


def lgv_signed(d: Drawing, m: MarkedConfig, verify: bool = False) -> WeightPoly:
    """det(h(u_i, v_j)); with ``verify`` also checks it against brute force."""
    m.check_against(d)
    value = det(h_matrix(d, m), variables=d.variables)
    if verify:
        signed = WeightPoly.zero(d.variables)
        for perm, gf in brute_force_by_type(d, m).items():
            signed = signed + gf if permutation_sign(perm) > 0 else signed - gf
        if signed != value:
            raise AssertionError(f"LGV mismatch: det(h) = {value}, brute force = {signed}")
    return value


# -- brute force -------------------------------------------------------------


def _candidate_paths(d: Drawing, m: MarkedConfig, i: int, j: int) -> list[tuple[Path, int]]:
    # A path that touches another marked point can never be part of a
    # non-intersecting family: every marked point lies on some path.
    others = set(m.points) - {m.starts[i], m.ends[j]}
    bit = {v: 1 << k for k, v in enumerate(d.pos)}
    out = []
    for p in iter_paths(d, m.starts[i], m.ends[j]):
        if others.isdisjoint(p):
            mask = 0
            for v in p:
                mask |= bit[v]
            out.append((p, mask))
    return out


def iter_nonintersecting(d: Drawing, m: MarkedConfig,
                         limit_tuples: int | None = None) -> Iterator[PathFamily]:
    """Every vertex-disjoint family connecting the starts to the ends."""
    m.check_against(d)
    n = m.n
    ceiling = limit(DEFAULT_TUPLE_LIMIT) if limit_tuples is None else limit_tuples
    cand = {(i, j): _candidate_paths(d, m, i, j) for i in range(n) for j in range(n)}
    visited = 0
    for perm in itertools.permutations(range(n)):
        lists = [cand[(i, perm[i])] for i in range(n)]
        if any(not lst for lst in lists):
            continue
        chosen: list[Path] = []

        def extend(i: int, used: int):
            nonlocal visited
            if i == n:
                yield PathFamily(tuple(chosen), perm)
                return
            for p, mask in lists[i]:
                visited += 1
                if visited > ceiling:
                    raise ResourceLimitError(f"more than {ceiling} partial families examined")
                if used & mask:
                    continue
                chosen.append(p)
                yield from extend(i + 1, used | mask)
                chosen.pop()

        yield from extend(0, 0)


def brute_force_by_type(d: Drawing, m: MarkedConfig) -> dict[tuple[int, ...], WeightPoly]:
    zero = WeightPoly.zero(d.variables)
    out = {perm: zero for perm in itertools.permutations(range(m.n))}
    weights: dict[Path, WeightPoly] = {}
    for fam in iter_nonintersecting(d, m):
        w = WeightPoly.one(d.variables)
        for p in fam.paths:
            if p not in weights:
                weights[p] = d.path_weight(p)
            w = w * weights[p]
        out[fam.connection] = out[fam.connection] + w
    return out


def brute_force_nonintersecting(d: Drawing, m: MarkedConfig) -> WeightPoly:
    total = WeightPoly.zero(d.variables)
    for gf in brute_force_by_type(d, m).values():
        total = total + gf
    return total


def check_compatibility(d: Drawing, m: MarkedConfig, limit_pairs: int | None = None) -> bool:
    """True iff for i < j and k > l every u_i->v_k path meets every u_j->v_l path."""
    ceiling = limit(DEFAULT_TUPLE_LIMIT) if limit_pairs is None else limit_pairs
    bit = {v: 1 << k for k, v in enumerate(d.pos)}

    def masks(u, v):
        out = []
        for p in iter_paths(d, u, v):
            mask = 0
            for x in p:
                mask |= bit[x]
            out.append(mask)
        return out

    cache: dict[tuple[str, str], list[int]] = {}
    checked = 0
    n = m.n
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for l in range(k):
                    for key in ((m.starts[i], m.ends[k]), (m.starts[j], m.ends[l])):
                        if key not in cache:
                            cache[key] = masks(*key)
                    a = cache[(m.starts[i], m.ends[k])]
                    b = cache[(m.starts[j], m.ends[l])]
                    for pa in a:
                        for pb in b:
                            checked += 1
                            if checked > ceiling:
                                raise ResourceLimitError(f"more than {ceiling} path pairs compared")
                            if not pa & pb:
                                return False
    return True


def iter_families(d: Drawing, m: MarkedConfig, limit_tuples: int | None = None) -> Iterator[PathFamily]:
    """Every family of paths connecting the starts to the ends, intersecting or not."""
    m.check_against(d)
    n = m.n
    ceiling = limit(DEFAULT_TUPLE_LIMIT) if limit_tuples is None else limit_tuples
    paths = {(i, j): enumerate_paths(d, m.starts[i], m.ends[j]) for i in range(n) for j in range(n)}
    produced = 0
    for perm in itertools.permutations(range(n)):
        for combo in itertools.product(*(paths[(i, perm[i])] for i in range(n))):
            produced += 1
            if produced > ceiling:
                raise ResourceLimitError(f"more than {ceiling} families")
            yield PathFamily(tuple(combo), perm)

"""Command-line front end.

Exit codes: 0 success or agreement, 1 disagreement or selftest failure,
2 input error (bad file, bad parameters, resource ceiling hit).
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

from . import aztec, lattices
from .drawing import DrawingError, MarkedConfig
from .fileformat import (FileFormatError, ValidationFailed, emit_graph, emit_region, is_region_text,
                         parse_graph_file, parse_region_file)
from .pathcount import (MixedSignDeterminant, ResourceLimitError, brute_force_by_type,
                        brute_force_nonintersecting, h_matrix, matrix_M, permutation_sign)
from .polyring import WeightPoly, det

OK, DISAGREE, INPUT_ERROR = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class RunReport:
    description: str
    matrix: str
    determinant: WeightPoly
    count: WeightPoly
    brute: WeightPoly | None = None
    lgv: WeightPoly | None = None
    decomposition: list[tuple[tuple[int, ...], int, WeightPoly]] = field(default_factory=list)
    evaluations: list[tuple[str, str]] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def agrees(self) -> bool | None:
        if self.brute is None:
            return None
        return self.brute == self.count

    def render(self, timing: bool = True) -> str:
        out = [f"instance: {self.description}", "M =", self.matrix,
               f"det M = {self.determinant}", f"count = {self.count}"]
        if self.brute is not None:
            out.append(f"brute force = {self.brute}")
            out.append(f"agree = {'true' if self.agrees else 'false'}")
        if self.lgv is not None:
            out.append(f"det h = {self.lgv}")
            for perm, sign, gf in self.decomposition:
                out.append(f"  type {' '.join(map(str, perm))} sign {'+' if sign > 0 else '-'}: {gf}")
        for label, value in self.evaluations:
            out.append(f"{label}: {value}")
        if timing:
            out.append(f"time = {self.seconds:.3f}s")
        return "\n".join(out)


def parse_assignment(items: list[str] | None) -> dict[str, int]:
    out: dict[str, int] = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise InputError(f"expected var=int, got {item!r}")
        try:
            out[name] = int(value)
        except ValueError:
            raise InputError(f"value for {name} must be an integer, got {value!r}") from None
    return out


def specialize(p: WeightPoly, assignment: dict[str, int]) -> str:
    unknown = set(assignment) - set(p.variables)
    if unknown:
        raise InputError(f"unknown variables {sorted(unknown)}; have {list(p.variables)}")
    if set(p.variables) <= set(assignment):
        return str(p.evaluate(assignment))
    return str(p.substitute(assignment))


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


# -- subcommands ---------------------------------------------------------------------


def cmd_validate(args) -> int:
    text = _read(args.file)
    if is_region_text(text):
        r = parse_region_file(text)
        black, white = r.color_balance()
        print(f"valid region: {'mixed' if r.mixed else 'full'} {r.m}x{r.n}, "
              f"{len(r.cells)} cells, {len(r.holes)} holes, {black} black / {white} white open cells")
        return OK
    d, m = parse_graph_file(text)
    sub = sum(e.in_subgraph for e in d.edges)
    print(f"valid drawing: {len(d.vertices)} vertices, {len(d.edges)} edges ({sub} in subgraph), "
          f"{m.n} marked pairs")
    return OK


def run_count(text: str, description: str, brute: bool = False, lgv: bool = False,
              assignment: dict[str, int] | None = None, method: str = "dp") -> RunReport:
    t0 = time.perf_counter()
    d, m = parse_graph_file(text)
    res = matrix_M(d, m, method=method)
    report = RunReport(description, str(res.M) if m.n else "[]", res.determinant, res.normalized_count)
    if brute:
        report.brute = brute_force_nonintersecting(d, m)
    if lgv:
        report.lgv = det(h_matrix(d, m), variables=d.variables)
        for perm, gf in sorted(brute_force_by_type(d, m).items()):
            report.decomposition.append((perm, permutation_sign(perm), gf))
    if assignment:
        report.evaluations.append(("count at " + _fmt_assign(assignment), specialize(res.normalized_count, assignment)))
        if report.lgv is not None:
            report.evaluations.append(("det h at " + _fmt_assign(assignment), specialize(report.lgv, assignment)))
    report.seconds = time.perf_counter() - t0
    return report


def _fmt_assign(assignment: dict[str, int]) -> str:
    return " ".join(f"{k}={v}" for k, v in assignment.items())


def cmd_count(args) -> int:
    report = run_count(_read(args.file), args.file, args.brute, args.lgv,
                       parse_assignment(args.eval), args.method)
    print(report.render(timing=not args.no_timing))
    if report.agrees is False:
        return DISAGREE
    if report.lgv is not None:
        signed = WeightPoly.zero(report.lgv.variables)
        for _, sign, gf in report.decomposition:
            signed = signed + gf if sign > 0 else signed - gf
        if signed != report.lgv:
            print(f"det h disagrees with the signed sum {signed}")
            return DISAGREE
    return OK


def _print_poly(p: WeightPoly, args) -> int:
    assignment = parse_assignment(args.eval)
    print(specialize(p, assignment) if assignment else p)
    return OK


def cmd_delannoy(args) -> int:
    return _print_poly(lattices.weighted_delannoy(args.n, args.k), args)


def cmd_schroder(args) -> int:
    return _print_poly(lattices.weighted_schroder(args.n), args)


def cmd_thm51(args) -> int:
    return _print_poly(lattices.theorem51(lattices.ClosedFormParams(args.a, args.b, args.c)), args)


def cmd_cor52(args) -> int:
    return _print_poly(lattices.corollary52(lattices.ClosedFormParams(args.a, args.b, args.c)), args)


def cmd_aztec(args) -> int:
    print(aztec.aztec_formula(args.a, args.b, args.c))
    return OK


def cmd_tile(args) -> int:
    r = parse_region_file(_read(args.file))
    mode = "both" if args.both or not (args.brute or args.paths) else ("brute" if args.brute else "paths")
    counts = {}
    if mode in ("brute", "both"):
        counts["brute force"] = aztec.count_tilings_brute(r)
    if mode in ("paths", "both"):
        if not r.mixed:
            raise InputError("the path count needs a mixed Aztec rectangle; use --brute")
        counts["paths"] = aztec.count_tilings_via_paths(r)
    for label, value in counts.items():
        print(f"{label} = {value}")
    if mode == "both":
        agree = len(set(counts.values())) == 1
        print(f"agree = {'true' if agree else 'false'}")
        return OK if agree else DISAGREE
    return OK


def _parse_cell(tok: str) -> tuple[int, int]:
    try:
        A, B = (int(s) for s in tok.split(","))
    except ValueError:
        raise InputError(f"hole must look like A,B; got {tok!r}") from None
    return A, B


def _ids(tokens: list[str] | None) -> tuple[str, ...]:
    return tuple(tokens or ())


def cmd_emit(args) -> int:
    kind, params = args.builder, args.params

    def ints(k: int) -> list[int]:
        if len(params) < k:
            raise InputError(f"emit {kind} needs {k} integer parameters")
        try:
            return [int(p) for p in params[:k]]
        except ValueError:
            raise InputError(f"emit {kind}: parameters must be integers") from None

    if kind in ("grid", "rhombus", "thm51") and len(params) != {"grid": 2, "rhombus": 1, "thm51": 3}[kind]:
        raise InputError(f"wrong number of parameters for emit {kind}")
    if kind == "grid":
        d = lattices.build_grid(*ints(2))
        print(emit_graph(d, MarkedConfig(_ids(args.starts), _ids(args.ends))), end="")
    elif kind == "rhombus":
        d = lattices.build_tri_rhombus(*ints(1))
        print(emit_graph(d, MarkedConfig(_ids(args.starts), _ids(args.ends))), end="")
    elif kind == "thm51":
        d, m = lattices.marked_config_thm51(lattices.ClosedFormParams(*ints(3)))
        print(emit_graph(d, m), end="")
    elif kind == "aztec":
        m_, n_ = ints(2)
        r = aztec.AztecRegion(m_, n_, mixed=not args.full)
        r = aztec.punch_holes(r, [_parse_cell(t) for t in params[2:]])
        print(emit_region(r), end="")
    else:
        raise InputError(f"unknown builder {kind!r}")
    return OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    if args.instances < 0:
        raise InputError("--instances must be non-negative")
    report = run_selftest(args.seed, args.instances)
    print(report.render())
    return OK if report.passed else DISAGREE


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lgvx", description="Signed path-matrix counts of non-intersecting "
                                "lattice paths, closed forms and domino tilings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="parse and validate a graph or region file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("count", help="count non-intersecting families in a graph file")
    s.add_argument("file")
    s.add_argument("--brute", action="store_true", help="also run the brute-force oracle")
    s.add_argument("--lgv", action="store_true", help="also print det(h) and the signed decomposition")
    s.add_argument("--eval", nargs="+", metavar="VAR=INT", help="integer specialisation")
    s.add_argument("--method", choices=("dp", "enumerate"), default="dp")
    s.add_argument("--no-timing", action="store_true", help="omit the timing line")
    s.set_defaults(func=cmd_count)

    for name, params, func, help_ in (
        ("delannoy", ("n", "k"), cmd_delannoy, "weighted Delannoy polynomial"),
        ("schroder", ("n",), cmd_schroder, "weighted large Schroeder polynomial"),
        ("thm51", ("a", "b", "c"), cmd_thm51, "collinear-points formula on the triangular lattice"),
        ("cor52", ("a", "b", "c"), cmd_cor52, "collinear-points formula on the square lattice"),
        ("aztec", ("a", "b", "c"), cmd_aztec, "tilings of a mixed Aztec rectangle with four collinear holes"),
    ):
        s = sub.add_parser(name, help=help_)
        for param in params:
            s.add_argument(param, type=int)
        if name != "aztec":
            s.add_argument("--eval", nargs="+", metavar="VAR=INT")
        s.set_defaults(func=func)

    s = sub.add_parser("tile", help="count domino tilings of a region file")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--brute", action="store_true")
    g.add_argument("--paths", action="store_true")
    g.add_argument("--both", action="store_true")
    s.set_defaults(func=cmd_tile)

    s = sub.add_parser("emit", help="print a graph or region file for a builder",
                       description="builders: grid W H | rhombus N | thm51 A B C | aztec M N [A,B ...]")
    s.add_argument("builder", choices=("grid", "rhombus", "thm51", "aztec"))
    s.add_argument("params", nargs="*")
    s.add_argument("--starts", nargs="*", help="starting vertex ids (grid, rhombus)")
    s.add_argument("--ends", nargs="*", help="ending vertex ids (grid, rhombus)")
    s.add_argument("--full", action="store_true", help="aztec: full Aztec rectangle instead of mixed")
    s.set_defaults(func=cmd_emit)

    s = sub.add_parser("selftest", help="randomized checks against brute force")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--instances", type=int, default=None)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "instances", 0) is None:
        from .selftest import DEFAULT_INSTANCES
        args.instances = DEFAULT_INSTANCES
    try:
        return args.func(args)
    except MixedSignDeterminant as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DISAGREE
    except (InputError, FileFormatError, ValidationFailed, DrawingError, ResourceLimitError,
            aztec.RegionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())

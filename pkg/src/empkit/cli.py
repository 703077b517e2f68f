"""Command-line surface: reductions, solvers, lifts/extractions, generators
and verifiers over flat text files.

Exit codes: 0 success/valid witness, 1 invalid witness, 2 precondition
failure, 3 budget-indeterminate, 4 parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats, generators, graph, puzzle, red_ham, red_sat, red_vdpc, sat
from .core import SIGNED, UNSIGNED, PathCover, PuzzleInstance, Tiling, rotated_labels
from .errors import (
    DegreeBoundError,
    EmpkitError,
    FormatError,
    GraphInvariantError,
    ModeMismatchError,
    OccurrenceBoundError,
    SearchBudgetExceeded,
    SizeLimitError,
    VerificationError,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3
EXIT_PARSE = 4


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise FormatError(f"no such file: {path}")
    return p.read_text()


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def _rebuild_emp(path: str) -> PuzzleInstance:
    """Load a reduction-built instance together with its metadata sidecar."""
    inst = formats.parse_puzzle(_read(path))
    meta = formats.read_meta(path)
    g = formats.digraph_from_payload(meta["digraph"])
    builder = meta.get("builder")
    if builder == "ham2semp":
        rebuilt = red_ham.build_signed_puzzle(g)
    elif builder == "vdpc2emp":
        rebuilt = red_vdpc.build_puzzle(g, meta["mode"])
    else:
        raise FormatError(f"unknown builder {builder!r} in sidecar")
    def essence(p: PuzzleInstance):
        return [(t.id, t.labels) for t in p.tiles]

    if rebuilt.mode != inst.mode or essence(rebuilt) != essence(inst):
        raise FormatError("stale metadata sidecar: instance does not match")
    return rebuilt


def _rebuild_vdpc(path: str):
    g = formats.parse_digraph(_read(path))
    meta = formats.read_meta(path)
    if meta.get("builder") != "sat2vdpc":
        raise FormatError("sidecar was not produced by reduce sat2vdpc")
    f = sat.parse_dimacs(meta["dimacs"])
    g2, layout, terr = red_sat.build_vdpc(f)
    if g2.edges != g.edges or g2.n != g.n:
        raise FormatError("stale metadata sidecar: graph does not match")
    return g2, layout, terr


# ------------------------------------------------------------------ reduce

def cmd_reduce(args) -> int:
    if args.kind == "sat2vdpc":
        text = _read(args.input)
        f = sat.parse_dimacs(text)
        g, layout, _ = red_sat.build_vdpc(f)
        _write(args.output, formats.dump_digraph(g))
        formats.write_meta(args.output, {"builder": "sat2vdpc", "dimacs": text})
        print(f"vertices={g.n} edges={len(g.edges)}")
        return EXIT_OK
    g = formats.parse_digraph(_read(args.input))
    if args.kind == "ham2semp":
        inst = red_ham.build_signed_puzzle(g)
        builder = {"builder": "ham2semp", "mode": SIGNED}
    else:  # vdpc2emp
        inst = red_vdpc.build_puzzle(g, args.mode)
        builder = {"builder": "vdpc2emp", "mode": args.mode}
    _write(args.output, formats.dump_puzzle(inst))
    formats.write_meta(args.output,
                       builder | {"digraph": formats.digraph_payload(g)})
    print(f"tiles={inst.n}")
    return EXIT_OK


# ------------------------------------------------------------------ solve

def cmd_solve(args) -> int:
    kind = args.kind
    if kind in ("hampath", "maxcover"):
        g = formats.parse_digraph(_read(args.input))
        if kind == "hampath":
            path = graph.find_hamiltonian_path(g, budget=args.budget)
            if path is None:
                print("value=none")
                return EXIT_OK
            print("path " + " ".join(str(v + 1) for v in path))
            print(f"value={len(path) - 1}")
            if args.output:
                _write(args.output, formats.dump_cover(PathCover((tuple(path),))))
            return EXIT_OK
        value, cover = graph.brute_force_max_path_cover(g)
        if args.output:
            _write(args.output, formats.dump_cover(cover))
        print(f"value={value}")
        return EXIT_OK

    if kind == "max3sat":
        f = sat.parse_dimacs(_read(args.input))
        value, assignment = sat.brute_force_max3sat(f)
        if args.output:
            _write(args.output, formats.dump_assignment(assignment))
        print(f"value={value}")
        return EXIT_OK

    inst = formats.parse_puzzle(_read(args.input))
    if kind == "exact-placement":
        value, tiling = puzzle.solve_exact_max_placement(inst, limit=args.limit)
    elif kind == "exact-matched":
        value, tiling = puzzle.solve_exact_max_matched(inst, limit=args.limit)
    elif kind == "alt":
        tiling = puzzle.approx_alternate(inst)
        value = tiling.placed
    elif kind == "two-thirds":
        tiling = puzzle.approx_matching_two_thirds(inst)
        value = tiling.placed
    elif kind == "matched-half":
        tiling = puzzle.approx_matched_half(inst)
        value = puzzle.verify_tiling(inst, tiling).matched
    elif kind == "eulerian":
        tiling = puzzle.solve_no_rotation(inst)
        if tiling is None:
            print("value=none")
            return EXIT_OK
        value = tiling.placed
    else:
        raise FormatError(f"unknown solver {kind!r}")
    if args.output:
        _write(args.output, formats.dump_tiling(tiling, inst.h, inst.w))
    print(f"value={value}")
    return EXIT_OK


# ------------------------------------------------------------------ lift

def cmd_lift(args) -> int:
    if args.kind == "path":
        inst = _rebuild_emp(args.instance)
        cover = formats.parse_cover(_read(args.witness))
        if len(cover.paths) != 1:
            raise VerificationError("expected a single path witness")
        tiling = red_ham.lift_ham_path(inst, list(cover.paths[0]))
        _write(args.output, formats.dump_tiling(tiling, inst.h, inst.w))
        print(f"placed={tiling.placed}")
        return EXIT_OK
    if args.kind == "cover":
        inst = _rebuild_emp(args.instance)
        cover = formats.parse_cover(_read(args.witness))
        tiling = red_vdpc.lift_path_cover(inst, cover)
        _write(args.output, formats.dump_tiling(tiling, inst.h, inst.w))
        print(f"placed={tiling.placed}")
        return EXIT_OK
    if args.kind == "assign":
        _, layout, _terr = _rebuild_vdpc(args.instance)
        a = formats.parse_assignment(_read(args.witness))
        cover = red_sat.lift_assignment(layout, a)
        _write(args.output, formats.dump_cover(cover))
        print(f"edges={cover.edge_count()} paths={len(cover.paths)}")
        return EXIT_OK
    raise FormatError(f"unknown lift kind {args.kind!r}")


def cmd_extract(args) -> int:
    if args.kind == "path":
        inst = _rebuild_emp(args.instance)
        tiling, _, _ = formats.parse_tiling(_read(args.witness))
        path = red_ham.extract_ham_path(inst, tiling)
        _write(args.output, formats.dump_cover(PathCover((tuple(path),))))
        print("path " + " ".join(str(v + 1) for v in path))
        return EXIT_OK
    if args.kind == "cover":
        inst = _rebuild_emp(args.instance)
        tiling, _, _ = formats.parse_tiling(_read(args.witness))
        report = red_vdpc.extract_path_cover(inst, tiling)
        _write(args.output, formats.dump_cover(report.cover))
        print(f"edges={report.cover.edge_count()} paths={len(report.cover.paths)}")
        print(f"blanks_initial={report.blanks_initial} "
              f"step2_removed={report.step2_removed} "
              f"blanks_after={report.blanks_after_step2} "
              f"unplaced_vertices={report.unplaced_vertices}")
        return EXIT_OK
    if args.kind == "assign":
        _, layout, terr = _rebuild_vdpc(args.instance)
        cover = formats.parse_cover(_read(args.witness))
        a = red_sat.extract_assignment(layout, terr, cover)
        _write(args.output, formats.dump_assignment(a))
        endpoints = cover.endpoints() - {layout.s, layout.t}
        satisfied = sat.evaluate(layout.formula, a)
        print(f"satisfied={satisfied}/{layout.formula.num_clauses} "
              f"endpoints={len(endpoints)}")
        return EXIT_OK
    raise FormatError(f"unknown extract kind {args.kind!r}")


# ------------------------------------------------------------------ gen

def cmd_gen(args) -> int:
    if args.kind == "planted-ham":
        g, path = generators.planted_ham(args.n, args.seed)
        _write(args.output, formats.dump_digraph(g))
        _write(args.output + ".sol",
               formats.dump_cover(PathCover((tuple(path),))))
    elif args.kind == "random-degree2":
        g = generators.random_degree2(args.n, args.seed)
        _write(args.output, formats.dump_digraph(g))
    elif args.kind == "planted-3sat":
        f, a = generators.planted_3sat(args.n, args.m, args.seed)
        _write(args.output, sat.to_dimacs(f))
        _write(args.output + ".sol", formats.dump_assignment(a))
    elif args.kind == "random-tiles":
        inst = generators.random_tiles(args.n, args.seed, mode=args.mode,
                                       colors=args.colors)
        _write(args.output, formats.dump_puzzle(inst))
    else:
        raise FormatError(f"unknown generator {args.kind!r}")
    print(f"wrote {args.output}")
    return EXIT_OK


# ------------------------------------------------------------------ verify

def cmd_verify(args) -> int:
    if args.kind == "tiling":
        inst = formats.parse_puzzle(_read(args.instance))
        tiling, h, w = formats.parse_tiling(_read(args.witness))
        if (h, w) != (inst.h, inst.w):
            raise VerificationError("tiling dimensions do not match instance")
        report = puzzle.verify_tiling(inst, tiling)
        print(f"placed={report.placed} matched={report.matched} "
              f"violations={len(report.violations)}")
        for i, j, a, b in report.violations:
            print(f"violation slots {i},{j}: {a} vs {b}")
        return EXIT_OK if not report.violations else EXIT_INVALID
    if args.kind == "cover":
        g = formats.parse_digraph(_read(args.instance))
        cover = formats.parse_cover(_read(args.witness))
        edges = graph.verify_path_cover(g, cover)
        print(f"edges={edges} paths={len(cover.paths)}")
        return EXIT_OK
    if args.kind == "assign":
        f = sat.parse_dimacs(_read(args.instance))
        a = formats.parse_assignment(_read(args.witness))
        value = sat.evaluate(f, a)
        print(f"satisfied={value}/{f.num_clauses}")
        return EXIT_OK
    raise FormatError(f"unknown verify kind {args.kind!r}")


# ------------------------------------------------------------------ dump

def cmd_dump(args) -> int:
    inst = formats.parse_puzzle(_read(args.instance))
    if args.tiling:
        tiling, _, _ = formats.parse_tiling(_read(args.tiling))
    else:
        tiling = Tiling(tuple((t.id, 0) for t in inst.tiles))
    by_id = {t.id: t for t in inst.tiles}
    cells = []
    for s in tiling.slots:
        if s is None:
            cells.append(("", ".", "", ""))
        else:
            labs = rotated_labels(by_id[s[0]], s[1])
            cells.append(tuple(str(x) for x in labs))
    width = max(6, max(len(x) for c in cells for x in c) + 1)
    for row in range(inst.h):
        line_t, line_m, line_b = [], [], []
        for col in range(inst.w):
            l, t, r, b = cells[row * inst.w + col]
            line_t.append(t.center(2 * width + 1))
            line_m.append(l.rjust(width) + " " + r.ljust(width))
            line_b.append(b.center(2 * width + 1))
        print("|".join(line_t))
        print("|".join(line_m))
        print("|".join(line_b))
        print("-" * (inst.w * (2 * width + 2)))
    return EXIT_OK


# ------------------------------------------------------------------ main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="empkit",
        description="1xn edge-matching puzzle reduction toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="run a reduction")
    p.add_argument("kind", choices=["sat2vdpc", "vdpc2emp", "ham2semp"])
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--mode", choices=[UNSIGNED, SIGNED], default=UNSIGNED)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="run a solver")
    p.add_argument("kind", choices=[
        "exact-placement", "exact-matched", "alt", "two-thirds",
        "matched-half", "eulerian", "hampath", "maxcover", "max3sat"])
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--budget", type=int, default=graph.DEFAULT_SEARCH_BUDGET)
    p.add_argument("--limit", type=int, default=puzzle.EXACT_PLACEMENT_LIMIT)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("lift", help="lift a witness through a reduction")
    p.add_argument("kind", choices=["path", "cover", "assign"])
    p.add_argument("instance")
    p.add_argument("witness")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("extract", help="extract a witness back out")
    p.add_argument("kind", choices=["path", "cover", "assign"])
    p.add_argument("instance")
    p.add_argument("witness")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("kind", choices=[
        "planted-ham", "random-degree2", "planted-3sat", "random-tiles"])
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--mode", choices=[UNSIGNED, SIGNED], default=UNSIGNED)
    p.add_argument("--colors", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="verify a witness")
    p.add_argument("kind", choices=["tiling", "cover", "assign"])
    p.add_argument("instance")
    p.add_argument("witness")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump", help="pretty-print a board")
    p.add_argument("instance")
    p.add_argument("tiling", nargs="?")
    p.add_argument("--ascii", action="store_true", default=True)
    p.set_defaults(func=cmd_dump)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DegreeBoundError, OccurrenceBoundError, SizeLimitError,
            GraphInvariantError, ModeMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SearchBudgetExceeded as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (VerificationError, EmpkitError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

"""Text file formats for instances and witnesses.

One record per line, '#' starts a comment.  Vertex ids are 1-based in files
and 0-based in memory.

* digraph:    "dgraph <|V|> <|E|> s=<id> t=<id>" then "e <u> <v>" lines
* puzzle:     "emp <mode> h=<h> w=<w>" then "tile <id> <l> <t> <r> <b>";
              signed labels are "+color" / "-color"
* tiling:     "tiling <h> <w>" then one line per slot: "." or "<id> r<rot>"
* cover:      "path <v1> <v2> ..." per path
* assignment: "assign 0110..."
* CNF:        DIMACS (see sat module)

Reduction metadata lives in a JSON sidecar "<name>.meta" holding the
generating inputs (builder name + source graph or formula); the reductions
are deterministic, so the sidecar reconstructs ReductionMeta/GadgetLayout
exactly and staleness is detectable by rebuilding.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import (
    Digraph,
    EdgeLabel,
    PathCover,
    PuzzleInstance,
    Tile,
    Tiling,
    label,
)
from .errors import FormatError


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


# ---------------------------------------------------------------- digraph

def dump_digraph(g: Digraph) -> str:
    lines = [f"dgraph {g.n} {len(g.edges)} s={g.s + 1} t={g.t + 1}"]
    for u, v in g.edges:
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> Digraph:
    header = None
    edges = []
    for lineno, line in _records(text):
        parts = line.split()
        if parts[0] == "dgraph":
            try:
                n, m = int(parts[1]), int(parts[2])
                s = int(parts[3].removeprefix("s=")) - 1
                t = int(parts[4].removeprefix("t=")) - 1
            except (IndexError, ValueError):
                raise FormatError(f"line {lineno}: bad dgraph header")
            header = (n, m, s, t)
        elif parts[0] == "e":
            if header is None:
                raise FormatError(f"line {lineno}: edge before header")
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except (IndexError, ValueError):
                raise FormatError(f"line {lineno}: bad edge record")
            edges.append((u, v))
        else:
            raise FormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if header is None:
        raise FormatError("missing dgraph header")
    n, m, s, t = header
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    try:
        return Digraph(n=n, edges=tuple(edges), s=s, t=t)
    except Exception as exc:
        raise FormatError(str(exc))


# ---------------------------------------------------------------- puzzle

def dump_puzzle(inst: PuzzleInstance) -> str:
    lines = [f"emp {inst.mode} h={inst.h} w={inst.w}"]
    for t in inst.tiles:
        lines.append(
            f"tile {t.id} {t.left} {t.top} {t.right} {t.bottom}")
    return "\n".join(lines) + "\n"


def parse_puzzle(text: str) -> PuzzleInstance:
    header = None
    tiles = []
    for lineno, line in _records(text):
        parts = line.split()
        if parts[0] == "emp":
            try:
                mode = parts[1]
                h = int(parts[2].removeprefix("h="))
                w = int(parts[3].removeprefix("w="))
            except (IndexError, ValueError):
                raise FormatError(f"line {lineno}: bad emp header")
            header = (mode, h, w)
        elif parts[0] == "tile":
            if header is None:
                raise FormatError(f"line {lineno}: tile before header")
            if len(parts) != 6:
                raise FormatError(f"line {lineno}: tile needs id + 4 labels")
            try:
                tid = int(parts[1])
            except ValueError:
                raise FormatError(f"line {lineno}: bad tile id")
            labs = [label(p) for p in parts[2:6]]
            tiles.append(Tile(tid, labs[0], labs[1], labs[2], labs[3]))
        else:
            raise FormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if header is None:
        raise FormatError("missing emp header")
    mode, h, w = header
    try:
        return PuzzleInstance(mode=mode, h=h, w=w, tiles=tuple(tiles))
    except Exception as exc:
        raise FormatError(str(exc))


# ---------------------------------------------------------------- tiling

def dump_tiling(t: Tiling, h: int, w: int) -> str:
    lines = [f"tiling {h} {w}"]
    for s in t.slots:
        lines.append("." if s is None else f"{s[0]} r{s[1]}")
    return "\n".join(lines) + "\n"


def parse_tiling(text: str) -> tuple[Tiling, int, int]:
    header = None
    slots = []
    for lineno, line in _records(text):
        parts = line.split()
        if parts[0] == "tiling":
            try:
                header = (int(parts[1]), int(parts[2]))
            except (IndexError, ValueError):
                raise FormatError(f"line {lineno}: bad tiling header")
        elif header is None:
            raise FormatError(f"line {lineno}: slot before header")
        elif parts[0] == ".":
            slots.append(None)
        else:
            try:
                tid = int(parts[0])
                rot = int(parts[1].removeprefix("r"))
            except (IndexError, ValueError):
                raise FormatError(f"line {lineno}: bad slot record")
            slots.append((tid, rot))
    if header is None:
        raise FormatError("missing tiling header")
    h, w = header
    if len(slots) != h * w:
        raise FormatError(f"expected {h * w} slots, found {len(slots)}")
    try:
        return Tiling(tuple(slots)), h, w
    except Exception as exc:
        raise FormatError(str(exc))


# ---------------------------------------------------------------- cover

def dump_cover(c: PathCover) -> str:
    lines = []
    for p in c.paths:
        lines.append("path " + " ".join(str(v + 1) for v in p))
    return "\n".join(lines) + "\n"


def parse_cover(text: str) -> PathCover:
    paths = []
    for lineno, line in _records(text):
        parts = line.split()
        if parts[0] != "path":
            raise FormatError(f"line {lineno}: unknown record {parts[0]!r}")
        try:
            paths.append(tuple(int(x) - 1 for x in parts[1:]))
        except ValueError:
            raise FormatError(f"line {lineno}: bad vertex id")
        if not paths[-1]:
            raise FormatError(f"line {lineno}: empty path")
    return PathCover(tuple(paths))


# ---------------------------------------------------------------- assignment

def dump_assignment(a) -> str:
    return "assign " + "".join("1" if x else "0" for x in a) + "\n"


def parse_assignment(text: str):
    for lineno, line in _records(text):
        parts = line.split()
        if parts[0] != "assign" or len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'assign <bits>'")
        if set(parts[1]) - {"0", "1"}:
            raise FormatError(f"line {lineno}: bits must be 0/1")
        return tuple(c == "1" for c in parts[1])
    raise FormatError("missing assign record")


# ---------------------------------------------------------------- sidecars

def meta_path(path: str | Path) -> Path:
    return Path(str(path) + ".meta")


def write_meta(path: str | Path, payload: dict) -> None:
    meta_path(path).write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n")


def read_meta(path: str | Path) -> dict:
    p = meta_path(path)
    if not p.exists():
        raise FormatError(f"missing metadata sidecar {p}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"corrupt metadata sidecar {p}: {exc}")


def digraph_payload(g: Digraph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges], "s": g.s, "t": g.t}


def digraph_from_payload(d: dict) -> Digraph:
    return Digraph(n=d["n"], edges=tuple((u, v) for u, v in d["edges"]),
                   s=d["s"], t=d["t"])

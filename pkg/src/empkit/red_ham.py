"""Reduction from Hamiltonian Path to 1xn Signed Edge-Matching Puzzle:
forward tiling construction and backward path extraction.

Tile schema (signs dropped in unsigned mode, used by the path-cover
reduction that shares this builder):

* vertex v:   T(+I:v, +U:v, +O:v, +U:v)
* edge (i,j): T(-O:i, +X, -I:j, -X)
* bridge:     T(-O:t, +U:B, -X, +U:B)

Tile ids: vertices in index order, then edges sorted, then the bridge.
"""

from __future__ import annotations

from .core import (
    KIND_BRIDGE,
    KIND_EDGE,
    KIND_VERTEX,
    SIGNED,
    UNSIGNED,
    Digraph,
    EdgeLabel,
    PuzzleInstance,
    ReductionMeta,
    Tile,
    Tiling,
    rotated_labels,
)
from .errors import VerificationError

# rotation that turns an edge tile garbage-side left/right in the leftover
# chain: unsigned needs any of {1,3}, signed specifically 3 so the chain and
# the bridge's right edge stay sign-compatible
GARBAGE_ROTATION = {UNSIGNED: 1, SIGNED: 3}


def build_instance(g: Digraph, mode: str) -> PuzzleInstance:
    """Construct the 1xn instance (n = |V| + |E| + 1) for either mode."""
    g.validate()
    sp = (lambda c: EdgeLabel(c, "+")) if mode == SIGNED else (lambda c: EdgeLabel(c))
    sm = (lambda c: EdgeLabel(c, "-")) if mode == SIGNED else (lambda c: EdgeLabel(c))

    in_color = {v: f"I:{v}" for v in range(g.n)}
    out_color = {v: f"O:{v}" for v in range(g.n)}
    unique_color = {v: f"U:{v}" for v in range(g.n)}

    tiles: list[Tile] = []
    vertex_tile: dict = {}
    for v in range(g.n):
        vertex_tile[v] = len(tiles)
        tiles.append(Tile(
            id=len(tiles),
            left=sp(in_color[v]), top=sp(unique_color[v]),
            right=sp(out_color[v]), bottom=sp(unique_color[v]),
            kind=KIND_VERTEX, ref=(v,)))
    edge_tile: dict = {}
    for (u, v) in sorted(g.edges):
        edge_tile[(u, v)] = len(tiles)
        tiles.append(Tile(
            id=len(tiles),
            left=sm(out_color[u]), top=sp("X"),
            right=sm(in_color[v]), bottom=sm("X"),
            kind=KIND_EDGE, ref=(u, v)))
    bridge_tile = len(tiles)
    tiles.append(Tile(
        id=bridge_tile,
        left=sm(out_color[g.t]), top=sp("U:B"),
        right=sm("X"), bottom=sp("U:B"),
        kind=KIND_BRIDGE, ref=()))

    meta = ReductionMeta(
        graph=g, in_color=in_color, out_color=out_color,
        unique_color=unique_color, garbage_color="X", bridge_color="U:B",
        vertex_tile=vertex_tile, edge_tile=edge_tile, bridge_tile=bridge_tile)
    return PuzzleInstance(mode=mode, h=1, w=len(tiles), tiles=tuple(tiles), meta=meta)


def build_signed_puzzle(g: Digraph) -> PuzzleInstance:
    """The Hamiltonian-path reduction: signed instance, no degree bound."""
    return build_instance(g, SIGNED)


def _check_ham_path(g: Digraph, path) -> None:
    if len(path) != g.n or len(set(path)) != g.n:
        raise VerificationError("not a Hamiltonian vertex sequence")
    if path[0] != g.s or path[-1] != g.t:
        raise VerificationError("path must run from s to t")
    edge_set = set(g.edges)
    for u, v in zip(path, path[1:]):
        if (u, v) not in edge_set:
            raise VerificationError(f"({u},{v}) is not an edge")


def lift_ham_path(instance: PuzzleInstance, path) -> Tiling:
    """Encode a Hamiltonian s->t path as a full zero-violation tiling.

    Slots 0..2|V|-2 alternate vertex/edge tiles along the path, slot 2|V|-1
    holds the bridge, and unused edge tiles chain on garbage-colored edges.
    """
    meta = instance.meta
    if meta is None:
        raise VerificationError("instance lacks reduction metadata")
    g = meta.graph
    _check_ham_path(g, path)

    slots: list = []
    for j, v in enumerate(path):
        slots.append((meta.vertex_tile[v], 0))
        if j + 1 < len(path):
            slots.append((meta.edge_tile[(v, path[j + 1])], 0))
    slots.append((meta.bridge_tile, 0))
    used = set(zip(path, path[1:]))
    grot = GARBAGE_ROTATION[instance.mode]
    for e in sorted(set(g.edges) - used, key=lambda e: meta.edge_tile[e]):
        slots.append((meta.edge_tile[e], grot))
    return Tiling(tuple(slots))


def extract_ham_path(instance: PuzzleInstance, tiling: Tiling) -> list[int]:
    """Recover the Hamiltonian path from a full zero-violation tiling.

    The bridge's unmatchable color forces it to sit with U:B facing
    top/bottom; if its O:t side faces right the whole grid is rotated 180
    degrees first.  The alternating vertex/edge prefix then reads off the
    path left to right.
    """
    from .puzzle import verify_tiling

    meta = instance.meta
    if meta is None:
        raise VerificationError("instance lacks reduction metadata")
    g = meta.graph
    report = verify_tiling(instance, tiling, strict=True)
    if report.placed != instance.n:
        raise VerificationError("tiling is not full")

    bridge_pos = rot = None
    for i, s in enumerate(tiling.slots):
        if s is not None and s[0] == meta.bridge_tile:
            bridge_pos, rot = i, s[1]
    if bridge_pos is None:
        raise VerificationError("bridge tile not placed")
    if rot in (1, 3) and instance.n > 1:
        raise VerificationError("bridge tile has its unmatchable color sideways")
    if rot == 2:
        flipped = tuple(
            None if s is None else (s[0], (s[1] + 2) % 4)
            for s in reversed(tiling.slots))
        return extract_ham_path(instance, Tiling(flipped))

    if bridge_pos != 2 * g.n - 1:
        raise VerificationError("bridge tile is misplaced for a path encoding")
    tile_of = {t.id: t for t in instance.tiles}
    by_vertex_tile = {tid: v for v, tid in meta.vertex_tile.items()}
    path: list[int] = []
    pending_edge = None
    for off in range(bridge_pos):
        tid, r = tiling.slots[off]
        t = tile_of[tid]
        if off % 2 == 0:
            if t.kind != "vertex" or r != 0:
                raise VerificationError("expected a forward vertex tile")
            v = by_vertex_tile[tid]
            if pending_edge is not None and pending_edge[1] != v:
                raise VerificationError("edge tile does not enter its right neighbor")
            path.append(v)
        else:
            if t.kind != "edge" or r != 0:
                raise VerificationError("expected a forward edge tile")
            if t.ref[0] != path[-1]:
                raise VerificationError("edge tile does not leave its left neighbor")
            pending_edge = t.ref
    _check_ham_path(g, path)
    return path

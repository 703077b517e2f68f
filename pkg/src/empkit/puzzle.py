"""Verification, exact optimization at small n, and the approximation
algorithms for 1xn edge-matching puzzles.

Exact solving uses a bitmask DP over (used-tile subset, rightmost nonblank
tile + rotation, blank flag); 1xn adjacency is a chain, so that state is
sufficient.  Independent brute-force oracles (plain DFS over slots /
permutations) are kept alongside for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .core import (
    SIGNED,
    UNSIGNED,
    EdgeLabel,
    PuzzleInstance,
    Tiling,
    compatible,
    rotated_labels,
)
from .errors import SizeLimitError, VerificationError

EXACT_PLACEMENT_LIMIT = 20
EXACT_MATCHED_LIMIT = 12


@dataclass(frozen=True)
class VerifyReport:
    placed: int
    matched: int
    # (left slot index, right slot index, left-facing label, right-facing label)
    violations: tuple[tuple[int, int, EdgeLabel, EdgeLabel], ...]

    @property
    def adjacent_pairs(self) -> int:
        return self.matched + len(self.violations)


@dataclass(frozen=True)
class CompatibilityGraph:
    """One node per tile; an edge whenever any pair of edge labels of the two
    tiles is compatible under the instance mode (rotation can then align
    them on a shared border)."""

    tile_ids: tuple[int, ...]
    edges: frozenset[tuple[int, int]]


def _socket(lab: EdgeLabel, mode: str):
    """Key such that right-label L mates left-label M iff
    _socket(L) == _key(M)."""
    if mode == UNSIGNED:
        return lab.color
    return (lab.color, "+" if lab.sign == "-" else "-")


def _key(lab: EdgeLabel, mode: str):
    if mode == UNSIGNED:
        return lab.color
    return (lab.color, lab.sign)


def verify_tiling(instance: PuzzleInstance, tiling: Tiling, strict: bool = False) -> VerifyReport:
    """Count placed tiles and matched/violated adjacencies on an h x w board.

    Unknown or duplicated tile ids raise VerificationError (duplicates are
    already rejected by the Tiling constructor).  With strict=True a report
    containing any violation also raises.
    """
    h, w = instance.h, instance.w
    if len(tiling.slots) != h * w:
        raise VerificationError(
            f"tiling has {len(tiling.slots)} slots, board has {h * w}")
    by_id = {t.id: t for t in instance.tiles}
    effective: list = [None] * (h * w)
    placed = 0
    for i, s in enumerate(tiling.slots):
        if s is None:
            continue
        tid, r = s
        if tid not in by_id:
            raise VerificationError(f"unknown tile id {tid}")
        effective[i] = rotated_labels(by_id[tid], r)
        placed += 1

    matched = 0
    violations: list[tuple[int, int, EdgeLabel, EdgeLabel]] = []
    for row in range(h):
        for col in range(w):
            i = row * w + col
            if effective[i] is None:
                continue
            if col + 1 < w and effective[i + 1] is not None:
                a, b = effective[i][2], effective[i + 1][0]  # right vs left
                if compatible(a, b, instance.mode):
                    matched += 1
                else:
                    violations.append((i, i + 1, a, b))
            if row + 1 < h and effective[i + w] is not None:
                a, b = effective[i][3], effective[i + w][1]  # bottom vs top
                if compatible(a, b, instance.mode):
                    matched += 1
                else:
                    violations.append((i, i + w, a, b))
    report = VerifyReport(placed=placed, matched=matched, violations=tuple(violations))
    if strict and violations:
        raise VerificationError(f"{len(violations)} mismatched adjacencies")
    return report


def _require_row(instance: PuzzleInstance):
    if instance.h != 1:
        raise VerificationError("solver supports 1xn boards only")


def _oriented_sockets(instance: PuzzleInstance):
    """Per tile index and rotation: (left key, right socket)."""
    out = []
    for t in instance.tiles:
        per_rot = []
        for r in range(4):
            labs = rotated_labels(t, r)
            per_rot.append((_key(labs[0], instance.mode), _socket(labs[2], instance.mode)))
        out.append(per_rot)
    return out


def solve_exact_max_placement(instance: PuzzleInstance, limit: int = EXACT_PLACEMENT_LIMIT):
    """Optimal zero-violation partial tiling of a 1xn board.

    Returns (placed count, Tiling).  Branch-and-bound DFS over slots: tiles
    in id/rotation order first and a blank last, pruned by the exact bound
    placed + slots-left <= best and a visited-state memo; the placed count
    equals the number of used tiles, so ties resolve to the first-found
    (lowest tile id, lowest rotation) witness.
    """
    _require_row(instance)
    n = instance.n
    if n > limit:
        raise SizeLimitError(f"exact solver limited to {limit} tiles")
    socks = _oriented_sockets(instance)
    order = sorted(range(n), key=lambda i: instance.tiles[i].id)
    # distinct (left key, right socket) orientations per tile, lowest
    # rotation representative first
    moves: list[list[tuple]] = []
    for i in range(n):
        seen = {}
        for r in range(4):
            seen.setdefault(socks[i][r], r)
        moves.append(sorted(((r, lk, rs) for (lk, rs), r in seen.items())))
    by_left: dict = {}
    for i in order:
        for r, lk, rs in moves[i]:
            by_left.setdefault(lk, []).append((i, r, rs))

    best = [-1, None]
    slots: list = []
    visited: set = set()

    def dfs(idx: int, mask: int, sock, blanks: int):
        placed = idx - blanks
        if placed > best[0]:
            best[0] = placed
            best[1] = list(slots) + [None] * (n - idx)
            if best[0] == n:
                return True
        if idx == n or placed + (n - idx) <= best[0]:
            return False
        key = (mask, sock, blanks)
        if key in visited:
            return False
        visited.add(key)
        if sock is None:
            candidates = [(i, r, rs) for i in order for r, lk, rs in moves[i]]
        else:
            candidates = by_left.get(sock, [])
        for i, r, rs in candidates:
            if mask >> i & 1:
                continue
            slots.append((instance.tiles[i].id, r))
            if dfs(idx + 1, mask | (1 << i), rs, blanks):
                return True
            slots.pop()
        slots.append(None)
        if dfs(idx + 1, mask, None, blanks + 1):
            return True
        slots.pop()
        return False

    dfs(0, 0, None, 0)
    return best[0], Tiling(tuple(best[1]))


def brute_force_max_placement(instance: PuzzleInstance):
    """Independent oracle: DFS over slots trying every unused tile and
    rotation (and blanks), with only a sound placed-count bound prune."""
    _require_row(instance)
    n = instance.n
    socks = _oriented_sockets(instance)
    order = sorted(range(n), key=lambda i: instance.tiles[i].id)
    best = [0, [None] * n]
    slots: list = []

    def dfs(idx: int, mask: int, last, placed: int):
        if placed + (n - idx) <= best[0]:
            return
        if idx == n:
            if placed > best[0]:
                best[0] = placed
                best[1] = list(slots)
            return
        for i in order:
            if mask >> i & 1:
                continue
            for r in range(4):
                if last is not None:
                    li, lr = last
                    if socks[li][lr][1] != socks[i][r][0]:
                        continue
                slots.append((instance.tiles[i].id, r))
                dfs(idx + 1, mask | (1 << i), (i, r), placed + 1)
                slots.pop()
        slots.append(None)
        dfs(idx + 1, mask, None, placed)
        slots.pop()

    dfs(0, 0, None, 0)
    return best[0], Tiling(tuple(best[1]))


def solve_exact_max_matched(instance: PuzzleInstance, limit: int = EXACT_MATCHED_LIMIT):
    """Full tiling (no blanks) maximizing matched adjacent edges.

    Returns (matched count, Tiling).  n = 1 trivially scores 0.
    """
    _require_row(instance)
    n = instance.n
    if n > limit:
        raise SizeLimitError(f"exact matched solver limited to {limit} tiles")
    socks = _oriented_sockets(instance)
    order = sorted(range(n), key=lambda i: instance.tiles[i].id)

    # level dp: state (mask, (i, r)) -> best matched; parents per level
    levels = []
    cur: dict = {}
    parents: dict = {}
    for i in order:
        for r in range(4):
            st = (1 << i, (i, r))
            if st not in cur:
                cur[st] = 0
                parents[st] = (None, (i, r))
    levels.append((cur, parents))
    for _ in range(n - 1):
        nxt: dict = {}
        par: dict = {}
        for (mask, last), val in cur.items():
            li, lr = last
            right = socks[li][lr][1]
            for i in order:
                if mask >> i & 1:
                    continue
                for r in range(4):
                    gain = 1 if socks[i][r][0] == right else 0
                    st = (mask | (1 << i), (i, r))
                    v = val + gain
                    if v > nxt.get(st, -1):
                        nxt[st] = v
                        par[st] = ((mask, last), (i, r))
        cur = nxt
        levels.append((cur, par))

    full = (1 << n) - 1
    best_state, best_val = None, -1
    for st, v in cur.items():
        if st[0] == full and v > best_val:
            best_state, best_val = st, v
    slots = []
    st = best_state
    for lvl in range(n - 1, -1, -1):
        prev, move = levels[lvl][1][st]
        i, r = move
        slots.append((instance.tiles[i].id, r))
        st = prev
    slots.reverse()
    return best_val, Tiling(tuple(slots))


def brute_force_max_matched(instance: PuzzleInstance):
    """Oracle for small n: all permutations times rotations, pruned only by
    the sound bound that each remaining slot adds at most one match."""
    _require_row(instance)
    n = instance.n
    socks = _oriented_sockets(instance)
    best = [-1, None]
    slots: list = []

    def dfs(mask: int, last, score: int):
        remaining = n - len(slots)
        if remaining == 0:
            if score > best[0]:
                best[0] = score
                best[1] = list(slots)
            return
        if score + remaining <= best[0]:
            return
        for i in range(n):
            if mask >> i & 1:
                continue
            for r in range(4):
                gain = 0
                if last is not None:
                    li, lr = last
                    gain = 1 if socks[li][lr][1] == socks[i][r][0] else 0
                slots.append((instance.tiles[i].id, r))
                dfs(mask | (1 << i), (i, r), score + gain)
                slots.pop()

    dfs(0, None, 0)
    return best[0], Tiling(tuple(best[1]))


def approx_alternate(instance: PuzzleInstance) -> Tiling:
    """The half-approximation: alternate a tile and a blank.

    Places ceil(n/2) tiles (even slot indices) with zero violations.
    """
    _require_row(instance)
    n = instance.n
    order = sorted(instance.tiles, key=lambda t: t.id)
    slots: list = [None] * n
    k = 0
    for i in range(0, n, 2):
        slots[i] = (order[k].id, 0)
        k += 1
    return Tiling(tuple(slots))


def build_compatibility_graph(instance: PuzzleInstance) -> CompatibilityGraph:
    """Node per tile; edge iff some pair of edge labels is compatible."""
    mode = instance.mode
    tiles = sorted(instance.tiles, key=lambda t: t.id)
    edges = set()
    for i in range(len(tiles)):
        for j in range(i + 1, len(tiles)):
            a, b = tiles[i], tiles[j]
            if any(compatible(x, y, mode) for x in a.labels for y in b.labels):
                edges.add((a.id, b.id))
    return CompatibilityGraph(
        tile_ids=tuple(t.id for t in tiles), edges=frozenset(edges))


def max_cardinality_matching(g: CompatibilityGraph) -> tuple[tuple[int, int], ...]:
    """Exact maximum-cardinality matching (blossom, via networkx)."""
    G = nx.Graph()
    G.add_nodes_from(g.tile_ids)
    G.add_edges_from(sorted(g.edges))
    m = nx.max_weight_matching(G, maxcardinality=True)
    pairs = sorted(tuple(sorted(p)) for p in m)
    return tuple(pairs)


def brute_force_matching(g: CompatibilityGraph) -> int:
    """Exhaustive maximum matching size, for validating the blossom result."""
    edges = sorted(g.edges)

    def rec(idx: int, used: frozenset) -> int:
        if idx == len(edges):
            return 0
        best = rec(idx + 1, used)
        a, b = edges[idx]
        if a not in used and b not in used:
            best = max(best, 1 + rec(idx + 1, used | {a, b}))
        return best

    return rec(0, frozenset())


def _pair_orientation(instance: PuzzleInstance, aid: int, bid: int):
    """Rotations placing a directly left of b with a compatible shared edge.

    Scans a's label positions then b's and returns the first compatible
    combination, which makes the layout deterministic.
    """
    a = instance.tile_by_id(aid)
    b = instance.tile_by_id(bid)
    for ia in range(4):
        for ib in range(4):
            if compatible(a.labels[ia], b.labels[ib], instance.mode):
                ra = (2 - ia) % 4  # put a's label ia on its right edge
                rb = (4 - ib) % 4  # put b's label ib on its left edge
                return ra, rb
    raise VerificationError(f"tiles {aid},{bid} are not compatible")


def approx_matching_two_thirds(instance: PuzzleInstance) -> Tiling:
    """The 2/3-approximation: maximum matching, then matched pairs (and then
    singletons) interspersed with single blanks; 3 * placed >= 2 * OPT."""
    _require_row(instance)
    n = instance.n
    pairs = max_cardinality_matching(build_compatibility_graph(instance))
    matched_ids = {x for p in pairs for x in p}
    singles = [t.id for t in sorted(instance.tiles, key=lambda t: t.id)
               if t.id not in matched_ids]

    slots: list = [None] * n
    cursor = 0
    for aid, bid in pairs:
        if cursor + 2 <= n:
            ra, rb = _pair_orientation(instance, aid, bid)
            slots[cursor] = (aid, ra)
            slots[cursor + 1] = (bid, rb)
            cursor += 3  # skip separator blank
        elif cursor < n:
            slots[cursor] = (aid, 0)
            cursor += 2
    for sid in singles:
        if cursor >= n:
            break
        slots[cursor] = (sid, 0)
        cursor += 2
    return Tiling(tuple(slots))


def approx_matched_half(instance: PuzzleInstance) -> Tiling:
    """Half-approximation of Max-Matched: a full tiling with every matched
    pair adjacent and oriented to match; 2 * matched >= OPT_matched."""
    _require_row(instance)
    pairs = max_cardinality_matching(build_compatibility_graph(instance))
    matched_ids = {x for p in pairs for x in p}
    singles = [t.id for t in sorted(instance.tiles, key=lambda t: t.id)
               if t.id not in matched_ids]
    slots: list = []
    for aid, bid in pairs:
        ra, rb = _pair_orientation(instance, aid, bid)
        slots.append((aid, ra))
        slots.append((bid, rb))
    for sid in singles:
        slots.append((sid, 0))
    return Tiling(tuple(slots))


def solve_no_rotation(instance: PuzzleInstance):
    """Full zero-violation tiling with all rotations fixed to 0, or None.

    With rotations forbidden each tile is a directed edge from its left
    color to its right color (top/bottom are irrelevant on a 1xn board), and
    a solution is exactly an Eulerian path of that multigraph.
    """
    _require_row(instance)
    n = instance.n
    mode = instance.mode
    # tail/head per tile; tails live in "key" space so head(t) == tail(u)
    # iff t may sit directly left of u
    edges = []
    for t in sorted(instance.tiles, key=lambda t: t.id):
        tail = _key(t.left, mode)
        head = _socket(t.right, mode)
        edges.append((t.id, tail, head))

    out_deg: dict = {}
    in_deg: dict = {}
    nodes = set()
    for _, tail, head in edges:
        out_deg[tail] = out_deg.get(tail, 0) + 1
        in_deg[head] = in_deg.get(head, 0) + 1
        nodes.add(tail)
        nodes.add(head)

    start_candidates = []
    end_candidates = []
    for v in sorted(nodes, key=str):
        d = out_deg.get(v, 0) - in_deg.get(v, 0)
        if d == 1:
            start_candidates.append(v)
        elif d == -1:
            end_candidates.append(v)
        elif d != 0:
            return None
    if len(start_candidates) > 1 or len(end_candidates) > 1:
        return None
    if bool(start_candidates) != bool(end_candidates):
        return None

    adj: dict = {}
    for tid, tail, head in edges:
        adj.setdefault(tail, []).append((tid, head))
    for lst in adj.values():
        lst.sort()
    pos = {v: 0 for v in adj}

    if start_candidates:
        start = start_candidates[0]
    else:
        start = min(adj.keys(), key=str)

    # iterative Hierholzer, collecting tiles in traversal order
    stack: list[tuple[object, int | None]] = [(start, None)]
    route: list[int] = []
    while stack:
        node, in_tile = stack[-1]
        lst = adj.get(node, [])
        if pos.get(node, 0) < len(lst):
            tid, nxt = lst[pos[node]]
            pos[node] += 1
            stack.append((nxt, tid))
        else:
            stack.pop()
            if in_tile is not None:
                route.append(in_tile)
    route.reverse()
    if len(route) != n:
        return None  # disconnected edge set: no Eulerian path
    return Tiling(tuple((tid, 0) for tid in route))

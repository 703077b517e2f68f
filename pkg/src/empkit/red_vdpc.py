"""Gap-preserving reduction from Max Vertex-Disjoint Path Cover(2) to 1xn
Max-Placement puzzles (unsigned and signed): the path-cover lift, the
three-step extraction algorithm and the Max-Matched conversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Digraph, PathCover, PuzzleInstance, Tiling
from .errors import DegreeBoundError, VerificationError
from .graph import check_degree_bound, verify_path_cover
from .red_ham import GARBAGE_ROTATION, build_instance


def build_puzzle(g: Digraph, mode: str) -> PuzzleInstance:
    """Tiles for a degree-<=2 digraph; unsigned drops the signs, signed
    coincides with the Hamiltonian-path construction.

    Without the degree bound two unsigned edge tiles sharing a start or end
    vertex could sit together on a vertex color, breaking extraction.
    """
    if not check_degree_bound(g, 2):
        raise DegreeBoundError(
            "reduction requires in- and out-degrees at most 2")
    return build_instance(g, mode)


def _path_slots(meta, path) -> list:
    out = []
    for j, v in enumerate(path):
        out.append((meta.vertex_tile[v], 0))
        if j + 1 < len(path):
            out.append((meta.edge_tile[(v, path[j + 1])], 0))
    return out


def lift_path_cover(instance: PuzzleInstance, cover: PathCover) -> Tiling:
    """Lay a path cover onto the board with zero violations.

    Paths are placed alternately vertex/edge with one blank between paths;
    the path ending at t goes last, immediately followed by the bridge and
    then the garbage chain of leftover edge tiles.  A cover with k paths
    needs k-1 separator blanks, so leftover edge tiles are dropped first
    (highest tile ids), then singleton vertex paths; the result places at
    least n - 2(k-1) tiles, and exactly n for a Hamiltonian cover.
    """
    meta = instance.meta
    if meta is None:
        raise VerificationError("instance lacks reduction metadata")
    g = meta.graph
    verify_path_cover(g, cover)

    t_path = None
    others: list[tuple[int, ...]] = []
    for p in cover.paths:
        if g.t in p:
            if p[-1] != g.t:
                raise VerificationError("sink t cannot have a successor in a cover")
            t_path = p
        else:
            others.append(p)
    assert t_path is not None
    ordered = others + [t_path]

    leftovers = sorted(
        (meta.edge_tile[e] for e in set(g.edges) - cover.edges()), reverse=True)
    k = len(ordered)
    overflow = k - 1  # board capacity shortfall: n + (k-1) slots wanted
    dropped_edges = min(overflow, len(leftovers))
    leftovers = leftovers[dropped_edges:]
    overflow -= dropped_edges
    while overflow > 0:
        victim = next(
            (p for p in ordered if len(p) == 1 and p is not t_path), None)
        if victim is None:
            raise VerificationError(
                "cover cannot fit the board (graph violates the unique "
                "source/sink shape)")
        ordered.remove(victim)
        overflow -= 2

    slots: list = []
    for i, p in enumerate(ordered):
        slots.extend(_path_slots(meta, p))
        if i + 1 < len(ordered):
            slots.append(None)
    slots.append((meta.bridge_tile, 0))
    grot = GARBAGE_ROTATION[instance.mode]
    slots.extend((tid, grot) for tid in sorted(leftovers))
    if len(slots) > instance.n:
        raise VerificationError("internal: lift exceeded the board")
    slots.extend([None] * (instance.n - len(slots)))
    return Tiling(tuple(slots))


@dataclass(frozen=True)
class ExtractReport:
    """Per-run diagnostics of the three-step extraction."""

    cover: PathCover
    blanks_initial: int
    blanks_after_step1: int
    step2_removed: int
    blanks_after_step2: int
    unplaced_vertices: int
    garbage_runs: int


def extract_path_cover(instance: PuzzleInstance, tiling: Tiling) -> ExtractReport:
    """Turn a zero-violation partial tiling back into a path cover.

    Step 1 removes the bridge tile; Step 2 removes (simultaneously) every
    edge tile showing vertex colors left/right that touches a blank, a
    border, or another edge tile; Step 3 reads the remaining alternating
    runs as paths and discards garbage runs.  Unplaced vertices become
    singletons.  Tilings with violations are rejected: the algorithm
    consumes feasible Max-Placement solutions only.
    """
    from .puzzle import verify_tiling

    meta = instance.meta
    if meta is None:
        raise VerificationError("instance lacks reduction metadata")
    g = meta.graph
    verify_tiling(instance, tiling, strict=True)

    tile_of = {t.id: t for t in instance.tiles}
    n = instance.n
    slots = list(tiling.slots)
    blanks_initial = sum(1 for s in slots if s is None)

    # Step 1: the bridge tile never participates in a path encoding.
    for i, s in enumerate(slots):
        if s is not None and s[0] == meta.bridge_tile:
            slots[i] = None
    blanks_after_step1 = sum(1 for s in slots if s is None)

    # Step 2: one simultaneous pass over the board as left by Step 1.
    def is_edge(slot) -> bool:
        return slot is not None and tile_of[slot[0]].kind == "edge"

    def vertex_oriented(slot) -> bool:
        return is_edge(slot) and slot[1] in (0, 2)

    doomed = []
    for i, s in enumerate(slots):
        if not vertex_oriented(s):
            continue
        left = slots[i - 1] if i > 0 else None
        right = slots[i + 1] if i + 1 < n else None
        if i == 0 or left is None or is_edge(left):
            doomed.append(i)
        elif i + 1 == n or right is None or is_edge(right):
            doomed.append(i)
    for i in doomed:
        slots[i] = None
    step2_removed = len(doomed)
    blanks_after_step2 = sum(1 for s in slots if s is None)

    # Counting bound from the removal lemma, in per-instance form.
    assert step2_removed <= 14 * blanks_initial + 16, \
        "step-2 removals exceeded the counting bound"

    # Step 3: classify maximal nonblank runs.
    by_vertex_tile = {tid: v for v, tid in meta.vertex_tile.items()}
    paths: list[tuple[int, ...]] = []
    garbage_runs = 0
    covered: set[int] = set()
    i = 0
    while i < n:
        if slots[i] is None:
            i += 1
            continue
        j = i
        while j < n and slots[j] is not None:
            j += 1
        run = slots[i:j]
        kinds = [tile_of[s[0]].kind for s in run]
        if "vertex" not in kinds:
            garbage_runs += 1  # type (2): edge tiles chained on garbage
            i = j
            continue
        # type (1): must alternate vertex/edge, vertex tiles at both ends
        if any(k not in ("vertex", "edge") for k in kinds):
            raise VerificationError("internal: bridge tile survived step 1")
        if kinds[0] != "vertex" or kinds[-1] != "vertex" or \
                any(kinds[x] == kinds[x + 1] for x in range(len(kinds) - 1)):
            raise VerificationError(
                "internal: run does not alternate vertex/edge tiles")
        verts = [by_vertex_tile[s[0]] for s in run if tile_of[s[0]].kind == "vertex"]
        if len(run) > 1:
            rots = {s[1] for s in run if tile_of[s[0]].kind == "vertex"}
            if not (rots <= {0} or rots <= {2}):
                raise VerificationError(
                    "internal: mixed vertex-tile orientations in one run")
            if rots == {2}:
                verts.reverse()
        paths.append(tuple(verts))
        covered.update(verts)
        i = j

    unplaced = [v for v in range(g.n) if v not in covered]
    paths.extend((v,) for v in unplaced)
    cover = PathCover(tuple(paths))
    verify_path_cover(g, cover)
    return ExtractReport(
        cover=cover,
        blanks_initial=blanks_initial,
        blanks_after_step1=blanks_after_step1,
        step2_removed=step2_removed,
        blanks_after_step2=blanks_after_step2,
        unplaced_vertices=len(unplaced),
        garbage_runs=garbage_runs,
    )


def matched_to_placement(instance: PuzzleInstance, full_tiling: Tiling) -> Tiling:
    """Max-Matched to Max-Placement conversion: drop every tile whose right
    edge is mismatched.  Each mismatch frees at most one slot, so the result
    places at least n minus the input's mismatch count, with zero violations.
    """
    from .core import compatible, rotated_labels
    from .puzzle import verify_tiling

    report = verify_tiling(instance, full_tiling)  # violations allowed here
    if report.placed != instance.n:
        raise VerificationError("conversion requires a full tiling")
    tile_of = {t.id: t for t in instance.tiles}
    slots = list(full_tiling.slots)
    doomed = []
    for i in range(instance.n - 1):
        tid, r = slots[i]
        tid2, r2 = slots[i + 1]
        a = rotated_labels(tile_of[tid], r)[2]
        b = rotated_labels(tile_of[tid2], r2)[0]
        if not compatible(a, b, instance.mode):
            doomed.append(i)
    for i in doomed:
        slots[i] = None
    return Tiling(tuple(slots))


def derive_alpha_emp(alpha_mpc: Fraction) -> Fraction:
    """The gap constant carried through this reduction: alpha_mpc / 48
    exactly (callers needing the strict hypothesis pick anything smaller)."""
    alpha_mpc = Fraction(alpha_mpc)
    if not 0 <= alpha_mpc <= 1:
        raise ValueError("alpha_mpc must lie in [0, 1]")
    return alpha_mpc / 48

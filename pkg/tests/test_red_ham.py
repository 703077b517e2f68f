from __future__ import annotations

from itertools import combinations

import pytest

from conftest import ham_path_by_permutations
from empkit.core import SIGNED, Digraph, Tiling
from empkit.errors import VerificationError
from empkit.graph import find_hamiltonian_path, normalize_source_sink
from empkit.puzzle import solve_exact_max_placement, verify_tiling
from empkit.red_ham import build_signed_puzzle, extract_ham_path, lift_ham_path


def test_build_g5_tile_census(g5):
    inst = build_signed_puzzle(g5)
    assert inst.n == 12
    kinds = [t.kind for t in inst.tiles]
    assert kinds.count("vertex") == 5
    assert kinds.count("edge") == 6
    assert kinds.count("bridge") == 1
    assert inst.mode == SIGNED


def test_build_single_vertex():
    g = Digraph(n=1, edges=(), s=0, t=0)
    inst = build_signed_puzzle(g)
    assert inst.n == 2
    assert [t.kind for t in inst.tiles] == ["vertex", "bridge"]


def test_edge_tile_labels():
    g = Digraph(n=2, edges=((0, 1),), s=0, t=1)
    inst = build_signed_puzzle(g)
    e = next(t for t in inst.tiles if t.kind == "edge")
    assert str(e.left) == "-O:0"
    assert str(e.top) == "+X"
    assert str(e.right) == "-I:1"
    assert str(e.bottom) == "-X"


def test_bridge_tile_labels(g5):
    inst = build_signed_puzzle(g5)
    b = next(t for t in inst.tiles if t.kind == "bridge")
    assert str(b.left) == "-O:4"      # t = vertex 4
    assert str(b.top) == str(b.bottom) == "+U:B"
    assert str(b.right) == "-X"


def test_lift_matches_figure(g5):
    inst = build_signed_puzzle(g5)
    path = [0, 3, 2, 1, 4]
    tiling = lift_ham_path(inst, path)
    rep = verify_tiling(inst, tiling)
    assert rep.placed == 12 and rep.matched == 11 and not rep.violations
    # bridge in slot 2|V|-1, the two unused edge tiles trail it
    meta = inst.meta
    assert tiling.slots[9][0] == meta.bridge_tile
    trailing = {tiling.slots[10][0], tiling.slots[11][0]}
    assert trailing == {meta.edge_tile[(0, 1)], meta.edge_tile[(2, 4)]}


def test_lift_single_vertex():
    g = Digraph(n=1, edges=(), s=0, t=0)
    inst = build_signed_puzzle(g)
    tiling = lift_ham_path(inst, [0])
    assert tiling.placed == 2
    assert not verify_tiling(inst, tiling).violations


def test_lift_rejects_bad_path(g5):
    inst = build_signed_puzzle(g5)
    with pytest.raises(VerificationError):
        lift_ham_path(inst, [0, 1, 2, 3, 4])  # not a path of g5
    with pytest.raises(VerificationError):
        lift_ham_path(inst, [0, 3, 2, 1])  # not Hamiltonian


def test_extract_roundtrip(g5):
    inst = build_signed_puzzle(g5)
    path = [0, 3, 2, 1, 4]
    assert extract_ham_path(inst, lift_ham_path(inst, path)) == path


def test_extract_after_half_turn(g5):
    inst = build_signed_puzzle(g5)
    path = [0, 3, 2, 1, 4]
    tiling = lift_ham_path(inst, path)
    flipped = Tiling(tuple(
        (s[0], (s[1] + 2) % 4) if s else None for s in reversed(tiling.slots)))
    assert not verify_tiling(inst, flipped).violations
    assert extract_ham_path(inst, flipped) == path


def test_bridge_unmatchable_color_faces_top_bottom(g5):
    """In any full zero-violation tiling the bridge sits at rotation 0/2."""
    inst = build_signed_puzzle(g5)
    tiling = lift_ham_path(inst, [0, 3, 2, 1, 4])
    for slot in tiling.slots:
        if slot and slot[0] == inst.meta.bridge_tile:
            assert slot[1] in (0, 2)


def _all_full_tilings(inst):
    """Exhaustively enumerate full zero-violation tilings (tiny n only)."""
    from empkit.core import compatible, rotated_labels

    n = inst.n
    tiles = sorted(inst.tiles, key=lambda t: t.id)
    out = []
    slots = []

    def fits(prev, tid, rot):
        if prev is None:
            return True
        a = rotated_labels(inst.tile_by_id(prev[0]), prev[1])[2]
        b = rotated_labels(inst.tile_by_id(tid), rot)[0]
        return compatible(a, b, inst.mode)

    def rec(used):
        if len(slots) == n:
            out.append(Tiling(tuple(slots)))
            return
        prev = slots[-1] if slots else None
        for t in tiles:
            if t.id in used:
                continue
            for r in range(4):
                if fits(prev, t.id, r):
                    slots.append((t.id, r))
                    rec(used | {t.id})
                    slots.pop()

    rec(frozenset())
    return out


def test_all_full_tilings_of_a_3_vertex_graph_encode_ham_paths():
    g = Digraph(n=3, edges=((0, 1), (1, 2)), s=0, t=2)
    inst = build_signed_puzzle(g)  # n = 6
    tilings = _all_full_tilings(inst)
    assert tilings, "the Hamiltonian graph must admit full tilings"
    for tiling in tilings:
        path = extract_ham_path(inst, tiling)
        assert path in ([0, 1, 2],)


def test_section4_lemma_on_three_vertex_graphs():
    """Ham s->t path exists iff every tile can be placed (|V| = 3 wrapped)."""
    pairs = [(u, v) for u in range(3) for v in range(3) if u != v]
    for k in range(len(pairs) + 1):
        for es in combinations(pairs, k):
            g = normalize_source_sink(Digraph(3, tuple(es), 0, 2), 0, 2)
            inst = build_signed_puzzle(g)
            value, sol = solve_exact_max_placement(inst)
            assert not verify_tiling(inst, sol).violations
            ham = ham_path_by_permutations(g)
            assert (value == inst.n) == (ham is not None)
            assert (find_hamiltonian_path(g) is not None) == (ham is not None)

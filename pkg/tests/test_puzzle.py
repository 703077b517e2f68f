from __future__ import annotations

import random

import pytest

from empkit.core import SIGNED, UNSIGNED, PuzzleInstance, Tiling, tile
from empkit.errors import SizeLimitError, VerificationError
from empkit.generators import random_tiles
from empkit.puzzle import (
    approx_alternate,
    approx_matched_half,
    approx_matching_two_thirds,
    brute_force_matching,
    brute_force_max_matched,
    brute_force_max_placement,
    build_compatibility_graph,
    max_cardinality_matching,
    solve_exact_max_matched,
    solve_exact_max_placement,
    solve_no_rotation,
    verify_tiling,
)


def inst_of(*tiles_, mode=UNSIGNED, h=1):
    w = len(tiles_) // h
    return PuzzleInstance(mode=mode, h=h, w=w, tiles=tuple(tiles_))


def chain3():
    return inst_of(tile(0, "A", "u1", "B", "u1"),
                   tile(1, "B", "u2", "C", "u2"),
                   tile(2, "C", "u3", "D", "u3"))


def incompatible3():
    return inst_of(tile(0, "a", "b", "c", "d"),
                   tile(1, "e", "f", "g", "h"),
                   tile(2, "i", "j", "k", "l"))


# ----------------------------------------------------------------- verify

def test_verify_single_tile():
    inst = inst_of(tile(0, "a", "b", "c", "d"))
    rep = verify_tiling(inst, Tiling(((0, 0),)))
    assert (rep.placed, rep.matched, rep.violations) == (1, 0, ())


def test_verify_chain():
    rep = verify_tiling(chain3(), Tiling(((0, 0), (1, 0), (2, 0))))
    assert rep.placed == 3 and rep.matched == 2 and not rep.violations


def test_verify_counts_adjacent_pairs():
    inst = inst_of(tile(0, "a", "b", "c", "d"), tile(1, "x", "y", "z", "w"))
    rep = verify_tiling(inst, Tiling(((0, 0), (1, 0))))
    assert rep.matched + len(rep.violations) == 1
    assert rep.violations


def test_verify_vertical_adjacency():
    # a 2x1 board: bottom edge of the upper tile must match top of lower
    inst = inst_of(tile(0, "a", "b", "c", "M"), tile(1, "e", "M", "g", "h"), h=2)
    rep = verify_tiling(inst, Tiling(((0, 0), (1, 0))))
    assert rep.matched == 1 and not rep.violations


def test_verify_unknown_tile():
    with pytest.raises(VerificationError):
        verify_tiling(chain3(), Tiling(((9, 0), (1, 0), (2, 0))))


def test_verify_strict_raises():
    inst = inst_of(tile(0, "a", "b", "c", "d"), tile(1, "x", "y", "z", "w"))
    with pytest.raises(VerificationError):
        verify_tiling(inst, Tiling(((0, 0), (1, 0))), strict=True)


def test_verify_wrong_slot_count():
    with pytest.raises(VerificationError):
        verify_tiling(chain3(), Tiling(((0, 0),)))


# ------------------------------------------------------------ exact solvers

def test_exact_placement_two_sharing():
    inst = inst_of(tile(0, "A", "u1", "B", "u1"), tile(1, "B", "u2", "C", "u2"))
    value, sol = solve_exact_max_placement(inst)
    assert value == 2
    assert not verify_tiling(inst, sol).violations


def test_exact_placement_incompatible_needs_blank():
    value, sol = solve_exact_max_placement(incompatible3())
    assert value == 2
    assert sol.slots[1] is None
    assert not verify_tiling(incompatible3(), sol).violations


def test_exact_placement_limit():
    with pytest.raises(SizeLimitError):
        solve_exact_max_placement(random_tiles(6, 0), limit=5)


def test_exact_placement_matches_oracle():
    for seed in range(25):
        inst = random_tiles(7, seed, colors=5 + seed % 8)
        v, sol = solve_exact_max_placement(inst)
        bv, _ = brute_force_max_placement(inst)
        assert v == bv
        assert verify_tiling(inst, sol).placed == v
        assert not verify_tiling(inst, sol).violations


def test_exact_placement_matches_oracle_signed():
    for seed in range(10):
        inst = random_tiles(6, seed, mode=SIGNED, colors=4)
        v, _ = solve_exact_max_placement(inst)
        bv, _ = brute_force_max_placement(inst)
        assert v == bv


def test_exact_matched_single_tile():
    value, _ = solve_exact_max_matched(inst_of(tile(0, "a", "b", "c", "d")))
    assert value == 0


def test_exact_matched_pair():
    inst = inst_of(tile(0, "a", "u", "B", "u"), tile(1, "B", "v", "c", "v"))
    value, sol = solve_exact_max_matched(inst)
    bv, _ = brute_force_max_matched(inst)  # enumerates 2! * 4^2 layouts
    assert value == bv == 1
    assert sol.placed == 2


def test_exact_matched_reduction_instance_is_full_chain():
    """A Hamiltonian reduction instance packs all tiles with n-1 matches."""
    from empkit.core import Digraph
    from empkit.red_vdpc import build_puzzle

    g = Digraph(n=3, edges=((0, 1), (1, 2)), s=0, t=2)
    inst = build_puzzle(g, UNSIGNED)
    value, sol = solve_exact_max_matched(inst)
    assert value == inst.n - 1
    assert verify_tiling(inst, sol).matched == value


def test_exact_matched_matches_oracle():
    for seed in range(12):
        inst = random_tiles(6, seed, colors=4 + seed % 5)
        v, sol = solve_exact_max_matched(inst)
        bv, _ = brute_force_max_matched(inst)
        assert v == bv
        assert verify_tiling(inst, sol).matched == v


def test_max_matched_at_most_n_minus_1_and_full_placement_implies():
    for seed in range(12):
        inst = random_tiles(6, seed, colors=3)
        place, _ = solve_exact_max_placement(inst)
        match, _ = solve_exact_max_matched(inst)
        assert match <= inst.n - 1
        assert place <= inst.n
        if place == inst.n:
            assert match == inst.n - 1


# ----------------------------------------------------------- approximations

def test_alternate_counts():
    assert approx_alternate(random_tiles(4, 0)).placed == 2
    assert approx_alternate(random_tiles(5, 0)).placed == 3


def test_alternate_zero_violations_and_half_bound():
    for seed in range(30):
        inst = random_tiles(7 + seed % 3, seed, colors=6)
        sol = approx_alternate(inst)
        rep = verify_tiling(inst, sol)
        assert not rep.violations
        opt, _ = solve_exact_max_placement(inst)
        assert 2 * rep.placed >= opt


def test_two_thirds_all_incompatible():
    sol = approx_matching_two_thirds(incompatible3())
    assert sol.placed == 2
    assert sol.slots[1] is None


def test_two_thirds_bound_and_validity():
    for seed in range(40):
        inst = random_tiles(5 + seed % 5, seed, colors=4 + seed % 9)
        sol = approx_matching_two_thirds(inst)
        rep = verify_tiling(inst, sol)
        assert not rep.violations
        opt, _ = solve_exact_max_placement(inst)
        assert 3 * rep.placed >= 2 * opt


def test_matched_half_all_identical():
    inst = inst_of(*(tile(i, "a", "a", "a", "a") for i in range(4)))
    sol = approx_matched_half(inst)
    rep = verify_tiling(inst, sol)
    assert rep.placed == 4
    assert rep.matched >= 2


def test_matched_half_no_compatibilities():
    sol = approx_matched_half(incompatible3())
    rep = verify_tiling(incompatible3(), sol)
    assert rep.placed == 3 and rep.matched == 0


def test_matched_half_bound():
    for seed in range(30):
        inst = random_tiles(5 + seed % 4, seed, colors=3 + seed % 7)
        sol = approx_matched_half(inst)
        rep = verify_tiling(inst, sol)
        assert rep.placed == inst.n
        opt, _ = solve_exact_max_matched(inst)
        assert 2 * rep.matched >= opt


# ------------------------------------------------------------- no rotation

def test_eulerian_chain():
    inst = inst_of(tile(0, "A", "u", "B", "u"), tile(1, "B", "v", "C", "v"))
    sol = solve_no_rotation(inst)
    assert sol is not None
    assert [s[0] for s in sol.slots] == [0, 1]
    assert all(r == 0 for _, r in sol.slots)


def test_eulerian_disconnected():
    inst = inst_of(tile(0, "A", "u", "B", "u"), tile(1, "C", "v", "D", "v"))
    assert solve_no_rotation(inst) is None


def test_eulerian_single_tile():
    sol = solve_no_rotation(inst_of(tile(0, "A", "u", "B", "u")))
    assert sol is not None and sol.placed == 1


def _no_rotation_oracle(inst):
    """Permutation brute force over fixed-rotation sequences."""
    from itertools import permutations

    from empkit.core import compatible
    for perm in permutations(inst.tiles):
        ok = all(compatible(a.right, b.left, inst.mode)
                 for a, b in zip(perm, perm[1:]))
        if ok:
            return [t.id for t in perm]
    return None


def test_eulerian_agrees_with_permutations():
    for seed in range(60):
        inst = random_tiles(6, seed, colors=3 + seed % 3)
        got = solve_no_rotation(inst)
        want = _no_rotation_oracle(inst)
        assert (got is not None) == (want is not None)
        if got is not None:
            rep = verify_tiling(inst, got)
            assert rep.placed == inst.n and not rep.violations
            assert all(r == 0 for _, r in got.slots)


def test_eulerian_signed():
    inst = inst_of(tile(0, "+A", "+u", "+B", "-u"),
                   tile(1, "-B", "+v", "-C", "-v"), mode=SIGNED)
    sol = solve_no_rotation(inst)
    assert sol is not None
    assert _no_rotation_oracle(inst) is not None


# ---------------------------------------------------------------- matching

def test_compat_graph_disjoint_colors():
    g = build_compatibility_graph(incompatible3())
    assert not g.edges


def test_compat_graph_any_pair_rule():
    inst = inst_of(tile(0, "A", "p", "q", "r"), tile(1, "s", "A", "t", "u"))
    g = build_compatibility_graph(inst)
    assert (0, 1) in g.edges


def test_compat_graph_signed_needs_opposite():
    inst = inst_of(tile(0, "+A", "+p", "+q", "+r"),
                   tile(1, "+A", "+s", "+t", "+u"), mode=SIGNED)
    assert not build_compatibility_graph(inst).edges


def test_matching_empty_and_triangle():
    assert max_cardinality_matching(build_compatibility_graph(incompatible3())) == ()
    tri = inst_of(tile(0, "A", "B", "x1", "y1"),
                  tile(1, "A", "C", "x2", "y2"),
                  tile(2, "B", "C", "x3", "y3"))
    m = max_cardinality_matching(build_compatibility_graph(tri))
    assert len(m) == 1


def test_matching_matches_exhaustive_oracle():
    rng = random.Random(5)
    for trial in range(200):
        n = 10
        ids = tuple(range(n))
        edges = frozenset(
            (a, b) for a in ids for b in ids if a < b and rng.random() < 0.25)
        from empkit.puzzle import CompatibilityGraph
        g = CompatibilityGraph(tile_ids=ids, edges=edges)
        m = max_cardinality_matching(g)
        assert len(m) == brute_force_matching(g)
        used = [x for p in m for x in p]
        assert len(used) == len(set(used))
        assert all(p in edges for p in m)

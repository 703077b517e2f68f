from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest

from empkit.core import CnfFormula, PathCover
from empkit.errors import OccurrenceBoundError
from empkit.graph import check_degree_bound, find_hamiltonian_path, verify_path_cover
from empkit.red_sat import (
    CLAUSE_ROLES,
    XOR_SIZE,
    XorLine,
    build_vdpc,
    clause_route,
    derive_alpha_mpc,
    extract_assignment,
    lift_assignment,
    pad_clauses,
)
from empkit.sat import evaluate


# ------------------------------------------------------------- XOR gadget

def xor_configs():
    """All endpoint-free partial covers of an isolated XOR gadget.

    Vertices: ladder 0..7 plus stubs a1 (feeds 0), b1 (fed by 7), a2 (feeds
    7), b2 (fed by 0).  Internal vertices need in = out = 1; stubs at most
    one incident selected edge; cycles are forbidden.
    """
    line = XorLine(
        verts=tuple(range(8)),
        left_in=("a1", 0), left_out=(7, "b1"),
        right_in=("a2", 7), right_out=(0, "b2"))
    edges = line.ladder_edges() + [line.left_in, line.left_out,
                                   line.right_in, line.right_out]
    out_of = {}
    for u, v in edges:
        out_of.setdefault(u, []).append((u, v))

    configs = []
    internal_choices = [out_of[v] for v in range(8)]
    stub_choices = [out_of["a1"] + [None], out_of["a2"] + [None]]
    for combo in product(*internal_choices, *stub_choices):
        chosen = [e for e in combo if e is not None]
        indeg = {}
        for u, v in chosen:
            indeg[v] = indeg.get(v, 0) + 1
        if any(indeg.get(v, 0) != 1 for v in range(8)):
            continue
        if indeg.get("b1", 0) > 1 or indeg.get("b2", 0) > 1:
            continue
        succ = dict(chosen)
        cyclic = False
        for start in range(8):
            seen = set()
            w = start
            while w in succ and w not in seen:
                seen.add(w)
                w = succ[w]
            if w in seen:
                cyclic = True
                break
        if not cyclic:
            configs.append(frozenset(chosen))
    return line, configs


def test_xor_gadget_has_exactly_two_endpoint_free_configs():
    line, configs = xor_configs()
    left = frozenset(line.left_traversal())
    right = frozenset(line.right_traversal())
    assert set(configs) == {left, right}


# ---------------------------------------------------------- clause gadget

def test_clause_route_exists_except_all_traversed():
    # arc k = (tail, head): in/out-jump roles per pattern position
    arc_of = {"g": (2, 0), "x": (0, 1), "y": (1, 2)}  # (in-arc, out-arc)
    for pattern in product((False, True), repeat=3):
        edges = clause_route(pattern)
        assert edges  # even all-True has the spine route
        roles = set(CLAUSE_ROLES)
        used = {u for u, _ in edges} | {v for _, v in edges}
        expect = roles - {"g", "x", "y"}
        if not all(pattern):
            for r, (ain, aout) in arc_of.items():
                # a triangle vertex shows up on plain edges unless both its
                # sides ride the jumps
                if not (pattern[ain] and pattern[aout]):
                    expect.add(r)
        assert used == expect


def test_clause_gadget_blocks_only_unsatisfied():
    """End to end on one clause over three distinct variables: the lift is a
    single Hamiltonian path exactly when the assignment satisfies it."""
    f = CnfFormula(num_vars=3, clauses=((1, -2, 3),))
    g, layout, terr = build_vdpc(f)
    for bits in product((False, True), repeat=3):
        cover = lift_assignment(layout, bits)
        verify_path_cover(g, cover)
        satisfied = evaluate(f, bits) == 1
        if satisfied:
            assert len(cover.paths) == 1
            assert cover.edge_count() == g.n - 1
        else:
            assert len(cover.paths) > 1
            extra = cover.endpoints() - {g.s, g.t}
            assert extra and extra <= terr.clause[0]


# ------------------------------------------------------------------ build

def test_build_single_padded_clause_size():
    f = CnfFormula(num_vars=1, clauses=((1,),))  # pads to (x1 x1 x1)
    g, layout, _ = build_vdpc(f)
    assert g.n <= 11 * 1 + 37 * 1 + 2
    assert check_degree_bound(g, 2)
    ind, outd = g.in_degrees(), g.out_degrees()
    assert [v for v in range(g.n) if ind[v] == 0] == [g.s]
    assert [v for v in range(g.n) if outd[v] == 0] == [g.t]


def test_build_worked_formula_size(worked_formula):
    g, _, _ = build_vdpc(worked_formula)
    assert g.n <= 11 * 4 + 37 * 3 + 2
    assert check_degree_bound(g, 2)


def test_build_empty_formula_any_assignment_is_hamiltonian():
    f = CnfFormula(num_vars=3, clauses=())
    g, layout, _ = build_vdpc(f)
    for bits in product((False, True), repeat=3):
        cover = lift_assignment(layout, bits)
        assert len(cover.paths) == 1
        assert cover.edge_count() == g.n - 1


def test_build_rejects_occurrence_overflow():
    clauses = tuple((1, 1, 1) for _ in range(10))  # 30 occurrences of x1
    with pytest.raises(OccurrenceBoundError):
        build_vdpc(CnfFormula(num_vars=1, clauses=clauses))


def test_padding_counts_toward_bound():
    # 10 singleton clauses pad to 30 occurrences of x1
    clauses = tuple((1,) for _ in range(10))
    with pytest.raises(OccurrenceBoundError):
        build_vdpc(CnfFormula(num_vars=1, clauses=clauses))


def test_pad_clauses():
    f = CnfFormula(num_vars=2, clauses=((1,), (1, -2)))
    assert pad_clauses(f).clauses == ((1, 1, 1), (1, -2, -2))


def test_territories_disjoint(worked_formula):
    g, layout, terr = build_vdpc(worked_formula)
    names = sorted(terr.variable)
    for i in names:
        for j in names:
            if i < j:
                assert not (terr.variable[i] & terr.variable[j])
    for c in layout.clauses:
        own = c.proper_vertices()
        for d in layout.clauses:
            if c.index < d.index:
                assert not (own & d.proper_vertices())
    # clause territory = gadget + its variables' territories
    for c in layout.clauses:
        expect = set(c.proper_vertices())
        for lit in set(c.lits):
            expect |= terr.variable[abs(lit) - 1]
        assert terr.clause[c.index] == expect


# ----------------------------------------------------------- lift / extract

def test_lift_satisfying_roundtrip(worked_formula):
    g, layout, terr = build_vdpc(worked_formula)
    a = (True, True, True, True)
    cover = lift_assignment(layout, a)
    assert cover.edge_count() == g.n - 1
    back = extract_assignment(layout, terr, cover)
    assert evaluate(worked_formula, back) == worked_formula.num_clauses


def test_lift_contradiction_confines_endpoints():
    f = CnfFormula(num_vars=1, clauses=((1,), (-1,)))
    g, layout, terr = build_vdpc(f)
    cover = lift_assignment(layout, (True,))
    assert len(cover.paths) >= 2
    extra = cover.endpoints() - {g.s, g.t}
    assert extra <= terr.clause[1]  # clause 2 = (-x1) is falsified
    cover = lift_assignment(layout, (False,))
    extra = cover.endpoints() - {g.s, g.t}
    assert extra <= terr.clause[0]


def test_extract_hamiltonian_cover_satisfies_everything(worked_formula):
    g, layout, terr = build_vdpc(worked_formula)
    cover = lift_assignment(layout, (True, False, False, True))
    assert len(cover.paths) == 1
    a = extract_assignment(layout, terr, cover)
    assert evaluate(worked_formula, a) == worked_formula.num_clauses


def test_extract_all_singletons_defaults_false(worked_formula):
    g, layout, terr = build_vdpc(worked_formula)
    cover = PathCover(tuple((v,) for v in range(g.n)))
    assert extract_assignment(layout, terr, cover) == (False,) * 4


def test_extract_bound_on_perturbed_covers(worked_formula):
    """unsatisfied(extract) <= 29 * endpoints (excluding s, t)."""
    g, layout, terr = build_vdpc(worked_formula)
    rng = random.Random(3)
    base = lift_assignment(layout, (True, True, True, True))
    for _ in range(100):
        edges = sorted(base.edges())
        keep = [e for e in edges if rng.random() > 0.05]
        succ = dict(keep)
        paths, seen = [], set()
        has_pred = {v for _, v in keep}
        for v in range(g.n):
            if v in has_pred or v in seen:
                continue
            p = [v]
            while p[-1] in succ:
                p.append(succ[p[-1]])
            seen.update(p)
            paths.append(tuple(p))
        cover = PathCover(tuple(paths))
        verify_path_cover(g, cover)
        a = extract_assignment(layout, terr, cover)
        unsat = worked_formula.num_clauses - evaluate(worked_formula, a)
        endpoints = len(cover.endpoints() - {g.s, g.t})
        assert unsat <= 29 * endpoints


def test_ham_search_agrees_on_tiny_formulas():
    f = CnfFormula(num_vars=2, clauses=((1, 2), (-1, 2)))
    g, layout, _ = build_vdpc(f)
    path = find_hamiltonian_path(g, budget=2_000_000)
    assert path is not None  # satisfiable: x2 = True


def test_derive_alpha_mpc():
    assert derive_alpha_mpc(Fraction(1, 344)) == Fraction(1, 1396640)
    assert derive_alpha_mpc(Fraction(0)) == 0
    with pytest.raises(ValueError):
        derive_alpha_mpc(Fraction(-1, 2))

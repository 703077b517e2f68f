from __future__ import annotations

from itertools import permutations

import pytest

from empkit.core import CnfFormula, Digraph


@pytest.fixture
def g5() -> Digraph:
    """The worked 5-vertex example: s=1, t=5 (1-based), Hamiltonian path
    1-4-3-2-5; stored 0-based."""
    return Digraph(n=5, edges=((0, 1), (0, 3), (3, 2), (2, 1), (1, 4), (2, 4)),
                   s=0, t=4)


@pytest.fixture
def worked_formula() -> CnfFormula:
    """(x1 v x2) & (x1 v -x3 v x4) & (-x2 v x4)."""
    return CnfFormula(num_vars=4, clauses=((1, 2), (1, -3, 4), (-2, 4)))


def ham_path_by_permutations(g: Digraph):
    """Independent Hamiltonicity oracle: try all vertex orders."""
    edge_set = set(g.edges)
    if g.n == 1:
        return [g.s] if g.s == g.t else None
    middles = [v for v in range(g.n) if v not in (g.s, g.t)]
    if g.s == g.t:
        return None
    for perm in permutations(middles):
        path = [g.s, *perm, g.t]
        if all((u, v) in edge_set for u, v in zip(path, path[1:])):
            return path
    return None

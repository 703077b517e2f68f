"""Deterministic instance generators for the test corpus and the CLI.

All generators take an explicit seed and are pure functions of their
arguments, so identical invocations produce identical outputs.
"""

from __future__ import annotations

import random

from .core import (
    SIGNED,
    UNSIGNED,
    CnfFormula,
    Digraph,
    EdgeLabel,
    PuzzleInstance,
    Tile,
)


def planted_ham(n: int, seed: int, extra: int | None = None) -> tuple[Digraph, list[int]]:
    """Degree-<=2 digraph with a recorded (planted) Hamiltonian s->t path."""
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    s, t = order[0], order[-1]
    edges = list(zip(order, order[1:]))
    present = set(edges)
    out_deg = {v: 0 for v in range(n)}
    in_deg = {v: 0 for v in range(n)}
    for u, v in edges:
        out_deg[u] += 1
        in_deg[v] += 1
    attempts = n if extra is None else extra
    for _ in range(attempts):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v or v == s or u == t:
            continue
        if (u, v) in present or out_deg[u] >= 2 or in_deg[v] >= 2:
            continue
        present.add((u, v))
        edges.append((u, v))
        out_deg[u] += 1
        in_deg[v] += 1
    g = Digraph(n=n, edges=tuple(edges), s=s, t=t)
    g.validate()
    return g, order


def random_degree2(n: int, seed: int) -> Digraph:
    """Random degree-<=2 DAG with unique source and sink.

    Vertices are ordered; every non-sink gets one or two forward edges and
    every non-source at least one incoming edge, so the source/sink
    invariants hold; Hamiltonicity is not guaranteed.
    """
    if n < 2:
        raise ValueError("need at least two vertices")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    s, t = order[0], order[-1]
    edges: set[tuple[int, int]] = set()
    out_deg = [0] * n
    in_deg = [0] * n

    def add(u, v):
        edges.add((u, v))
        out_deg[u] += 1
        in_deg[v] += 1

    for i, u in enumerate(order[:-1]):
        want = 1 if rng.random() < 0.5 else 2
        later = order[i + 1:]
        rng.shuffle(later)
        for v in later:
            if out_deg[u] >= want:
                break
            if (u, v) not in edges and in_deg[v] < 2:
                add(u, v)
        if out_deg[u] == 0:
            # all later vertices are in-saturated; steal the next one
            v = order[i + 1]
            add(u, v)

    for i, v in enumerate(order[1:], 1):
        if in_deg[v] == 0:
            for u in rng.sample(order[:i], i):
                if out_deg[u] < 2 and (u, v) not in edges:
                    add(u, v)
                    break
            else:
                add(order[i - 1], v)

    # degree caps can be exceeded by the fallback "steal" branches: rebuild
    # until clean (bounded retries keep this deterministic per seed)
    if max(out_deg) > 2 or max(in_deg) > 2:
        return random_degree2(n, seed + 7919)
    g = Digraph(n=n, edges=tuple(sorted(edges)), s=s, t=t)
    g.validate()
    return g


def planted_3sat(n: int, m: int, seed: int,
                 occurrence_bound: int = 29) -> tuple[CnfFormula, tuple[bool, ...]]:
    """Satisfiable 3-CNF with a recorded satisfying assignment; the
    occurrence bound holds even after padding clauses to three literals."""
    rng = random.Random(seed)
    assignment = tuple(rng.random() < 0.5 for _ in range(n))
    counts = [0] * n
    clauses = []
    for _ in range(m):
        for _attempt in range(1000):
            size = rng.choice((1, 2, 3))
            vars_ = rng.sample(range(1, n + 1), min(size, n))
            lits = [v if rng.random() < 0.5 else -v for v in vars_]
            if not any((l > 0) == assignment[abs(l) - 1] for l in lits):
                flip = rng.randrange(len(lits))
                lits[flip] = -lits[flip]
            padded = lits + [lits[-1]] * (3 - len(lits))
            usage = [0] * n
            for l in padded:
                usage[abs(l) - 1] += 1
            if all(counts[i] + usage[i] <= occurrence_bound for i in range(n)):
                for i in range(n):
                    counts[i] += usage[i]
                clauses.append(tuple(lits))
                break
        else:
            raise ValueError("could not satisfy the occurrence bound")
    return CnfFormula(num_vars=n, clauses=tuple(clauses)), assignment


def random_tiles(n: int, seed: int, mode: str = UNSIGNED,
                 colors: int | None = None) -> PuzzleInstance:
    """1xn instance of uniformly random tiles over a small color pool."""
    rng = random.Random(seed)
    k = colors if colors is not None else max(2, (3 * n) // 4)
    pool = [f"c{i}" for i in range(k)]

    def lab():
        c = rng.choice(pool)
        if mode == SIGNED:
            return EdgeLabel(c, rng.choice("+-"))
        return EdgeLabel(c)

    tiles = tuple(
        Tile(i, lab(), lab(), lab(), lab()) for i in range(n))
    return PuzzleInstance(mode=mode, h=1, w=n, tiles=tiles)


def random_cover(g: Digraph, seed: int):
    """Greedy randomized vertex-disjoint path cover (heuristic quality)."""
    from .core import PathCover

    rng = random.Random(seed)
    adj = g.adjacency()
    succ: dict[int, int] = {}
    used_in: set[int] = set()
    verts = list(range(g.n))
    rng.shuffle(verts)
    for u in verts:
        options = [v for v in adj[u] if v not in used_in]
        rng.shuffle(options)
        for v in options:
            # avoid closing a cycle
            w, ok = v, True
            while w in succ:
                w = succ[w]
                if w == u:
                    ok = False
                    break
            if ok:
                succ[u] = v
                used_in.add(v)
                break
    has_pred = set(succ.values())
    paths = []
    for v in range(g.n):
        if v in has_pred:
            continue
        p = [v]
        while p[-1] in succ:
            p.append(succ[p[-1]])
        paths.append(tuple(p))
    return PathCover(tuple(paths))

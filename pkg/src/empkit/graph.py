"""Path-cover verification, brute-force oracles, Hamiltonian search and
input normalization for the reduction chain."""

from __future__ import annotations

from .core import Digraph, PathCover
from .errors import SearchBudgetExceeded, SizeLimitError, VerificationError

BRUTE_FORCE_VERTEX_LIMIT = 12
DEFAULT_SEARCH_BUDGET = 10**8


def verify_path_cover(g: Digraph, cover: PathCover) -> int:
    """Validate a vertex-disjoint path cover and return its edge count.

    Every vertex must appear in exactly one path and every consecutive pair
    must be an edge of ``g``; the edge count then equals |V| - #paths.
    """
    seen: set[int] = set()
    edge_set = set(g.edges)
    for p in cover.paths:
        if not p:
            raise VerificationError("empty path in cover")
        for v in p:
            if not 0 <= v < g.n:
                raise VerificationError(f"vertex {v} out of range")
            if v in seen:
                raise VerificationError(f"vertex {v} covered twice")
            seen.add(v)
        for u, v in zip(p, p[1:]):
            if (u, v) not in edge_set:
                raise VerificationError(f"({u},{v}) is not an edge of the graph")
    if len(seen) != g.n:
        missing = sorted(set(range(g.n)) - seen)
        raise VerificationError(f"vertices not covered: {missing}")
    return g.n - len(cover.paths)


def check_degree_bound(g: Digraph, d: int) -> bool:
    """True iff every in-degree and out-degree is at most ``d``."""
    return max(g.in_degrees(), default=0) <= d and max(g.out_degrees(), default=0) <= d


def brute_force_max_path_cover(g: Digraph) -> tuple[int, PathCover]:
    """Exact maximum vertex-disjoint path cover by exhaustive search.

    Enumerates successor assignments (each vertex keeps at most one out-edge
    into the cover, each at most one in-edge) and rejects cyclic choices.
    Oracle-scale only: |V| <= 12.
    """
    if g.n > BRUTE_FORCE_VERTEX_LIMIT:
        raise SizeLimitError(f"brute force limited to {BRUTE_FORCE_VERTEX_LIMIT} vertices")
    adj = g.adjacency()
    best_edges = -1
    best_succ: dict[int, int] = {}
    succ: dict[int, int] = {}
    used_in: set[int] = set()

    def creates_cycle(u: int, v: int) -> bool:
        # following succ from v must not lead back to u
        w = v
        while w in succ:
            w = succ[w]
            if w == u:
                return True
        return False

    def rec(u: int, count: int):
        nonlocal best_edges, best_succ
        if u == g.n:
            if count > best_edges:
                best_edges = count
                best_succ = dict(succ)
            return
        # upper bound: every remaining vertex adds at most one edge
        if count + (g.n - u) <= best_edges:
            return
        for v in adj[u]:
            if v in used_in or creates_cycle(u, v):
                continue
            succ[u] = v
            used_in.add(v)
            rec(u + 1, count + 1)
            del succ[u]
            used_in.discard(v)
        rec(u + 1, count)

    rec(0, 0)
    cover = _succ_to_cover(g.n, best_succ)
    return best_edges, cover


def _succ_to_cover(n: int, succ: dict[int, int]) -> PathCover:
    has_pred = set(succ.values())
    paths = []
    for v in range(n):
        if v in has_pred:
            continue
        p = [v]
        while p[-1] in succ:
            p.append(succ[p[-1]])
        paths.append(tuple(p))
    return PathCover(tuple(paths))


def find_hamiltonian_path(g: Digraph, budget: int = DEFAULT_SEARCH_BUDGET):
    """DFS for a Hamiltonian s->t path with reachability/degree pruning.

    Returns the path as a vertex list, or None if provably absent.  Running
    out of ``budget`` (counted in node expansions) raises
    SearchBudgetExceeded: an indeterminate outcome, never reported as None.
    """
    n = g.n
    if n == 1:
        return [g.s] if g.s == g.t else None
    if g.s == g.t:
        return None
    adj = g.adjacency()
    radj: list[list[int]] = [[] for _ in range(n)]
    for u, v in g.edges:
        radj[v].append(u)

    expansions = 0
    visited = [False] * n
    path = [g.s]
    visited[g.s] = True

    def prune(current: int) -> bool:
        """True if the partial path provably cannot be extended."""
        # every unvisited vertex must be reachable from current
        # through unvisited vertices, and t must be among them
        stack = [current]
        reach = {current}
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in reach and not visited[v]:
                    reach.add(v)
                    stack.append(v)
        for v in range(n):
            if not visited[v] and v not in reach:
                return True
        # any unvisited non-t vertex with no unvisited successor is stuck;
        # any unvisited vertex (besides adj of current) with all predecessors
        # visited can never be entered
        for v in range(n):
            if visited[v] or v == current:
                continue
            if v != g.t and all(visited[w] for w in adj[v]):
                return True
            if all(visited[w] or w == current for w in radj[v]) and v not in adj[current]:
                return True
        return False

    def dfs(current: int) -> bool:
        nonlocal expansions
        if len(path) == n:
            return current == g.t
        expansions += 1
        if expansions > budget:
            raise SearchBudgetExceeded(budget)
        if current == g.t:
            return False
        if prune(current):
            return False
        for v in adj[current]:
            if visited[v]:
                continue
            visited[v] = True
            path.append(v)
            if dfs(v):
                return True
            path.pop()
            visited[v] = False
        return False

    if dfs(g.s):
        return path
    return None


def normalize_source_sink(g: Digraph, s: int, t: int) -> Digraph:
    """Wrap a digraph so the designated endpoints become a true source/sink.

    Adds s' with edge s'->s and t' with edge t->t'; Hamiltonian s->t paths
    of the input correspond one-to-one to s'->t' paths of the output.  The
    wrap is applied uniformly even when s is already a source.
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise VerificationError("s/t out of range")
    s2, t2 = g.n, g.n + 1
    edges = tuple(g.edges) + ((s2, s), (t, t2))
    return Digraph(n=g.n + 2, edges=edges, s=s2, t=t2)

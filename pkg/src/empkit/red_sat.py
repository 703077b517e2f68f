"""Reduction from Max-3SAT(29) to Max Vertex-Disjoint Path Cover(2):
clause/variable/XOR gadgets, territories, assignment lift and extraction.

Construction overview
---------------------

The graph is a chain  s -> V_1 -> ... -> V_n -> C_1 -> ... -> C_m -> t  of
variable gadgets V_i and clause gadgets C_j, tied together by XOR lines.

XOR line: an 8-vertex ladder x1 <-> x2 <-> ... <-> x8 (antiparallel edges)
replacing two "shorthand" arcs.  The left arc (u -> v) becomes u -> x1 and
x8 -> v; the right arc (w -> z) becomes w -> x8 and x1 -> z.  In any path
cover without endpoints among the eight vertices, either the left boundary
pair is used (traversing x1..x8 forward) or the right pair is (backward):
exactly one shorthand arc survives.

Variable gadget: head h_i, tail l_i and two rails between them.  The
positive rail chains the XOR lines of x_i's positive occurrences and ends
in the left side of one extra "internal" XOR line; the negative rail chains
the negative occurrences and ends in the right side of the same internal
line.  Endpoint-free covers traverse exactly one rail (= the literal edge
of the chosen truth value); the other rail's occurrence lines are then
traversed from the clause side (the occurrence arcs of false literals).

Clause gadget (11 vertices): the three occurrence arcs form a triangle

        g ==arc1==> x ==arc2==> y ==arc3==> g

(each arc XOR-linked to the corresponding literal rail segment, so arc k is
traversed iff literal k is false), plus anchors and a spine:

        ent -> P3, ent -> Q3        P1 -> g -> Q1
        P1 -> P3,  Q1 -> ext        P2 -> x -> Q2
        P2 -> Q1,  Q2 -> P1         P3 -> y -> Q3
        Q2 -> P2,  P3 -> Q2
        Q3 -> P1,  Q3 -> P2

If all three literals are false the forced arcs close the triangle into a
directed cycle, which no path cover may contain: covering g, x, y then
requires an endpoint inside the clause territory.  Every other pattern
admits a Hamiltonian ent -> ext route (verified exhaustively in the tests),
and the spine alone is Hamiltonian so the global chain always gets through.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import Assignment, CnfFormula, Digraph, PathCover
from .errors import OccurrenceBoundError, VerificationError
from .graph import verify_path_cover
from .sat import check_occurrence_bound

XOR_SIZE = 8
OCCURRENCE_BOUND = 29

# ---------------------------------------------------------------------------
# clause gadget template (role names; "ent"/"ext" are the chain ports)

CLAUSE_ROLES = ("ent", "ext", "P1", "Q1", "P2", "Q2", "P3", "Q3", "g", "x", "y")

CLAUSE_SPINE = (
    ("ent", "P3"), ("ent", "Q3"),
    ("P1", "P3"), ("Q1", "ext"),
    ("P2", "Q1"), ("Q2", "P1"), ("Q2", "P2"),
    ("P3", "Q2"), ("Q3", "P1"), ("Q3", "P2"),
)

CLAUSE_ANCHORS = (
    ("P1", "g"), ("g", "Q1"),
    ("P2", "x"), ("x", "Q2"),
    ("P3", "y"), ("y", "Q3"),
)

CLAUSE_PLAIN = CLAUSE_SPINE + CLAUSE_ANCHORS

# occurrence arc k runs tail -> head and is traversed iff literal k is false
CLAUSE_ARCS = (("g", "x"), ("x", "y"), ("y", "g"))


@lru_cache(maxsize=None)
def clause_route(pattern: tuple[bool, bool, bool]) -> tuple[tuple[str, str], ...]:
    """Plain template edges of the mainline through a clause gadget.

    ``pattern[k]`` says arc k is traversed (literal k false).  For
    satisfiable patterns this is the Hamiltonian ent->ext route with the
    arc jumps spliced out; for the all-false pattern it is the spine-only
    route (the triangle is covered by a separate fragment).
    """
    arcs = {CLAUSE_ARCS[k] for k in range(3) if pattern[k]}
    cut_out = {u for u, _ in arcs}
    cut_in = {v for _, v in arcs}
    exclude_all = all(pattern)
    adj: dict[str, list[str]] = {r: [] for r in CLAUSE_ROLES}
    nodes = [r for r in CLAUSE_ROLES if not (exclude_all and r in ("g", "x", "y"))]
    for u, v in CLAUSE_PLAIN:
        if exclude_all and (u in ("g", "x", "y") or v in ("g", "x", "y")):
            continue
        if u in cut_out or v in cut_in:
            continue
        adj[u].append(v)
    if not exclude_all:
        for u, v in arcs:
            adj[u].append(v)
    for lst in adj.values():
        lst.sort()

    target = len(nodes)
    route: list[str] = ["ent"]
    seen = {"ent"}

    def dfs(v: str) -> bool:
        if len(route) == target:
            return v == "ext"
        if v == "ext":
            return False
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                route.append(w)
                if dfs(w):
                    return True
                route.pop()
                seen.remove(w)
        return False

    if not dfs("ent"):
        raise AssertionError(f"clause gadget has no route for pattern {pattern}")
    plain = set(CLAUSE_PLAIN)
    return tuple((u, v) for u, v in zip(route, route[1:]) if (u, v) in plain)


# ---------------------------------------------------------------------------
# layout records

@dataclass(frozen=True)
class XorLine:
    """One XOR line: 8 ladder vertices plus the four boundary edges of the
    two shorthand arcs it realizes (left = literal side, right = clause or
    opposite-rail side)."""

    verts: tuple[int, ...]
    left_in: tuple[int, int]
    left_out: tuple[int, int]
    right_in: tuple[int, int]
    right_out: tuple[int, int]

    def ladder_edges(self) -> list[tuple[int, int]]:
        out = []
        for i in range(XOR_SIZE - 1):
            out.append((self.verts[i], self.verts[i + 1]))
            out.append((self.verts[i + 1], self.verts[i]))
        return out

    def left_traversal(self) -> list[tuple[int, int]]:
        e = [self.left_in]
        e += [(self.verts[i], self.verts[i + 1]) for i in range(XOR_SIZE - 1)]
        e.append(self.left_out)
        return e

    def right_traversal(self) -> list[tuple[int, int]]:
        e = [self.right_in]
        e += [(self.verts[i + 1], self.verts[i]) for i in range(XOR_SIZE - 1)]
        e.append(self.right_out)
        return e


@dataclass(frozen=True)
class VariableGadget:
    index: int
    h: int
    l: int
    internal: XorLine
    pos_lines: tuple[XorLine, ...]
    neg_lines: tuple[XorLine, ...]
    pos_entry: int  # h's successor on the positive rail
    neg_entry: int

    def vertices(self) -> frozenset[int]:
        out = {self.h, self.l}
        out.update(self.internal.verts)
        for ln in self.pos_lines + self.neg_lines:
            out.update(ln.verts)
        return frozenset(out)


@dataclass(frozen=True)
class ClauseGadget:
    index: int
    lits: tuple[int, int, int]  # padded literals
    roles: dict  # role name -> vertex id
    occ_lines: tuple[XorLine, XorLine, XorLine]

    def proper_vertices(self) -> frozenset[int]:
        return frozenset(self.roles.values())


@dataclass(frozen=True)
class GadgetLayout:
    formula: CnfFormula          # original
    padded: CnfFormula           # every clause exactly 3 literals
    graph: Digraph
    s: int
    t: int
    variables: tuple[VariableGadget, ...]
    clauses: tuple[ClauseGadget, ...]


@dataclass(frozen=True)
class TerritoryIndex:
    """Vertex regions charged to variables and clauses in the endpoint
    counting argument.  Variable territories are pairwise disjoint; a clause
    territory is its gadget plus the territories of its variables."""

    variable: dict
    clause: dict


def pad_clauses(f: CnfFormula) -> CnfFormula:
    """Repeat the last literal until every clause has exactly 3."""
    padded = tuple(c + (c[-1],) * (3 - len(c)) for c in f.clauses)
    return CnfFormula(num_vars=f.num_vars, clauses=padded)


def build_vdpc(f: CnfFormula) -> tuple[Digraph, GadgetLayout, TerritoryIndex]:
    """Build the Max VDPC(2) instance for a Max-3SAT(29) formula."""
    padded = pad_clauses(f)
    if not check_occurrence_bound(padded, OCCURRENCE_BOUND):
        raise OccurrenceBoundError(
            f"some variable occurs more than {OCCURRENCE_BOUND} times "
            "(counted after padding clauses to 3 literals)")

    n, m = padded.num_vars, padded.num_clauses
    counter = [0]
    edges: list[tuple[int, int]] = []

    def new_vertex() -> int:
        counter[0] += 1
        return counter[0] - 1

    def new_ladder() -> tuple[int, ...]:
        verts = tuple(new_vertex() for _ in range(XOR_SIZE))
        for i in range(XOR_SIZE - 1):
            edges.append((verts[i], verts[i + 1]))
            edges.append((verts[i + 1], verts[i]))
        return verts

    s = new_vertex()

    # clause role vertices are created first so that occurrence lines can
    # attach to them while the variable rails are threaded; order of vertex
    # ids is otherwise immaterial
    clause_roles: list[dict] = []
    for _ in range(m):
        clause_roles.append({r: new_vertex() for r in CLAUSE_ROLES})

    # per clause: the three occurrence arc endpoints in the realized graph
    arc_ends = [
        [(roles[u], roles[v]) for u, v in CLAUSE_ARCS] for roles in clause_roles
    ]

    # group occurrences by variable: (clause index, slot, positive?)
    occs: list[list[tuple[int, int, bool]]] = [[] for _ in range(n)]
    for j, clause in enumerate(padded.clauses):
        for k, lit in enumerate(clause):
            occs[abs(lit) - 1].append((j, k, lit > 0))

    variables: list[VariableGadget] = []
    occ_line_of: dict[tuple[int, int], XorLine] = {}  # (clause, slot) -> line
    for i in range(n):
        h = new_vertex()
        l = new_vertex()

        def thread_rail(rail_occs):
            """Chain the rail's occurrence lines; return (lines, entry, cursor)."""
            lines = []
            cursor = h
            entry = None
            for (j, k, _) in rail_occs:
                verts = new_ladder()
                tail, head = arc_ends[j][k]
                line = XorLine(
                    verts=verts,
                    left_in=(cursor, verts[0]),
                    left_out=(verts[-1], -1),  # patched below
                    right_in=(tail, verts[-1]),
                    right_out=(verts[0], head),
                )
                lines.append([line, verts])
                if entry is None:
                    entry = verts[0]
                cursor = verts[-1]
            return lines, entry, cursor

        pos_occs = [o for o in occs[i] if o[2]]
        neg_occs = [o for o in occs[i] if not o[2]]
        pos_raw, pos_entry, pos_cursor = thread_rail(pos_occs)
        neg_raw, neg_entry, neg_cursor = thread_rail(neg_occs)

        ivs = new_ladder()
        internal = XorLine(
            verts=ivs,
            left_in=(pos_cursor, ivs[0]),
            left_out=(ivs[-1], l),
            right_in=(neg_cursor, ivs[-1]),
            right_out=(ivs[0], l),
        )
        if pos_entry is None:
            pos_entry = ivs[0]
        if neg_entry is None:
            neg_entry = ivs[-1]

        # patch the rail lines' left_out to point at their successor
        def finish_rail(raw, terminal):
            lines = []
            for idx, (line, verts) in enumerate(raw):
                nxt = raw[idx + 1][1][0] if idx + 1 < len(raw) else terminal
                lines.append(XorLine(
                    verts=line.verts, left_in=line.left_in,
                    left_out=(verts[-1], nxt),
                    right_in=line.right_in, right_out=line.right_out))
            return lines

        pos_lines = finish_rail(pos_raw, ivs[0])
        neg_lines = finish_rail(neg_raw, ivs[-1])
        for line, (j, k, _) in zip(pos_lines, pos_occs):
            occ_line_of[(j, k)] = line
        for line, (j, k, _) in zip(neg_lines, neg_occs):
            occ_line_of[(j, k)] = line

        for line in list(pos_lines) + list(neg_lines) + [internal]:
            edges.append(line.left_in)
            edges.append(line.left_out)
            edges.append(line.right_in)
            edges.append(line.right_out)

        variables.append(VariableGadget(
            index=i, h=h, l=l, internal=internal,
            pos_lines=tuple(pos_lines), neg_lines=tuple(neg_lines),
            pos_entry=pos_entry, neg_entry=neg_entry))

    t = new_vertex()

    # clause plain edges
    for roles in clause_roles:
        for u, v in CLAUSE_PLAIN:
            edges.append((roles[u], roles[v]))

    clauses: list[ClauseGadget] = []
    for j in range(m):
        lines = tuple(occ_line_of[(j, k)] for k in range(3))
        clauses.append(ClauseGadget(
            index=j, lits=padded.clauses[j], roles=clause_roles[j],
            occ_lines=lines))

    # the global chain: s, variable gadgets, clause gadgets, t
    hops = [s]
    for var in variables:
        hops += [var.h, var.l]
    for roles in clause_roles:
        hops += [roles["ent"], roles["ext"]]
    hops.append(t)
    for idx in range(0, len(hops) - 1, 2):
        edges.append((hops[idx], hops[idx + 1]))

    g = Digraph(n=counter[0], edges=tuple(dict.fromkeys(edges)), s=s, t=t)
    g.validate()
    layout = GadgetLayout(
        formula=f, padded=padded, graph=g, s=s, t=t,
        variables=tuple(variables), clauses=tuple(clauses))
    return g, layout, build_territories(layout)


def build_territories(layout: GadgetLayout) -> TerritoryIndex:
    var_terr = {v.index: v.vertices() for v in layout.variables}
    clause_terr = {}
    for c in layout.clauses:
        terr = set(c.proper_vertices())
        for lit in set(c.lits):
            terr |= var_terr[abs(lit) - 1]
        clause_terr[c.index] = frozenset(terr)
    return TerritoryIndex(variable=var_terr, clause=clause_terr)


# ---------------------------------------------------------------------------
# lift and extraction

def lift_assignment(layout: GadgetLayout, a: Assignment) -> PathCover:
    """Path cover induced by a truth assignment.

    A satisfying assignment yields a single s->t Hamiltonian path; each
    unsatisfied clause instead contributes one extra path confined to its
    territory (the triangle fragment) while the mainline bypasses it over
    the spine.
    """
    if len(a) != layout.padded.num_vars:
        raise VerificationError("assignment length mismatch")
    edges: list[tuple[int, int]] = []

    # chain links between gadgets
    hops = [layout.s]
    for var in layout.variables:
        hops += [var.h, var.l]
    for c in layout.clauses:
        hops += [c.roles["ent"], c.roles["ext"]]
    hops.append(layout.t)
    for idx in range(0, len(hops) - 1, 2):
        edges.append((hops[idx], hops[idx + 1]))

    # variable rails: the chosen literal's rail is traversed end to end
    for var in layout.variables:
        if a[var.index]:
            for line in var.pos_lines:
                edges += line.left_traversal()
            edges += var.internal.left_traversal()
        else:
            for line in var.neg_lines:
                edges += line.left_traversal()
            edges += var.internal.right_traversal()

    # clause completions
    for c in layout.clauses:
        pattern = tuple(not _lit_true(lit, a) for lit in c.lits)
        roles = c.roles
        for u, v in clause_route(pattern):
            edges.append((roles[u], roles[v]))
        if all(pattern):
            # unsatisfied: the triangle plus its occurrence lines become one
            # fragment g -> [arc1] -> x -> [arc2] -> y -> [arc3 ladder]
            for k in range(3):
                tr = c.occ_lines[k].right_traversal()
                if k == 2:
                    tr = tr[:-1]  # drop the closing edge back into g
                edges += tr
        else:
            for k in range(3):
                if pattern[k]:
                    edges += c.occ_lines[k].right_traversal()

    return _edges_to_cover(layout.graph, edges)


def _lit_true(lit: int, a: Assignment) -> bool:
    return (lit > 0) == a[abs(lit) - 1]


def _edges_to_cover(g: Digraph, edges) -> PathCover:
    succ: dict[int, int] = {}
    pred: dict[int, int] = {}
    eset = set(edges)
    for u, v in eset:
        if u in succ or v in pred:
            raise VerificationError("internal: lift produced branching edges")
        succ[u] = v
        pred[v] = u
    paths = []
    seen: set[int] = set()
    for v in range(g.n):
        if v in pred or v in seen:
            continue
        p = [v]
        while p[-1] in succ:
            p.append(succ[p[-1]])
            if p[-1] in seen or len(p) > g.n:
                raise VerificationError("internal: lift produced a cycle")
        seen.update(p)
        paths.append(tuple(p))
    if len(seen) != g.n:
        raise VerificationError("internal: lift left vertices uncovered")
    cover = PathCover(tuple(paths))
    verify_path_cover(g, cover)
    return cover


def extract_assignment(layout: GadgetLayout, territories: TerritoryIndex,
                       cover: PathCover) -> Assignment:
    """Read a truth assignment off a path cover.

    For variables whose territory contains no endpoints (besides s and t)
    the covered rail determines the value; endpoint-touched variables
    default to False.
    """
    verify_path_cover(layout.graph, cover)
    endpoints = cover.endpoints() - {layout.s, layout.t}
    succ: dict[int, int] = {}
    for p in cover.paths:
        for u, v in zip(p, p[1:]):
            succ[u] = v

    values = []
    for var in layout.variables:
        terr = territories.variable[var.index]
        if terr & endpoints:
            values.append(False)
            continue
        nxt = succ.get(var.h)
        if nxt == var.pos_entry:
            values.append(True)
        elif nxt == var.neg_entry:
            values.append(False)
        else:
            # h untouched or oddly covered: impossible endpoint-free, but be
            # deterministic anyway
            values.append(False)
    return tuple(values)


def derive_alpha_mpc(alpha_3sat: Fraction) -> Fraction:
    """Gap constant through this reduction: alpha_3sat / 4060 exactly."""
    alpha_3sat = Fraction(alpha_3sat)
    if not 0 <= alpha_3sat <= 1:
        raise ValueError("alpha_3sat must lie in [0, 1]")
    return alpha_3sat / 4060

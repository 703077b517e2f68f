"""Domain types shared by every module: edge labels, tiles, boards, graphs,
CNF formulas and the gap-constant records.

Conventions fixed here (and relied on everywhere else):

* A tile stores its four labels in the order (left, top, right, bottom).
* ``rotate(tile, r)`` applies ``r`` clockwise quarter-turns; after one turn
  the old left label is on top (new[i] = old[(i - r) % 4]).
* Colors are opaque strings.  Reduction-built instances use the canonical
  scheme "I:<v>", "O:<v>", "U:<v>" for vertex colors, "X" for the garbage
  color and "U:B" for the bridge color.
* Digraph vertices are 0-based ints; file formats renumber to 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import GraphInvariantError, ModeMismatchError

UNSIGNED = "unsigned"
SIGNED = "signed"

PLUS = "+"
MINUS = "-"

# Tile provenance tags used by the reductions.
KIND_VERTEX = "vertex"
KIND_EDGE = "edge"
KIND_BRIDGE = "bridge"
KIND_GENERIC = "generic"


@dataclass(frozen=True)
class EdgeLabel:
    """A tile edge: a color plus an optional sign (absent in unsigned mode)."""

    color: str
    sign: Optional[str] = None

    def __post_init__(self):
        if self.sign not in (None, PLUS, MINUS):
            raise ModeMismatchError(f"invalid sign {self.sign!r}")

    @property
    def signed(self) -> bool:
        return self.sign is not None

    def __str__(self) -> str:
        return f"{self.sign}{self.color}" if self.sign else self.color


def label(text: str) -> EdgeLabel:
    """Parse a label from its text form ("X" unsigned, "+X"/"-X" signed)."""
    if text[:1] in (PLUS, MINUS):
        return EdgeLabel(text[1:], text[0])
    return EdgeLabel(text)


def compatible(a: EdgeLabel, b: EdgeLabel, mode: str) -> bool:
    """Whether two labels may face each other across a shared edge.

    Unsigned: equal colors.  Signed: equal colors and opposite signs.
    """
    if mode == UNSIGNED:
        if a.signed or b.signed:
            raise ModeMismatchError("signed label in an unsigned comparison")
        return a.color == b.color
    if mode == SIGNED:
        if not (a.signed and b.signed):
            raise ModeMismatchError("unsigned label in a signed comparison")
        return a.color == b.color and a.sign != b.sign
    raise ModeMismatchError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class Tile:
    """A unit square tile.  ``kind``/``ref`` record reduction provenance:
    ("vertex", (v,)), ("edge", (u, v)), ("bridge", ()) or ("generic", ())."""

    id: int
    left: EdgeLabel
    top: EdgeLabel
    right: EdgeLabel
    bottom: EdgeLabel
    kind: str = KIND_GENERIC
    ref: tuple = ()

    @property
    def labels(self) -> tuple[EdgeLabel, EdgeLabel, EdgeLabel, EdgeLabel]:
        return (self.left, self.top, self.right, self.bottom)


def tile(id: int, *labels, kind: str = KIND_GENERIC, ref: tuple = ()) -> Tile:
    """Build a tile from four labels given as strings or EdgeLabels."""
    if len(labels) != 4:
        raise ValueError("a tile needs exactly four labels")
    ls = [label(x) if isinstance(x, str) else x for x in labels]
    return Tile(id, ls[0], ls[1], ls[2], ls[3], kind=kind, ref=ref)


def rotate(t: Tile, r: int) -> Tile:
    """Rotate a tile by ``r`` clockwise quarter-turns (new top = old left)."""
    if r not in (0, 1, 2, 3):
        raise ValueError(f"rotation must be in 0..3, got {r}")
    old = t.labels
    new = tuple(old[(i - r) % 4] for i in range(4))
    return Tile(t.id, new[0], new[1], new[2], new[3], kind=t.kind, ref=t.ref)


def rotated_labels(t: Tile, r: int) -> tuple[EdgeLabel, EdgeLabel, EdgeLabel, EdgeLabel]:
    """Labels of ``t`` after ``r`` quarter-turns, without building a Tile."""
    old = t.labels
    return tuple(old[(i - r) % 4] for i in range(4))


@dataclass(frozen=True)
class ReductionMeta:
    """Bookkeeping emitted by the graph-to-puzzle reductions so that tilings
    can be inverted back into paths/covers.  Color tables are injective and
    the garbage/bridge colors are distinct from all vertex colors."""

    graph: "Digraph"
    in_color: dict = field(default_factory=dict)   # vertex -> I color
    out_color: dict = field(default_factory=dict)  # vertex -> O color
    unique_color: dict = field(default_factory=dict)  # vertex -> U color
    garbage_color: str = "X"
    bridge_color: str = "U:B"
    vertex_tile: dict = field(default_factory=dict)  # vertex -> tile id
    edge_tile: dict = field(default_factory=dict)    # (u, v) -> tile id
    bridge_tile: int = -1


@dataclass(frozen=True)
class PuzzleInstance:
    """A 1xn (or h x w for verification) edge-matching puzzle instance."""

    mode: str
    h: int
    w: int
    tiles: tuple[Tile, ...]
    meta: Optional[ReductionMeta] = None

    def __post_init__(self):
        if self.mode not in (UNSIGNED, SIGNED):
            raise ModeMismatchError(f"unknown mode {self.mode!r}")
        if self.h < 1 or self.w < 1:
            raise ValueError("board dimensions must be positive")
        if len(self.tiles) != self.h * self.w:
            raise ValueError(
                f"tile count {len(self.tiles)} != h*w = {self.h * self.w}")
        want_sign = self.mode == SIGNED
        for t in self.tiles:
            for lab in t.labels:
                if lab.signed != want_sign:
                    raise ModeMismatchError(
                        f"tile {t.id} label {lab} does not match mode {self.mode}")
        ids = [t.id for t in self.tiles]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate tile ids in instance")

    @property
    def n(self) -> int:
        return self.h * self.w

    def tile_by_id(self, tid: int) -> Tile:
        for t in self.tiles:
            if t.id == tid:
                return t
        raise KeyError(f"no tile with id {tid}")


# A slot is either None (blank) or a (tile_id, rotation) pair.
Slot = Optional[tuple[int, int]]


@dataclass(frozen=True)
class Tiling:
    """An assignment of board slots to placed tiles, row-major order."""

    slots: tuple[Slot, ...]

    def __post_init__(self):
        seen = set()
        for s in self.slots:
            if s is None:
                continue
            tid, r = s
            if r not in (0, 1, 2, 3):
                raise ValueError(f"invalid rotation {r}")
            if tid in seen:
                raise ValueError(f"tile {tid} placed twice")
            seen.add(tid)

    @property
    def placed(self) -> int:
        return sum(1 for s in self.slots if s is not None)


@dataclass(frozen=True)
class Digraph:
    """A simple directed graph with designated source ``s`` and sink ``t``.

    ``validate()`` additionally enforces the Hamiltonian-path-instance shape:
    s has in-degree 0 and t has out-degree 0.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    s: int
    t: int

    def __post_init__(self):
        if not (0 <= self.s < self.n and 0 <= self.t < self.n):
            raise GraphInvariantError("s/t out of range")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphInvariantError(f"edge ({u},{v}) out of range")
            if u == v:
                raise GraphInvariantError(f"self-loop at {u}")
            if (u, v) in seen:
                raise GraphInvariantError(f"duplicate edge ({u},{v})")
            seen.add((u, v))

    def validate(self) -> None:
        """Require the source/sink invariants of a Hamiltonian Path instance."""
        for u, v in self.edges:
            if v == self.s:
                raise GraphInvariantError(f"source {self.s} has incoming edge ({u},{v})")
            if u == self.t:
                raise GraphInvariantError(f"sink {self.t} has outgoing edge ({u},{v})")

    def successors(self, u: int) -> list[int]:
        return [b for a, b in self.edges if a == u]

    def predecessors(self, v: int) -> list[int]:
        return [a for a, b in self.edges if b == v]

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
        for lst in adj:
            lst.sort()
        return adj

    def in_degrees(self) -> list[int]:
        deg = [0] * self.n
        for _, v in self.edges:
            deg[v] += 1
        return deg

    def out_degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, _ in self.edges:
            deg[u] += 1
        return deg


@dataclass(frozen=True)
class PathCover:
    """A partition of a digraph's vertices into directed paths (singletons
    allowed).  Validated against a concrete graph by verify_path_cover."""

    paths: tuple[tuple[int, ...], ...]

    def edge_count(self) -> int:
        return sum(len(p) - 1 for p in self.paths)

    def edges(self) -> set[tuple[int, int]]:
        out = set()
        for p in self.paths:
            out.update(zip(p, p[1:]))
        return out

    def endpoints(self) -> set[int]:
        """Start and end vertices of every path (a singleton counts once)."""
        out = set()
        for p in self.paths:
            out.add(p[0])
            out.add(p[-1])
        return out


# Clauses are tuples of DIMACS-style nonzero literals: +v / -v, 1-based.
Clause = tuple[int, ...]


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        for c in self.clauses:
            if not 1 <= len(c) <= 3:
                raise ValueError(f"clause {c} must have 1..3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


# An assignment is simply a tuple of booleans indexed by variable - 1.
Assignment = tuple[bool, ...]


@dataclass(frozen=True)
class GapParams:
    """The gap-constant chain as exact rationals.

    alpha_mpc is tied to alpha_3sat by a factor of 1/4060 and alpha_emp must
    sit strictly below alpha_mpc / 48.
    """

    alpha_3sat: Fraction
    alpha_mpc: Fraction
    alpha_emp: Fraction

    def __post_init__(self):
        if self.alpha_mpc != self.alpha_3sat / 4060:
            raise ValueError("alpha_mpc must equal alpha_3sat / 4060")
        if not self.alpha_emp < self.alpha_mpc / 48:
            raise ValueError("alpha_emp must be strictly below alpha_mpc / 48")

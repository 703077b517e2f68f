"""CNF ingestion, evaluation, occurrence accounting and a brute-force
Max-3SAT oracle."""

from __future__ import annotations

from itertools import product

from .core import Assignment, CnfFormula
from .errors import FormatError, SizeLimitError, VerificationError

BRUTE_FORCE_VAR_LIMIT = 25


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF text into a formula with clauses of length 1..3."""
    num_vars = None
    num_clauses = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"bad DIMACS header: {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"bad DIMACS header: {line!r}")
            continue
        if num_vars is None:
            raise FormatError("clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"bad literal token {tok!r}")
            if lit == 0:
                if current:
                    if len(current) > 3:
                        raise FormatError(f"clause {current} longer than 3 literals")
                    clauses.append(tuple(current))
                    current = []
            else:
                if abs(lit) > num_vars:
                    raise FormatError(f"variable {abs(lit)} out of range (n={num_vars})")
                current.append(lit)
    if current:
        raise FormatError("last clause not terminated by 0")
    if num_vars is None:
        raise FormatError("missing 'p cnf' header")
    if num_clauses is not None and num_clauses != len(clauses):
        raise FormatError(
            f"header declares {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars=num_vars, clauses=tuple(clauses))


def to_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {f.num_clauses}"]
    for c in f.clauses:
        lines.append(" ".join(str(l) for l in c) + " 0")
    return "\n".join(lines) + "\n"


def evaluate(f: CnfFormula, a: Assignment) -> int:
    """Number of clauses with at least one true literal under ``a``."""
    if len(a) != f.num_vars:
        raise VerificationError(
            f"assignment length {len(a)} != variable count {f.num_vars}")
    count = 0
    for c in f.clauses:
        if any((lit > 0) == a[abs(lit) - 1] for lit in c):
            count += 1
    return count


def brute_force_max3sat(f: CnfFormula) -> tuple[int, Assignment]:
    """Exact optimum over all 2^n assignments (n <= 25)."""
    if f.num_vars > BRUTE_FORCE_VAR_LIMIT:
        raise SizeLimitError(f"brute force limited to {BRUTE_FORCE_VAR_LIMIT} variables")
    best = -1
    best_a: Assignment = tuple([False] * f.num_vars)
    for bits in product((False, True), repeat=f.num_vars):
        v = evaluate(f, bits)
        if v > best:
            best, best_a = v, bits
            if best == f.num_clauses:
                break
    return best, best_a


def occurrence_counts(f: CnfFormula) -> list[int]:
    """Literal occurrences per variable, both polarities combined; a literal
    repeated inside one clause counts once per occurrence."""
    counts = [0] * f.num_vars
    for c in f.clauses:
        for lit in c:
            counts[abs(lit) - 1] += 1
    return counts


def check_occurrence_bound(f: CnfFormula, k: int) -> bool:
    """True iff every variable occurs (as either literal) at most k times."""
    return max(occurrence_counts(f), default=0) <= k

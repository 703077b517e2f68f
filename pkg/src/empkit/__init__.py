"""empkit: constructions, solvers and verifiers for 1xn edge-matching
puzzle reductions (Hamiltonian path / vertex-disjoint path cover / Max-3SAT)."""

__version__ = "0.1.0"

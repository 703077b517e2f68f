"""Exception types shared across the toolkit.

The CLI maps these onto process exit codes, so every failure mode that a
command can hit should be expressible as one of the classes below.
"""


class EmpkitError(Exception):
    """Base class for all toolkit errors."""


class FormatError(EmpkitError):
    """A file or text payload could not be parsed."""


class ModeMismatchError(EmpkitError):
    """Signed/unsigned labels used inconsistently."""


class VerificationError(EmpkitError):
    """A witness (tiling, cover, assignment) is structurally invalid."""


class SizeLimitError(EmpkitError):
    """An exact solver was asked to exceed its configured instance size."""


class SearchBudgetExceeded(EmpkitError):
    """A search ran out of budget; the result is indeterminate, not negative."""

    def __init__(self, budget: int):
        super().__init__(f"search budget of {budget} node expansions exhausted")
        self.budget = budget


class DegreeBoundError(EmpkitError):
    """A graph violates the in/out degree bound required by a reduction."""


class OccurrenceBoundError(EmpkitError):
    """A CNF formula violates the per-variable occurrence bound."""


class GraphInvariantError(EmpkitError):
    """A digraph violates the source/sink or simple-graph invariants."""

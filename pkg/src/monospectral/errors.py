"""Exception types shared across the library.

Every numerical failure mode the library reports deliberately gets its own
class so callers (and the CLI) can map failures to exit codes without
parsing messages.
"""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class InvalidMatrixError(ValueError):
    """Matrix fails period-matrix invariants (symmetry / positive-definite Im)."""


class NonConvergenceError(RuntimeError):
    """An iteration or adaptive scheme hit its cap before reaching tolerance."""


class DegenerateCurveError(ValueError):
    """A construction divides by a quantity that vanishes for this input."""


class PoleError(ArithmeticError):
    """A theta function in a denominator vanishes at the required argument."""


class PathClearanceError(ValueError):
    """An integration path passes too close to a branch point."""


class BranchChoiceError(RuntimeError):
    """The AGM square-root selection rule stalled (iterates not contracting)."""


class HumbertNotFoundError(LookupError):
    """No integer quintuple within the search bound satisfies the relation."""


class NoRootError(ValueError):
    """A root-finding problem has no solution for the given parameters."""

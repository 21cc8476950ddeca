"""Exception hierarchy shared by every module of the package."""


class LatticeCodeError(Exception):
    """Base class for domain errors (as opposed to file/usage errors)."""


class DimensionError(LatticeCodeError, ValueError):
    pass


class SingularMatrixError(LatticeCodeError, ValueError):
    pass


class NoSolution(LatticeCodeError):
    """A linear Diophantine equation has no integer solution."""


class NotNested(LatticeCodeError):
    """H_c @ G_s is not an integer matrix, so the shaping lattice is not a sublattice."""


class DiagonalProductMismatch(LatticeCodeError):
    pass


class BijectivityViolation(LatticeCodeError):
    """Two information vectors encoded to the same codeword."""


class OutOfRangeInfo(LatticeCodeError, ValueError):
    pass


class NotACodeword(LatticeCodeError, ValueError):
    pass


class NotCyclic(LatticeCodeError):
    pass


class DesignError(LatticeCodeError, ValueError):
    """Structural design parameters violate the gcd or rank requirements."""

"""Exception types shared across the library.

Everything raised on bad mathematical input derives from ThetaPencilError so
callers can catch one base class; genuine programming errors still surface as
the usual built-ins.
"""


class ThetaPencilError(Exception):
    """Base class for all library-specific failures."""


class ConductorMismatch(ThetaPencilError, TypeError):
    """Arithmetic between cyclotomic scalars of different conductors."""


class DivisionByZero(ThetaPencilError, ZeroDivisionError):
    """Inversion or division by the zero field element."""


class UnsupportedParameters(ThetaPencilError, ValueError):
    """Constructor parameters outside the supported range."""


class UnsupportedAlgebra(ThetaPencilError, ValueError):
    """Operation requires a classical family or a direct sum of one."""


class OrderMismatch(ThetaPencilError, ValueError):
    """Automorphism order differs from the declared one."""


class GradingFailure(ThetaPencilError, ValueError):
    """Eigenspace dimensions do not sum to dim; the matrix is not a
    finite-order automorphism over the given field."""


class DimensionMismatch(ThetaPencilError, ValueError):
    """Operands live in spaces of different dimensions."""


class SymbolicTooLarge(ThetaPencilError, ValueError):
    """Symbolic rank computation refused above the dimension cap."""


class BudgetExhausted(ThetaPencilError, RuntimeError):
    """An enumeration hit its configured budget before reaching a verdict."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class TermExplosion(ThetaPencilError, RuntimeError):
    """A polynomial product would exceed the desk-scale term cap."""


class NonHomogeneous(ThetaPencilError, ValueError):
    """Operation defined only for homogeneous polynomials."""


class ZeroPolynomial(ThetaPencilError, ValueError):
    """Operation undefined for the zero polynomial."""


class SelectionFailure(ThetaPencilError, ValueError):
    """No eigenvector average keeps the family minimally generating."""


class UnhandledCase(ThetaPencilError, NotImplementedError):
    """A case the theory leaves open; refusing to guess."""


class UnsupportedTheta(ThetaPencilError, ValueError):
    """Twisted polarizations are only certified for involutions."""


class RepeatedParameters(ThetaPencilError, ValueError):
    """Parameter list must consist of pairwise distinct values."""


class ParseError(ThetaPencilError, ValueError):
    """Malformed job-spec document; message carries the line number."""


class ValidationError(ThetaPencilError, ValueError):
    """Well-formed spec with semantically invalid content."""

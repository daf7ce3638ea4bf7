"""Error taxonomy shared by every layer of the package.

All domain failures derive from AlgebraError so callers (and the CLI exit-code
mapping) can distinguish "the input is outside the operation's domain" from
genuine bugs.  Parse-time failures derive from ExpressionSyntaxError instead.
"""


class AlgebraError(Exception):
    """Base class for domain errors raised by ring/series/symbol operations."""


class DescriptorMismatch(AlgebraError):
    """Operands live over different coefficient rings."""


class NotAUnit(AlgebraError):
    """A series (or scalar) has no invertible leading coefficient."""


class PrecisionExhausted(AlgebraError):
    """The requested coefficients are beyond the tracked truncation order."""


class NotRegular(AlgebraError):
    """reduce_mod_t needs valuation zero and no negative-exponent terms."""


class UnsupportedArgument(AlgebraError):
    """Input is outside the restricted domain of a higher-dimensional symbol."""


class NonCommutingPair(AlgebraError):
    """Commutator pairings are only defined for commuting group elements."""


class SingularCompression(AlgebraError):
    """A truncated Toeplitz operator is not invertible at the given window."""


class ZeroFunction(AlgebraError):
    """The zero rational function has no divisor support."""


class ZeroOnCurve(AlgebraError):
    """A function vanishes identically where an expansion is requested."""


class IncompleteFlagCover(AlgebraError):
    """The supplied flags miss a curve on which some argument vanishes."""


class NonUnitLeadingCoefficient(AlgebraError):
    """Numerator or denominator leading coefficient must be a unit."""


class InvalidCocycle(AlgebraError):
    """A 2-cocycle table violates the cocycle identity."""


class ExpressionSyntaxError(Exception):
    """Malformed expression or ring spec; carries line/column positions."""

    def __init__(self, message, line=1, column=0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownSymbol(ExpressionSyntaxError):
    """An identifier in an expression is not defined for the active ring."""


class DivisionByNonUnit(NotAUnit):
    """Inversion or division was attempted on a non-unit element."""

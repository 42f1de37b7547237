"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 usage, 3 math-precondition failure, 4 precision exhausted, 5 heuristic
check failure.  Anything else that escapes is a bug (exit code 1).
"""


class EFuncError(Exception):
    exit_code = 1


class UsageError(EFuncError):
    exit_code = 2


class MathPreconditionError(EFuncError, ValueError):
    exit_code = 3


class PrecisionError(EFuncError, ArithmeticError):
    exit_code = 4


class HeuristicCheckFailure(EFuncError):
    exit_code = 5


# exactmath
class NotSquarefree(MathPreconditionError):
    pass


class AutomorphismInvalid(MathPreconditionError):
    pass


class RootIsolationFailure(PrecisionError):
    pass


class DivisionByZero(MathPreconditionError, ZeroDivisionError):
    pass


class NotGalois(MathPreconditionError):
    pass


class FieldMismatch(MathPreconditionError):
    pass


class SearchExhausted(HeuristicCheckFailure):
    pass


# ratfun
class NotCoprime(MathPreconditionError):
    pass


class ParseError(UsageError, SyntaxError):
    """Syntax error in an expression; ``position`` is a 0-based offset."""

    def __init__(self, message, text="", position=0):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")

    def __str__(self):
        caret = " " * self.position + "^"
        return f"{self.message} at position {self.position}\n  {self.text}\n  {caret}"


class DivisionByZeroPolynomial(DivisionByZero):
    pass


class RootsNotInField(MathPreconditionError):
    """A polynomial has roots outside the ambient field (caller must enlarge it)."""


# efun
class InconsistentSeeds(MathPreconditionError):
    pass


class UnderdeterminedSeeds(MathPreconditionError):
    pass


class ZeroIsIrregular(MathPreconditionError):
    pass


class SystemRequired(MathPreconditionError):
    pass


class NotNormalBasis(MathPreconditionError):
    pass


class FieldLacksI(MathPreconditionError):
    pass


class RationalityViolation(EFuncError, AssertionError):
    """Raised when a norm stream is not rational; always an arithmetic bug."""


# desing
class ConstantTermZero(MathPreconditionError):
    pass


class NotASingularity(MathPreconditionError):
    pass


class IndependenceSuspect(HeuristicCheckFailure):
    pass


class LoopCap(HeuristicCheckFailure):
    pass


class CertificateInconsistent(MathPreconditionError):
    pass


# numeval
class PrecisionExhausted(PrecisionError):
    pass


class GrowthUnboundedOnPrefix(HeuristicCheckFailure):
    pass


# dioph
class InsufficientPrecision(PrecisionError):
    pass


class PrecisionTooLow(PrecisionError):
    pass


class BudgetExceeded(MathPreconditionError):
    pass


class AssertedRelationFailsNumerically(HeuristicCheckFailure):
    pass


class RationalDetected(MathPreconditionError):
    pass

"""Exception hierarchy shared by every module of the package."""


class LLDError(Exception):
    """Base class for all errors raised by lldspace."""


class NotPrime(LLDError):
    pass


class ReducibleModulus(LLDError):
    pass


class FieldTooLarge(LLDError):
    pass


class DivisionByZero(LLDError, ZeroDivisionError):
    pass


class WrongCharacteristic(LLDError):
    pass


class BudgetExceeded(LLDError):
    """An exhaustive scan would exceed the caller's budget.

    ``count`` holds the exact number of items when it is computable.
    """

    def __init__(self, what, count, budget):
        self.what = what
        self.count = count
        self.budget = budget
        super().__init__(f"{what}: {count} items exceeds budget {budget}")


class ShapeMismatch(LLDError):
    pass


class SingularTransform(LLDError):
    pass


class NotCLLD(LLDError):
    pass


class NotRReduced(LLDError):
    pass


class InvalidShape(LLDError):
    pass


class InvariantViolation(LLDError):
    """A statement that is a theorem under the recorded hypotheses failed."""


class ZeroSpace(LLDError):
    pass


class BadWitness(LLDError):
    pass


class HypothesisViolated(LLDError):
    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        msg = hypothesis if not detail else f"{hypothesis}: {detail}"
        super().__init__(msg)


class OddDimension(LLDError):
    pass


class NotAlternating(LLDError):
    pass


class NotAlternatingForm(LLDError):
    pass


class WrongAmbient(LLDError):
    pass


class WrongDimension(LLDError):
    pass


class DimensionTooLarge(LLDError):
    pass


class UnknownId(LLDError):
    pass


class BadParams(LLDError):
    pass


class VacuousClass(LLDError):
    pass


class SpaceFileError(LLDError):
    """Syntax error in a space file; ``line`` is 1-based."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class ValueOutOfRange(SpaceFileError):
    pass

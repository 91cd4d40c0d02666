"""Exception types shared across the package."""


class FeynquadError(Exception):
    """Base class for every error raised by feynquad."""


class NotDivisible(FeynquadError, ArithmeticError):
    """Polynomial division left a nonzero remainder."""

    def __init__(self, remainder, message=None):
        self.remainder = remainder
        super().__init__(message or f"division leaves remainder {remainder}")


class NoIntegerFit(FeynquadError, ValueError):
    """Counting data is not matched by an integer polynomial of the requested degree."""


class InvalidDimension(FeynquadError, ValueError):
    pass


class KTooLarge(FeynquadError, ValueError):
    pass


class OutOfRange(FeynquadError, ValueError):
    pass


class Unsupported(FeynquadError, NotImplementedError):
    pass


class Disconnected(FeynquadError, ValueError):
    pass


class TooLarge(FeynquadError, ValueError):
    pass


class ExhaustedAttempts(FeynquadError, RuntimeError):
    pass


class BudgetExceeded(FeynquadError, ValueError):
    """An enumeration would exceed the configured work budget."""

    def __init__(self, work, budget):
        self.work = work
        self.budget = budget
        super().__init__(f"enumeration size {work} exceeds budget {budget}")


class ZeroSample(FeynquadError, ValueError):
    pass

"""Exception hierarchy.  ``exit_code`` is what the CLI returns for each family."""


class FrobshotError(Exception):
    exit_code = 1


class InputError(FrobshotError, ValueError):
    exit_code = 2


class NotCoprime(InputError):
    pass


class TooSmall(InputError):
    pass


class Duplicate(InputError):
    pass


class OrderViolation(InputError):
    pass


class NotReduced(InputError):
    pass


class A1TooSmall(InputError):
    pass


class NoCoprimeTriple(InputError):
    pass


class DegenerateBasis(InputError):
    pass


class DependentVectors(InputError):
    pass


class GuardExceeded(FrobshotError):
    """A configured resource guard would be exceeded."""

    exit_code = 3


class ModulusTooLarge(GuardExceeded):
    pass


class EnumerationBudgetExceeded(GuardExceeded):
    pass


class RankTooHigh(GuardExceeded):
    pass


class CertificateFailure(FrobshotError):
    exit_code = 4

    def __init__(self, condition: str, message: str = ""):
        self.condition = condition
        super().__init__(f"{condition}: {message}" if message else condition)

"""Exception types shared by the package."""


class DomainError(ValueError):
    """An argument lies outside the range an operation supports."""


class ComputationError(ArithmeticError):
    """A numerical evaluation could not be completed.

    ``slot`` names the profile field or parameter responsible, when known.
    """

    def __init__(self, message: str, slot: str | None = None):
        super().__init__(message)
        self.slot = slot

"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A distribution or scheme parameter lies outside its domain.

    ``name`` holds the offending parameter so front-ends can point at the
    flag or field that produced it.
    """

    def __init__(self, name, message):
        super().__init__(message)
        self.name = name


class DomainError(ValueError):
    """An evaluation argument (probability, point, radius) is out of range."""

    def __init__(self, name, message):
        super().__init__(message)
        self.name = name

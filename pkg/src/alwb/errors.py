"""Exception types shared across the package."""


class AlwbError(Exception):
    """Base class for all expected tool errors."""


class ParseError(AlwbError):
    """Malformed formula, consecution or proof text."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class LanguageError(AlwbError):
    """A formula uses connectives outside the logic's language."""


class ModelError(AlwbError):
    """An evaluation or search request does not fit the model."""


class ScenarioBudgetError(AlwbError):
    """Scenario expansion would exceed the configured budget."""

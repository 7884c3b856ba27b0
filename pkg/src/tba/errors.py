class TBAError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TBAError, ValueError):
    """Values over different point domains were combined, or a value is malformed."""


class CapacityError(TBAError, RuntimeError):
    """A requested enumeration or exact check exceeds the supported size."""


class EvaluationError(TBAError, KeyError):
    """A formula mentions a name the model does not bind."""

    def __str__(self):
        return str(self.args[0]) if self.args else "evaluation error"


class FormulaSyntaxError(TBAError, ValueError):
    """Raised by the parser; carries the character offset of the problem."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position

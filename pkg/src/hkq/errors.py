"""Exception hierarchy shared by the engines and the CLI."""


class HKQError(Exception):
    """Base class; the CLI maps every subclass to exit code 1."""

    kind = "error"

    def to_json(self):
        return {"error": self.kind, "message": str(self)}


class DimensionError(HKQError, ValueError):
    kind = "dimension"


class DomainError(HKQError, ValueError):
    kind = "domain"


class NotACharacterError(DomainError):
    kind = "not-a-character"


class EmptyError(DomainError):
    kind = "empty"


class ExpansionDirectionError(DomainError):
    kind = "ambiguous-expansion-direction"


class ConvergenceError(HKQError, ArithmeticError):
    kind = "convergence"

    def __init__(self, message, value=None, error=None):
        super().__init__(message)
        self.value = value
        self.error = error

    def to_json(self):
        out = super().to_json()
        out["partial_value"] = self.value
        out["error_estimate"] = self.error
        return out

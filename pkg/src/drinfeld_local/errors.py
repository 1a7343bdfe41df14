"""Exception hierarchy shared across the package.

Every error carries a short machine-readable ``code`` that the CLI puts in
its JSON error payload.
"""


class DrinfeldError(Exception):
    code = "error"


class FieldError(DrinfeldError):
    code = "field"


class SingularMatrixError(DrinfeldError):
    code = "singular_matrix"


class ParseError(DrinfeldError):
    code = "parse"

    def __init__(self, message, text=None, column=None):
        self.message = message
        self.text = text
        self.column = column
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


class TwistMismatchError(DrinfeldError):
    code = "twist_mismatch"


class DependentBasisError(DrinfeldError):
    code = "dependent_basis"


class NotSeparableError(DrinfeldError):
    code = "not_separable"


class ExtensionCapError(DrinfeldError):
    code = "extension_cap"


class NotAnIsogenyError(DrinfeldError):
    code = "not_an_isogeny"


class ReductionError(DrinfeldError):
    """Lattice reduction hit a dependent or non-discrete configuration."""

    code = "reduction"


class PreconditionError(DrinfeldError):
    code = "precondition"

"""Exception taxonomy shared by the library and the CLI.

The CLI maps :class:`InputError` (bad parameters, malformed files) to exit
code 1 and :class:`GuardError` (a size guard refused to start an infeasible
computation) to exit code 2.
"""


class DtlabError(Exception):
    """Base class for all errors raised by this package."""


class InputError(DtlabError):
    """Invalid parameters or malformed input data."""


class GuardError(DtlabError):
    """A computation was refused because it exceeds a documented size guard."""


class ParseError(InputError):
    """Malformed instance file; carries the offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)

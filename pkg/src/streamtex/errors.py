"""Exception types shared across the package.

Invalid arguments raise plain ValueError; the classes below cover the
conditions a caller may want to handle separately (and that the CLI maps
to distinct exit codes).
"""


class StreamtexError(Exception):
    """Base class for package-specific errors."""


class DegenerateFieldError(StreamtexError):
    """The vector field is identically zero, so no streamlines exist."""


class DegenerateImageError(StreamtexError):
    """The image is all-black, so tone normalization is undefined."""


class FieldParseError(StreamtexError):
    """A field file violates its format; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FieldValidationError(StreamtexError):
    """A parsed field contains non-finite components."""

"""Exception types shared across the package."""


class PosterforgeError(Exception):
    """Base class for expected, input-level failures (CLI exit code 1)."""


class ParseError(PosterforgeError):
    """Input file is not syntactically valid."""


class ValidationError(PosterforgeError):
    """Input parsed but violates a documented invariant.

    Carries the path of the offending field (e.g. ``sections[2].extraction_ratio``)
    so callers can point at the exact location in the input file.
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class FitError(PosterforgeError):
    """Model estimation cannot proceed (too few rows, rank-deficient design)."""


class LayoutError(PosterforgeError):
    """Layout inputs outside the supported range."""

"""Exception taxonomy.

Everything raised on purpose by this package derives from
:class:`LoddkitError`, so callers (and the CLI) can catch a single type at
the boundary and map it to a data-error exit code.
"""


class LoddkitError(Exception):
    """Base class for all errors raised by loddkit."""


class NonFinite(LoddkitError, ValueError):
    """A coordinate is NaN or infinite."""


class EmptySet(LoddkitError, ValueError):
    """An operation received zero points (or zero rows of data)."""


class KTooLarge(LoddkitError, ValueError):
    """The neighbor count k is not in [1, n-1] for the given point set."""


class OmegaOutOfRange(LoddkitError, ValueError):
    """The regulator omega lies outside the open interval (0, 1)."""


class InvalidParams(LoddkitError, ValueError):
    """A parameter combination violates the parameter-bundle invariants.

    Covers the violations that have no more specific name: k < 1,
    ratio outside (0, 1], a negative cluster count, or a bundle where the
    fixed ratio and the adaptive flag do not pick exactly one split rule.
    """


class AllCoincident(LoddkitError, ValueError):
    """Every neighbor coincides with the query point; no directions remain."""


class TooFewDirections(LoddkitError, ValueError):
    """Fewer than two usable (non-coincident) neighbor directions."""


class DimensionTooSmall(LoddkitError, ValueError):
    """The ambient or intrinsic dimension is below the minimum of 2."""


class WrongDimension(LoddkitError, ValueError):
    """Input has a different dimensionality than the operation supports."""


class DegenerateData(LoddkitError, ValueError):
    """The data carries no variance (all points identical)."""


class ConstraintViolated(LoddkitError, ValueError):
    """A structural precondition fails, e.g. d > log2(n) in a bound formula."""


class CTooLarge(LoddkitError, ValueError):
    """More clusters requested than points available."""


class AllBoundary(LoddkitError, ValueError):
    """Detection left no internal points to cluster."""


class LengthMismatch(LoddkitError, ValueError):
    """Two per-point vectors differ in length."""


class ParseError(LoddkitError, ValueError):
    """A data file is structurally unreadable at a specific location."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        super().__init__(message)
        self.row = row
        self.col = col


class RaggedRows(ParseError):
    """Rows of a delimited file do not all have the same width."""


class NonNumeric(ParseError):
    """A feature cell could not be parsed as a number."""


class IoError(LoddkitError, OSError):
    """Reading or writing a file failed at the OS level."""


class PlacementFailure(LoddkitError, RuntimeError):
    """A generator could not place requested shapes within its retry budget."""

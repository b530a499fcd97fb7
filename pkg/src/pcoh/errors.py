"""Exception types shared across the package."""


class PcohError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(PcohError, ValueError):
    """Webs, vectors or matrices whose sizes do not line up."""


class ParseError(PcohError, ValueError):
    """Malformed scalar, label or file contents."""


class ResourceError(PcohError, RuntimeError):
    """An enumeration would exceed a configured size bound."""


class DegreeOverflowError(ResourceError):
    """A multiset is outside the degree truncation of an exponential web."""


class ModeError(PcohError, ValueError):
    """A glueing operation needs data that the object's mode cannot supply."""


class InfiniteEntryError(PcohError, ValueError):
    """An infinite scalar was passed where only finite ones are accepted."""

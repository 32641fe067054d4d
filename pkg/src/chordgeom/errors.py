"""Exception types shared across the toolkit."""


class ChordGeomError(Exception):
    """Base class for all toolkit errors."""


class CurveParseError(ChordGeomError):
    """A curve spec string does not match the grammar.

    Carries ``position``, the character offset of the offending token.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ConvexityError(ChordGeomError):
    """Requested parameters do not describe a strictly convex graph."""


class DomainError(ChordGeomError):
    """An abscissa lies outside the curve's open domain."""


class NoChordError(ChordGeomError):
    """No chord exists at the requested normal offset (offset too large)."""


class DegenerateGeometryError(ChordGeomError):
    """The chord construction degenerated (arc not graph-like, or
    endpoint tangents not transverse)."""


class QuadratureError(ChordGeomError):
    """Adaptive integration could not reach tolerance within its budget."""

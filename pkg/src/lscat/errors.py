"""Exception types shared across the package."""


class LscatError(Exception):
    """Base class for all package-specific errors."""


class MalformedComplex(LscatError):
    """A complex violates the semi-simplicial identities or its indexing contract."""


class NotClosed(LscatError):
    """Operation requires a closed complex and the input is not one."""


class NotConnected(LscatError):
    """Operation requires a connected complex."""


class UnknownGenerator(LscatError):
    """Requested generator key is not in the catalog."""


class BadLensParams(LscatError):
    """Lens space parameters must be coprime with p >= 2."""


class NoTriangulation(LscatError):
    """The prime is catalog-only and ships without a triangulation."""


class DimensionOverflow(LscatError):
    """Product would exceed the supported total dimension."""


class DegreeOverflow(LscatError):
    """Cochain degree out of range for the complex."""


class ModulusMismatch(LscatError):
    """Ring operands use different coefficient moduli."""


class CompositeModulus(LscatError):
    """Operation is restricted to prime moduli."""


class NonOrientable(LscatError):
    """Operation is stated for orientable manifolds only."""


class UnknownPi1(LscatError):
    """Fundamental group class could not be certified."""


class ParseError(LscatError):
    """Input text failed to parse; carries the byte position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position

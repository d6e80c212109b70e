"""Exception hierarchy shared across the package."""


class StableTropError(Exception):
    """Base class for all package-specific errors."""


class ParseError(StableTropError):
    """A document does not conform to its interchange schema."""


class ValidationError(StableTropError):
    """Input violates a structural contract (not a complex, not balanced, ...)."""


class DimensionError(StableTropError):
    """Ambient or cycle dimensions are incompatible for the operation."""


class GenericityError(StableTropError):
    """No certified generic displacement vector could be produced."""

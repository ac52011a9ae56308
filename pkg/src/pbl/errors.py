"""Exception types shared across the package."""


class PblError(Exception):
    """Base class for every error raised by the toolkit."""


class BadInput(PblError):
    """Malformed user input (shape, schema, parameter range)."""


class AllFormsZero(PblError):
    pass


class IrregularPencil(PblError):
    pass


class InternalRankContradiction(PblError):
    pass


class BadT(BadInput):
    pass


class TooSmall(BadInput):
    pass


class BadParams(BadInput):
    pass


class NotOnHypersurface(BadInput):
    pass


class UnsupportedModel(PblError):
    pass


class NoImageEquation(PblError):
    pass


class UnknownTag(BadInput):
    pass


class AsymmetricUnknown(PblError):
    pass


class InvalidDrum(BadInput):
    pass

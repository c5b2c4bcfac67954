"""Exception hierarchy shared by all modules."""


class GrassError(Exception):
    """Base class for every error raised by intgrass."""


class InvalidParameter(GrassError, ValueError):
    pass


class PreconditionError(GrassError, ValueError):
    pass


class ChamberError(PreconditionError):
    """The proposed ample class does not lie in an open GIT chamber."""


class UnknownStructure(GrassError):
    """A structural hypothesis (e.g. minimal relevant faces are 2-dim) could not be verified."""


class NonIntegralClass(GrassError, ArithmeticError):
    pass


class NoCertificate(PreconditionError):
    pass


class OracleTooLarge(GrassError):
    pass


class NeedsPermutation(PreconditionError):
    pass


class NotApplicable(GrassError):
    pass


class NoContraction(GrassError):
    """The class is ample, so the associated morphism contracts nothing."""

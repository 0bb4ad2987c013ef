"""Exception hierarchy shared by all modules."""


class SFTError(Exception):
    """Base class for every error raised by sftc."""


class MalformedInput(SFTError):
    pass


class NotSquare(SFTError):
    pass


class DimensionMismatch(SFTError):
    pass


class SignatureMismatch(SFTError):
    pass


class NoCycle(SFTError):
    pass


class NotEssential(SFTError):
    pass


class NotIrreducible(SFTError):
    pass


class NoRealRoot(SFTError):
    pass


class ZeroSpectralRadius(SFTError):
    pass


class RefinementBudget(SFTError):
    """Bisection would exceed the refinement cap."""


class NotIntertwining(SFTError):
    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class NotCovering(SFTError):
    def __init__(self, message, vertex=None, side=None):
        super().__init__(message)
        self.vertex = vertex
        self.side = side


class NotSurjective(SFTError):
    pass


class ZeroMatrix(SFTError):
    pass


class CodomainMismatch(SFTError):
    pass


class MiddleMismatch(SFTError):
    pass


class WitnessInvalid(SFTError):
    pass

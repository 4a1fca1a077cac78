"""Exception hierarchy shared by all modules."""


class CoherentInfoError(ValueError):
    """Base class for every error raised by this package."""


class NotSquare(CoherentInfoError):
    pass


class NotHermitian(CoherentInfoError):
    pass


class NotPSD(CoherentInfoError):
    pass


class NotNormalized(CoherentInfoError):
    pass


class NoConvergence(CoherentInfoError):
    pass


class DimMismatch(CoherentInfoError):
    pass


class BlochNormExceeded(CoherentInfoError):
    pass


class NotUnitary(CoherentInfoError):
    pass


class NotProjector(CoherentInfoError):
    pass


class NotOrthonormal(CoherentInfoError):
    pass


class NotPOVM(CoherentInfoError):
    pass


class ProjectorsOverlap(CoherentInfoError):
    pass


class CPViolated(CoherentInfoError):
    pass


class NotTP(CoherentInfoError):
    pass


class DomainError(CoherentInfoError):
    """A physical parameter lies outside its admissible range."""


class ChannelFileError(CoherentInfoError):
    """Malformed channel or density-matrix text file."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line

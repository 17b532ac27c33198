"""Exception types shared across the package."""


class ParatwistError(Exception):
    pass


class SingularMatrixError(ParatwistError):
    """Matrix is not invertible."""


class NotSymplecticSimilitudeError(ParatwistError):
    """Invertible matrix fails t(g) J g = lambda J for every scalar lambda."""


class RealizationMismatchError(ParatwistError):
    """Binary operation on matrices tagged with different symplectic forms."""


class UnsupportedRootOfUnityError(ParatwistError):
    """Exponential weight would need a root of unity outside the active ring."""


class WindowError(ParatwistError):
    """Requested coefficients are not complete for the stored window."""


class LevelError(ParatwistError):
    """Prime/level constraint violated (e.g. twist prime divides the level)."""

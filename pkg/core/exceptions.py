"""
Algebra Errors
Exception hierarchy shared by the scalar, operator and verification layers
"""


class AlgebraError(Exception):
    """Base class for every computational error raised by the package."""


class NonCancellingPole(AlgebraError):
    """A factor product has more (1 - 1) factors in the denominator than in the numerator."""


class ProbeCollision(AlgebraError):
    """A probe evaluation hit a zero denominator; re-seeding is expected to fix it."""


class PrecisionLoss(AlgebraError):
    """An eps-series division was attempted on a series known only up to its error term."""


class CapExceeded(AlgebraError):
    """A shuffle computation needs more variables than the configured cap."""


class TrueSingularity(AlgebraError):
    """An iterated limit of a shuffle element is not removable."""


class ReconstructionOverflow(AlgebraError):
    """A series times its certified denominator failed to truncate inside the window."""


class TorusMismatch(AlgebraError):
    """Two cross-torus operators were composed with incompatible torus tags."""


class GradingError(AlgebraError):
    """An operator produced a coefficient that violates its declared degree shift."""

"""Exception types for isospec.

Each numerical refusal has its own class so callers (and the CLI exit-code
mapping) can tell input problems, regime violations, and verification
failures apart.
"""


class IsospecError(Exception):
    """Base class for all isospec errors."""


class DimensionError(IsospecError):
    """Operand shapes are incompatible with the requested operation."""


class SingularityError(IsospecError):
    """A matrix or vector family that must be invertible is rank deficient."""


class RegimeError(IsospecError):
    """None of the supported construction regimes applies, or a stated
    regime precondition fails; the message names the violated condition."""


class KernelError(IsospecError):
    """An index with vanishing pairing constant was used where a strictly
    positive one is required."""


class PairingError(IsospecError):
    """A biorthogonal system has the wrong pairing normalization for the
    requested construction (level mismatch)."""


class GrowthError(IsospecError):
    """No admissible norm-growth bound exists with exponent alpha <= 1/2."""


class DivergenceError(IsospecError):
    """Series evaluation requested outside the convergence disk."""


class MomentError(IsospecError):
    """No closed-form radial measure is available for the given sequence."""


class DegenerateError(IsospecError):
    """A construction degenerated (zero intertwiner, empty surviving set)."""


class SpectrumError(IsospecError):
    """Simple spectrum required but repeated eigenvalues were supplied."""


class ParameterError(IsospecError):
    """Algebraic parameter constraint violated."""


class SeedVectorError(IsospecError):
    """A supplied seed vector is not annihilated by the required operator."""


class NumericalError(IsospecError):
    """An iterative kernel failed to converge; carries a residual report."""

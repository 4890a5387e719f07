"""Exception types raised by the simulator."""


class MerminCavError(Exception):
    """Base class for all domain errors raised by this package."""


class NotHermitianError(MerminCavError):
    """Matrix handed to a Hermitian-only routine is not Hermitian."""


class SingularMatrixError(MerminCavError):
    """Linear system is singular or too ill-conditioned to solve reliably."""


class NotUnitaryError(MerminCavError):
    """Gate matrix is not unitary within tolerance."""


class NotSymmetricSectorError(MerminCavError):
    """State has weight outside the symmetric (spin-3/2) sector."""


class NoScheduleFoundError(MerminCavError):
    """No commensurate preparation time satisfies the phase conditions."""


class NonCommensurateTimeError(MerminCavError):
    """Duration is not an integer number of detuning periods."""


class TruncationError(MerminCavError):
    """Fock-space cutoff too small for the requested evolution or solve."""


class NegativePhotonNumberError(MerminCavError):
    """Steady-state photon number came out negative beyond tolerance."""


class MissingParametersError(MerminCavError):
    """Dispersive validity check requires couplings and detunings."""


class GridTooCoarseError(MerminCavError):
    """Detuning grid has no point close enough to some cavity-pull shift."""


class OutOfRangeError(MerminCavError):
    """Correlator value outside the physical range [-1, 1]."""


class ConfigError(MerminCavError):
    """Configuration file is missing, malformed, or fails validation."""


class ParseError(MerminCavError):
    """State or angle specification string cannot be parsed."""


class ZeroNormError(MerminCavError):
    """State specification has (numerically) zero norm."""

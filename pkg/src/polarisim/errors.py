"""Exception and warning types shared across the package."""


class PolarisimError(Exception):
    """Base class for all package-specific errors."""


class OutOfRange(PolarisimError):
    """A parameter violates its allowed range; `field` names the offender."""

    def __init__(self, field, message=None):
        self.field = field
        super().__init__(message or f"parameter out of range: {field}")


class ConfigError(PolarisimError):
    """Malformed configuration input (file, key, or override syntax)."""


class DivergentResponse(PolarisimError):
    """A response function was evaluated exactly on an undamped pole."""


class DegenerateResonances(PolarisimError):
    """Upper and lower polaritons coincide; splitting-based formulas undefined."""


class UnsupportedElectricalAnharmonicity(PolarisimError):
    """The damped mode matrix is only defined for zero electrical anharmonicity."""


class DegenerateLinewidths(PolarisimError):
    """kappa = 3*gamma_m is a singular point of the damped mode matrix."""


class LeadingZero(PolarisimError):
    """Cubic solver called with a vanishing leading coefficient."""


class UnstableConfiguration(PolarisimError):
    """A response pole has non-negative imaginary part; dynamics would not decay."""


class StepTooLarge(PolarisimError):
    """Integrator step exceeds the accuracy bound for the rotating frame."""


class IncompleteDecay(PolarisimError):
    """Trajectory has not rung down enough for a clean spectral ratio."""


class SpectralHole(PolarisimError):
    """Input-pulse spectrum vanishes somewhere on the requested grid."""


class MissingPeak(PolarisimError):
    """No local maximum found inside the expected search window."""


class NoConvergence(PolarisimError):
    """Iterative fit exhausted its iteration budget before converging."""


class DegenerateData(PolarisimError):
    """Data set too small or featureless to constrain the fit."""


class ValidityWarning(UserWarning):
    """An approximate formula was evaluated outside its derivation's regime."""

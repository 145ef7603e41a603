"""polarisim: linear and pump-probe spectra of vibrational polaritons.

A single vibrational mode ensemble strongly coupled to a cavity, driven and
read out through the cavity ports.  The package computes the closed-form
transmission/reflection/absorption response, the differential transmission
of a partially pumped ensemble, and the transient polariton resonances, and
validates the closed forms against an independent time-domain integration.

Frequencies are wavenumbers (cm^-1) used directly as angular frequencies;
the matching internal time unit is 1/(2*pi*c*1cm^-1), about 5.31 ps.
"""

__version__ = "0.1.0"

from .analysis import (FpuFit, LorentzianFit, Peak, PeakList, SweepResult,
                       detuning_sweep, find_peaks, fit_fpu, fit_lorentzian,
                       fpu_sweep, load_spectrum_csv, up_redshift)
from .errors import (ConfigError, DegenerateData, DegenerateLinewidths,
                     DegenerateResonances, DivergentResponse, IncompleteDecay,
                     LeadingZero, MissingPeak, NoConvergence, OutOfRange,
                     PolarisimError, SpectralHole, StepTooLarge,
                     UnstableConfiguration, UnsupportedElectricalAnharmonicity,
                     ValidityWarning)
from .modes import (ModeMatrix, ResonanceSet, build_h, build_h_damped,
                    cubic_roots, eigenvalues, match_poles_eigenvalues, poles,
                    rabi_splitting)
from .params import (DEFAULT_GRID, INTERNAL_TIME_PS, DerivedRates,
                     SpectralGrid, SystemParams, apply_overrides, derived,
                     load_config, paper_defaults, params_from_mapping,
                     validate)
from .response import (DenominatorPoly, PolarizationComponents, Spectrum,
                       TransferFunction, absorption_linear,
                       absorption_spectrum, absorption_sum_estimate, chi_p1,
                       chi_p3, dark_state_absorption, denominator_poly,
                       pump_probe_spectrum, polariton_absorption,
                       polarization_components, reflection_spectrum,
                       reflection_transfer, transmission_spectrum,
                       transmission_transfer, write_spectrum_csv,
                       write_transfer_csv)
from .timedomain import (DEFAULT_ORACLE_GRID, Pulse, Trajectory, oracle_check,
                         simulate, transfer_from_trajectory,
                         write_trajectory_csv)

__all__ = [
    "__version__",
    # parameters
    "SystemParams", "DerivedRates", "SpectralGrid", "DEFAULT_GRID",
    "INTERNAL_TIME_PS", "validate", "derived", "paper_defaults",
    "params_from_mapping", "load_config", "apply_overrides",
    # frequency-domain response
    "TransferFunction", "Spectrum", "PolarizationComponents",
    "DenominatorPoly", "chi_p1", "chi_p3", "denominator_poly",
    "transmission_transfer", "reflection_transfer", "transmission_spectrum",
    "reflection_spectrum", "pump_probe_spectrum", "absorption_linear",
    "absorption_spectrum", "polariton_absorption", "absorption_sum_estimate",
    "dark_state_absorption", "polarization_components", "write_spectrum_csv",
    "write_transfer_csv",
    # modes and resonances
    "ModeMatrix", "ResonanceSet", "build_h", "build_h_damped", "cubic_roots",
    "eigenvalues", "poles", "match_poles_eigenvalues", "rabi_splitting",
    # time domain
    "Pulse", "Trajectory", "simulate", "transfer_from_trajectory",
    "oracle_check", "DEFAULT_ORACLE_GRID", "write_trajectory_csv",
    # analysis
    "Peak", "PeakList", "find_peaks", "up_redshift", "SweepResult",
    "detuning_sweep", "fpu_sweep", "LorentzianFit", "fit_lorentzian",
    "FpuFit", "fit_fpu", "load_spectrum_csv",
    # errors
    "PolarisimError", "OutOfRange", "ConfigError", "DivergentResponse",
    "DegenerateResonances", "UnsupportedElectricalAnharmonicity",
    "DegenerateLinewidths", "LeadingZero", "UnstableConfiguration",
    "StepTooLarge", "IncompleteDecay", "SpectralHole", "MissingPeak",
    "NoConvergence", "DegenerateData", "ValidityWarning",
]

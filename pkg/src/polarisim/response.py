"""Closed-form frequency-domain response of the pumped cavity-vibration system.

The model: N identical anharmonic molecular vibrations (fundamental omega_0,
1->2 transition omega_12 = omega_0 - 2*delta) collectively coupled to one
cavity mode (omega_c, linewidth kappa) with collective strength G1; a pump
prepares a stationary excited fraction f_pu which activates the 1->2
polarization channel with strength (G1+G3)*sqrt-type weights.  Everything
here is a rational function of omega with complex linewidth offsets.

All frequencies in cm^-1 (see params module for the unit convention).
"""

from __future__ import annotations

import os
import tempfile
import warnings
from dataclasses import dataclass, replace, field

import numpy as np

from .errors import DegenerateResonances, DivergentResponse, ValidityWarning
from .params import SpectralGrid, SystemParams, derived, validate

# Imaginary shift used to regularize the undamped polarization kernels.
POLE_EPSILON = 1e-6  # cm^-1

# CSV float format: 17 significant digits, fixed scientific notation.
_FMT = "%.16e"


# ---------------------------------------------------------------------------
# container types

@dataclass(frozen=True)
class TransferFunction:
    """Complex field ratio per grid point (dimensionless)."""

    grid: SpectralGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", v)
        if v.shape != (self.grid.n_points,):
            raise ValueError("values length must equal grid point count")
        if not np.all(np.isfinite(v)):
            raise ValueError("transfer function contains non-finite values")


@dataclass(frozen=True)
class Spectrum:
    """Real-valued spectrum per grid point (intensity or signed difference)."""

    grid: SpectralGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.shape != (self.grid.n_points,):
            raise ValueError("values length must equal grid point count")
        if not np.all(np.isfinite(v)):
            raise ValueError("spectrum contains non-finite values")


@dataclass(frozen=True)
class PolarizationComponents:
    """Pump-probe polarization kernels (response per unit driving field).

    p_np is the no-pump kernel of the fundamental transition; p_gsb and p_se
    are the ground-state-bleach and stimulated-emission corrections (equal by
    construction, each -f_pu times p_np); p_esa is the excited-state
    absorption kernel on the 1->2 transition.
    """

    p_np: complex
    p_gsb: complex
    p_se: complex
    p_esa: complex

    @property
    def p_01(self) -> complex:
        """Net fundamental-transition kernel; carries the (1 - 2 f_pu) prefactor."""
        return self.p_np + self.p_gsb + self.p_se


# ---------------------------------------------------------------------------
# susceptibilities

def chi_p3(p: SystemParams, omega):
    """Pump-activated 1->2 polarization per unit cavity field.

    chi_3(omega) = 2 f_pu (G1+G3) / (omega - omega_12 + i*gamma_3).

    Parameters
    ----------
    p : SystemParams
    omega : float or ndarray, cm^-1

    Returns
    -------
    complex or complex ndarray
    """
    validate(p)
    d = derived(p)
    w = np.asarray(omega, dtype=float)
    den = w - d.omega_12 + 1j * d.gamma_3
    if np.any(den == 0):
        raise DivergentResponse("chi_p3 evaluated exactly on its undamped pole")
    out = 2.0 * p.f_pu * (p.g1_coll + d.g3_coll) / den
    return out if w.ndim else complex(out)


def chi_p1(p: SystemParams, omega):
    """Fundamental polarization per unit cavity field.

    chi_1(omega) = [G1 + 2*G3*f_pu - 2*delta*chi_3(omega)]
                   / (omega - omega_0 + i*gamma_1).

    The 2*delta*chi_3 term is the anharmonic back-action of the 1->2
    coherence on the fundamental.
    """
    validate(p)
    d = derived(p)
    w = np.asarray(omega, dtype=float)
    den = w - p.omega_0 + 1j * d.gamma_1
    if np.any(den == 0):
        raise DivergentResponse("chi_p1 evaluated exactly on its undamped pole")
    num = p.g1_coll + 2.0 * d.g3_coll * p.f_pu - 2.0 * p.delta * chi_p3(p, w)
    out = num / den
    return out if w.ndim else complex(out)


# ---------------------------------------------------------------------------
# denominator cubic

@dataclass(frozen=True)
class DenominatorPoly:
    """The transfer-function denominator as an expanded monic cubic.

    Coefficients are carried in the shifted variable x = omega - ref_omega
    (ref_omega = omega_0): expanding in absolute omega loses ~8 digits to
    cancellation near the resonances, while the shifted form evaluates to
    relative ~1e-13 against the factored product.  `coefficients_in_omega`
    returns the literal absolute-omega coefficients when needed.

    coeffs = (c3, c2, c1, c0) with c3 = 1:  D = x^3 + c2 x^2 + c1 x + c0.
    """

    ref_omega: float
    coeffs: tuple = field(repr=False)

    def __call__(self, omega):
        """Evaluate D(omega) by Horner's rule in the shifted variable."""
        x = np.asarray(omega, dtype=float) - self.ref_omega
        c3, c2, c1, c0 = self.coeffs
        out = ((c3 * x + c2) * x + c1) * x + c0
        return out if x.ndim else complex(out)

    def coefficients_in_omega(self):
        """Expanded coefficients (d3, d2, d1, d0) in absolute omega."""
        c3, c2, c1, c0 = self.coeffs
        s = self.ref_omega
        d3 = c3
        d2 = c2 - 3.0 * c3 * s
        d1 = c1 - 2.0 * c2 * s + 3.0 * c3 * s * s
        d0 = c0 - c1 * s + c2 * s * s - c3 * s ** 3
        return (d3, d2, d1, d0)


def denominator_poly(p: SystemParams) -> DenominatorPoly:
    """Expanded cubic denominator of the transmission transfer function.

    Factored form:
        (omega - omega_c + i*kappa/2)(omega - omega_0 + i*gamma_1)
        (omega - omega_12 + i*gamma_3)
        - [G1^2 (omega - omega_12 + 3i*gamma_m/2)
           + f_pu (4 G1 G3 (omega - omega_0 + i*gamma_m)
                   + 2 G3^2 (omega - omega_0 + i*gamma_m/2)
                   - 4 delta G1^2)]
    """
    validate(p)
    d = derived(p)
    G1 = p.g1_coll
    G3 = d.g3_coll
    # shifted roots of the bare factors: x = omega - omega_0
    a = -(p.omega_c - p.omega_0) + 0.5j * p.kappa
    b = 1j * d.gamma_1
    c = 2.0 * p.delta + 1j * d.gamma_3
    c2 = a + b + c
    c1 = a * b + b * c + c * a - G1 * G1 - p.f_pu * (4.0 * G1 * G3 + 2.0 * G3 * G3)
    c0 = (a * b * c
          - G1 * G1 * (2.0 * p.delta + 1.5j * p.gamma_m)
          - p.f_pu * (4.0 * G1 * G3 * 1j * p.gamma_m
                      + 2.0 * G3 * G3 * 0.5j * p.gamma_m
                      - 4.0 * p.delta * G1 * G1))
    return DenominatorPoly(ref_omega=p.omega_0, coeffs=(1.0 + 0.0j, c2, c1, c0))


def _denominator_factored(p: SystemParams, x):
    """D evaluated from the factored form; x = omega - omega_0 (array or scalar)."""
    d = derived(p)
    G1 = p.g1_coll
    G3 = d.g3_coll
    cav = x - (p.omega_c - p.omega_0) + 0.5j * p.kappa
    m1 = x + 1j * d.gamma_1
    m3 = x + 2.0 * p.delta + 1j * d.gamma_3
    anharmonic = (4.0 * G1 * G3 * (x + 1j * p.gamma_m)
                  + 2.0 * G3 * G3 * (x + 0.5j * p.gamma_m)
                  - 4.0 * p.delta * G1 * G1)
    return cav * m1 * m3 - G1 * G1 * (x + 2.0 * p.delta + 1.5j * p.gamma_m) - p.f_pu * anharmonic


# ---------------------------------------------------------------------------
# transfer functions and spectra

def transmission_transfer(p: SystemParams, omega):
    """Transmitted-field ratio for a probe at omega.

    t(omega) = -i (kappa/2) (omega - omega_0 + i*gamma_1)
               (omega - omega_12 + i*gamma_3) / D(omega)

    with D the cubic from denominator_poly.  |t|^2 is the transmission.
    """
    validate(p)
    d = derived(p)
    w = np.asarray(omega, dtype=float)
    x = w - p.omega_0
    den = _denominator_factored(p, x)
    if np.any(den == 0):
        raise DivergentResponse("transmission denominator vanishes (lossless pole)")
    num = -0.5j * p.kappa * (x + 1j * d.gamma_1) * (x + 2.0 * p.delta + 1j * d.gamma_3)
    out = num / den
    return out if w.ndim else complex(out)


def _transmission_transfer_unpumped(p: SystemParams, omega):
    """Same formula with every pump term deleted symbolically (f_pu absent).

    Kept as a genuinely separate code path so tests can confirm the f_pu = 0
    limit of the full expression against the hand-reduced one.
    """
    d = derived(p)
    G1 = p.g1_coll
    w = np.asarray(omega, dtype=float)
    x = w - p.omega_0
    cav = x - (p.omega_c - p.omega_0) + 0.5j * p.kappa
    m1 = x + 1j * d.gamma_1
    m3 = x + 2.0 * p.delta + 1j * d.gamma_3
    den = cav * m1 * m3 - G1 * G1 * (x + 2.0 * p.delta + 1.5j * p.gamma_m)
    if np.any(den == 0):
        raise DivergentResponse("transmission denominator vanishes (lossless pole)")
    out = -0.5j * p.kappa * m1 * m3 / den
    return out if w.ndim else complex(out)


def reflection_transfer(p: SystemParams, omega):
    """Reflected-field ratio, r(omega) = -1 - t(omega).

    Convention: the reflected output is the (sign-flipped) input plus the
    leaked intracavity field; the -1 offset is the unique choice for which
    T + R + A = 1 holds exactly in the linear model.  For the empty cavity
    r(omega_c) = 0 (full transmission on resonance).
    """
    t = transmission_transfer(p, omega)
    return -1.0 - t


def transmission_spectrum(p: SystemParams, grid: SpectralGrid = None) -> Spectrum:
    """|t|^2 on the grid at the stored f_pu."""
    from .params import DEFAULT_GRID

    grid = grid or DEFAULT_GRID
    t = transmission_transfer(p, grid.frequencies())
    return Spectrum(grid, np.abs(t) ** 2)


def reflection_spectrum(p: SystemParams, grid: SpectralGrid = None) -> Spectrum:
    """|r|^2 on the grid at the stored f_pu."""
    from .params import DEFAULT_GRID

    grid = grid or DEFAULT_GRID
    r = reflection_transfer(p, grid.frequencies())
    return Spectrum(grid, np.abs(r) ** 2)


def pump_probe_spectrum(p: SystemParams, grid: SpectralGrid = None) -> Spectrum:
    """Differential transmission: T at the stored f_pu minus T at f_pu = 0."""
    from .params import DEFAULT_GRID

    grid = grid or DEFAULT_GRID
    w = grid.frequencies()
    t_pumped = transmission_transfer(p, w)
    t_dark = transmission_transfer(replace(p, f_pu=0.0), w)
    return Spectrum(grid, np.abs(t_pumped) ** 2 - np.abs(t_dark) ** 2)


# ---------------------------------------------------------------------------
# linear absorption and its strong-coupling estimates

def absorption_linear(p: SystemParams, omega):
    """Linear-regime absorption (pump and anharmonicities ignored).

    A(omega) = G1^2 gamma_m kappa/2
               / |(omega - omega_0 + i*gamma_m/2)(omega - omega_c + i*kappa/2)
                  - G1^2|^2
    """
    validate(p)
    w = np.asarray(omega, dtype=float)
    z = (w - p.omega_0 + 0.5j * p.gamma_m) * (w - p.omega_c + 0.5j * p.kappa) - p.g1_coll ** 2
    mag2 = z.real ** 2 + z.imag ** 2
    if np.any(mag2 == 0):
        raise DivergentResponse("linear absorption evaluated on an undamped pole")
    out = p.g1_coll ** 2 * p.gamma_m * p.kappa / 2.0 / mag2
    return out if w.ndim else float(out)


def absorption_spectrum(p: SystemParams, grid: SpectralGrid = None) -> Spectrum:
    """Linear absorption on the grid."""
    from .params import DEFAULT_GRID

    grid = grid or DEFAULT_GRID
    return Spectrum(grid, absorption_linear(p, grid.frequencies()))


def polariton_absorption(p: SystemParams, res) -> tuple:
    """On-resonance absorption estimates (A_LP, A_UP) at the two polaritons.

    A(omega_LP) = 2 G1^2 gamma_m kappa / [gamma_LP^2 (Omega_R^2 + gamma_UP^2/4)]
    and the LP<->UP partner.  `res` supplies the polariton positions and
    full linewidths (see modes.ResonanceSet).  Accurate deep in strong
    coupling; a ValidityWarning is emitted when linewidths approach the
    splitting.
    """
    validate(p)
    omega_r = res.omega_up - res.omega_lp
    if omega_r <= 0:
        raise DegenerateResonances("polariton splitting must be positive")
    g_lp, g_up = res.gamma_lp, res.gamma_up
    if max(g_lp, g_up) > 0.3 * omega_r:
        warnings.warn("linewidth/splitting ratio exceeds 0.3; estimate outside validity",
                      ValidityWarning, stacklevel=2)
    pref = 2.0 * p.g1_coll ** 2 * p.gamma_m * p.kappa
    a_lp = pref / (g_lp ** 2 * (omega_r ** 2 + g_up ** 2 / 4.0))
    a_up = pref / (g_up ** 2 * (omega_r ** 2 + g_lp ** 2 / 4.0))
    return (a_lp, a_up)


def absorption_sum_estimate(p: SystemParams) -> float:
    """Detuning-dependent estimate of A(omega_LP) + A(omega_UP).

    Uses the shared strong-coupling linewidth gamma_bar = (gamma_m+kappa)/2
    for both polaritons; the detuning enters only through
    sqrt(G1^2 + (omega_c-omega_0)^2/4), which is why the sum is maximized at
    zero detuning.  Warnings (never exceptions) flag evaluations outside the
    estimate's validity.
    """
    validate(p)
    g_bar = 0.5 * (p.gamma_m + p.kappa)
    half_split = np.sqrt(p.g1_coll ** 2 + (p.omega_c - p.omega_0) ** 2 / 4.0)
    if p.gamma_m == 0 or p.kappa == 0:
        warnings.warn("gamma_m = 0 or kappa = 0: estimate outside validity",
                      ValidityWarning, stacklevel=2)
    elif g_bar > 0.3 * 2.0 * half_split:
        warnings.warn("linewidth/splitting ratio exceeds 0.3; estimate outside validity",
                      ValidityWarning, stacklevel=2)
    if g_bar == 0 or half_split == 0:
        return float("nan")
    return float(p.g1_coll ** 2 * p.gamma_m * p.kappa / (2.0 * half_split) * (2.0 / g_bar ** 2))


def dark_state_absorption(p: SystemParams) -> float:
    """Absorption at omega_0 from the uncoupled (dark) molecular reservoir.

    Approximate form
        A(omega_0) ~= G1^2 gamma_m kappa/2
                      / (G1^4 + G1^2 kappa gamma_m/2
                         + gamma_m^2 (omega_0-omega_c)^2 / 4);
    relative to the exact linear absorption at omega_0 this drops a
    kappa^2 gamma_m^2/16 term in the denominator (0.05% at the default
    parameters), which is what makes its detuning dependence slow.
    """
    validate(p)
    G2 = p.g1_coll ** 2
    den = (G2 * G2 + G2 * p.kappa * p.gamma_m / 2.0
           + p.gamma_m ** 2 * (p.omega_0 - p.omega_c) ** 2 / 4.0)
    if den == 0:
        return float("nan")
    return float(G2 * p.gamma_m * p.kappa / 2.0 / den)


# ---------------------------------------------------------------------------
# pump-probe polarization decomposition

def polarization_components(p: SystemParams, omega) -> PolarizationComponents:
    """Split the pump-probe polarization into its undamped component kernels.

    The four kernels (per unit driving field, regularized by +i*POLE_EPSILON):

        p_np  = -i G1^2 / (omega - omega_0 + i*eps)          no pump
        p_gsb = p_se = -f_pu * p_np                          bleach / emission
        p_esa = -i 2 f_pu (G1+G3)^2 / (omega - omega_12 + i*eps)

    The net fundamental kernel p_01 = p_np + p_gsb + p_se carries the
    (1 - 2 f_pu) saturation prefactor and vanishes at f_pu = 0.5.
    """
    validate(p)
    d = derived(p)
    w = float(omega)
    p_np = -1j * p.g1_coll ** 2 / (w - p.omega_0 + 1j * POLE_EPSILON)
    p_gsb = -p.f_pu * p_np
    p_se = p_gsb
    p_esa = (-1j * 2.0 * p.f_pu * (p.g1_coll + d.g3_coll) ** 2
             / (w - d.omega_12 + 1j * POLE_EPSILON))
    return PolarizationComponents(p_np=complex(p_np), p_gsb=complex(p_gsb),
                                  p_se=complex(p_se), p_esa=complex(p_esa))


# ---------------------------------------------------------------------------
# serialization

def _atomic_write_text(path, text):
    """Write text to `path` via a temp file + rename in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def spectrum_to_csv(s: Spectrum) -> str:
    lines = ["wavenumber_cm1,value"]
    for w, v in zip(s.grid.frequencies(), s.values):
        lines.append(f"{_FMT % w},{_FMT % v}")
    return "\n".join(lines) + "\n"


def transfer_to_csv(t: TransferFunction) -> str:
    lines = ["wavenumber_cm1,re,im"]
    for w, v in zip(t.grid.frequencies(), t.values):
        lines.append(f"{_FMT % w},{_FMT % v.real},{_FMT % v.imag}")
    return "\n".join(lines) + "\n"


def write_spectrum_csv(s: Spectrum, path):
    _atomic_write_text(path, spectrum_to_csv(s))


def write_transfer_csv(t: TransferFunction, path):
    _atomic_write_text(path, transfer_to_csv(t))

"""Spectral analysis: peak finding, parameter sweeps, and model fits.

Everything here consumes the frequency-domain model (or measured data with
the same shape) and produces reduced quantities: peak tables, resonance
trajectories versus a swept parameter, Lorentzian line parameters, and
pump-fraction estimates from differential-transmission data.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from .errors import (ConfigError, DegenerateData, MissingPeak, NoConvergence)
from .params import DEFAULT_GRID, SpectralGrid, SystemParams, validate
from .response import (Spectrum, dark_state_absorption, polariton_absorption,
                       transmission_transfer)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Peak(NamedTuple):
    """One spectral maximum: position (cm^-1), height, and whether the
    position was refined by a three-point parabola."""

    frequency: float
    height: float
    refined: bool


@dataclass(frozen=True)
class PeakList:
    """Peaks sorted by frequency, all with positive height."""

    peaks: tuple

    def __post_init__(self):
        freqs = [pk.frequency for pk in self.peaks]
        if any(b <= a for a, b in zip(freqs, freqs[1:])):
            raise ValueError("peak frequencies must be strictly increasing")
        if any(pk.height <= 0 for pk in self.peaks):
            raise ValueError("peak heights must be positive")

    def __len__(self):
        return len(self.peaks)

    def __iter__(self):
        return iter(self.peaks)

    def frequencies(self):
        return np.array([pk.frequency for pk in self.peaks])

    def heights(self):
        return np.array([pk.height for pk in self.peaks])


def _refine_parabola(w, y, i, step):
    """Vertex of the parabola through the three samples around index i."""
    ym, y0, yp = y[i - 1], y[i], y[i + 1]
    curv = ym - 2.0 * y0 + yp
    if curv >= 0:  # numerically flat top; keep the grid sample
        return w[i], y0, False
    slope = 0.5 * (yp - ym)
    delta = -slope / curv
    return w[i] + delta * step, y0 - slope * slope / (2.0 * curv), True


def find_peaks(s: Spectrum, threshold: float = 1e-4) -> PeakList:
    """Strict interior local maxima above an absolute height threshold.

    Each grid maximum is refined by the vertex of the parabola through its
    three samples (sub-grid position and height); plateaus and edge samples
    never qualify.
    """
    w = s.grid.frequencies()
    y = s.values
    found = []
    for i in range(1, len(y) - 1):
        if y[i] > y[i - 1] and y[i] > y[i + 1] and y[i] > threshold:
            freq, height, refined = _refine_parabola(w, y, i, s.grid.step)
            found.append(Peak(freq, height, refined))
    return PeakList(peaks=tuple(found))


def _window_peak(w, y, lo, hi, step):
    """Highest strict local maximum with lo <= frequency <= hi, refined."""
    best = None
    for i in range(1, len(y) - 1):
        if lo <= w[i] <= hi and y[i] > y[i - 1] and y[i] > y[i + 1]:
            if best is None or y[i] > y[best]:
                best = i
    if best is None:
        raise MissingPeak(
            "no local maximum in the window [%g, %g] cm^-1" % (lo, hi))
    freq, height, _ = _refine_parabola(w, y, best, step)
    return freq, height


def up_redshift(p: SystemParams, grid: SpectralGrid = None) -> float:
    """Shift of the upper-polariton transmission peak under pumping, cm^-1.

    Positive when pumping moves the peak to lower frequency.  Both the
    unpumped and pumped spectra are searched in the window
    [omega_0 + Omega_R/4, omega_0 + Omega_R], with Omega_R the unpumped
    splitting, so the comparison tracks the same (upper) branch.  With
    f_pu = 0 the two spectra coincide and the shift is exactly zero.
    """
    from .modes import rabi_splitting
    from .response import transmission_spectrum

    validate(p)
    if grid is None:
        grid = DEFAULT_GRID
    omega_r = rabi_splitting(p)
    lo = p.omega_0 + 0.25 * omega_r
    hi = p.omega_0 + omega_r
    w = grid.frequencies()
    dark = transmission_spectrum(replace(p, f_pu=0.0), grid)
    pumped = transmission_spectrum(p, grid)
    f_dark, _ = _window_peak(w, dark.values, lo, hi, grid.step)
    f_pump, _ = _window_peak(w, pumped.values, lo, hi, grid.step)
    return f_dark - f_pump


# ---------------------------------------------------------------------------
# sweeps

@dataclass(frozen=True)
class SweepResult:
    """One record per swept value, in sweep order.

    Every record carries the swept value; successful records add the pole
    ResonanceSet, the summed polariton absorption estimate, the dark-state
    absorption, the magnitude of the cavity-fundamental coupling, and
    (optionally) the full pumped transmission spectrum.  Failed points carry
    an `error` string instead, and the sweep continues past them.
    """

    param: str
    values: tuple
    records: tuple

    def to_json_dict(self) -> dict:
        out = []
        for rec in self.records:
            item = {"value": rec["value"]}
            if "error" in rec:
                item["error"] = rec["error"]
            else:
                item["resonances"] = rec["resonances"].to_json_dict()
                item["a_lp_plus_a_up"] = rec["a_lp_plus_a_up"]
                item["dark_state_absorption"] = rec["dark_state_absorption"]
                item["h12_abs"] = rec["h12_abs"]
                if "transmission" in rec:
                    item["transmission"] = list(rec["transmission"].values)
            out.append(item)
        return {"param": self.param, "records": out}


def _resolve_workers(max_workers):
    if max_workers is not None:
        return max(1, int(max_workers))
    env = os.environ.get("POLARISIM_THREADS")
    if env is not None:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError(
                "POLARISIM_THREADS must be an integer, got %r" % env)
        if n < 1:
            raise ConfigError("POLARISIM_THREADS must be >= 1")
        return n
    return 1


def _sweep_record(pv: SystemParams, value: float, grid, include_spectra):
    from .modes import build_h, poles
    from .response import transmission_spectrum

    rec = {"value": float(value)}
    try:
        res_pumped = poles(pv)
        res_linear = poles(replace(pv, f_pu=0.0))
        a_lp, a_up = polariton_absorption(pv, res_linear)
        rec["resonances"] = res_pumped
        rec["a_lp_plus_a_up"] = a_lp + a_up
        rec["dark_state_absorption"] = dark_state_absorption(pv)
        rec["h12_abs"] = abs(build_h(pv).entries[0, 1])
        if include_spectra:
            rec["transmission"] = transmission_spectrum(pv, grid)
    except Exception as exc:  # recorded per point; the sweep continues
        rec["error"] = "%s: %s" % (type(exc).__name__, exc)
    return rec


def _run_sweep(p, param, field, values, grid, include_spectra, max_workers):
    validate(p)
    if grid is None:
        grid = DEFAULT_GRID
    values = tuple(float(v) for v in values)

    def work(v):
        try:
            pv = validate(replace(p, **{field: v}))
        except Exception as exc:
            return {"value": float(v),
                    "error": "%s: %s" % (type(exc).__name__, exc)}
        return _sweep_record(pv, v, grid, include_spectra)

    workers = _resolve_workers(max_workers)
    if workers == 1:
        records = [work(v) for v in values]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(work, values))
    return SweepResult(param=param, values=values, records=tuple(records))


def detuning_sweep(p: SystemParams, omega_c_values=None,
                   grid: SpectralGrid = None, include_spectra: bool = False,
                   max_workers: int = None) -> SweepResult:
    """Sweep the cavity frequency; default +-30 cm^-1 around omega_0, 61 pts.

    The polariton absorption estimate at each point uses the unpumped
    (f_pu = 0) resonances of that point, the natural reference for the
    branch-resolved linear absorption.
    """
    if omega_c_values is None:
        omega_c_values = np.linspace(p.omega_0 - 30.0, p.omega_0 + 30.0, 61)
    return _run_sweep(p, "omega_c_cm1", "omega_c", omega_c_values, grid,
                      include_spectra, max_workers)


def fpu_sweep(p: SystemParams, f_values=None, grid: SpectralGrid = None,
              include_spectra: bool = False,
              max_workers: int = None) -> SweepResult:
    """Sweep the pumped fraction; default 0 to 0.5 in 51 points.

    Each record's h12_abs is |G1|*sqrt(|1 - 2 f|), the coupling whose zero
    at f = 0.5 marks the cavity-fundamental decoupling point.
    """
    if f_values is None:
        f_values = np.linspace(0.0, 0.5, 51)
    return _run_sweep(p, "f_pu", "f_pu", f_values, grid,
                      include_spectra, max_workers)


# ---------------------------------------------------------------------------
# fits

@dataclass(frozen=True)
class LorentzianFit:
    """Least-squares Lorentzian parameters.

    model(w) = baseline + amplitude * (fwhm/2)^2 / ((w-center)^2 + (fwhm/2)^2)
    """

    baseline: float
    amplitude: float
    center: float
    fwhm: float
    residual_rms: float
    n_iterations: int

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        hw2 = (0.5 * self.fwhm) ** 2
        return self.baseline + self.amplitude * hw2 / (
            (omega - self.center) ** 2 + hw2)


@dataclass(frozen=True)
class FpuFit:
    """Pumped-fraction estimate from differential transmission data.

    boundary is True when the optimum sits within 1e-4 of either search
    bound (no interior minimum resolved)."""

    f_pu: float
    residual_rms: float
    boundary: bool


def _extract_xy(data):
    if isinstance(data, Spectrum):
        return data.grid.frequencies(), np.asarray(data.values, dtype=float)
    w, y = data
    return np.asarray(w, dtype=float), np.asarray(y, dtype=float)


def _lorentzian(theta, w):
    base, amp, center, fwhm = theta
    hw2 = (0.5 * fwhm) ** 2
    return base + amp * hw2 / ((w - center) ** 2 + hw2)


def _initial_lorentzian(w, y):
    base = float(np.min(y))
    amp = float(np.max(y) - base)
    i_max = int(np.argmax(y))
    center = float(w[i_max])
    # half-maximum crossings bracket the FWHM; fall back to a quarter span
    level = base + 0.5 * amp
    above = y >= level
    left = i_max
    while left > 0 and above[left - 1]:
        left -= 1
    right = i_max
    while right < len(y) - 1 and above[right + 1]:
        right += 1
    fwhm = w[right] - w[left]
    if fwhm <= 0:
        fwhm = 0.25 * (w[-1] - w[0])
    return np.array([base, amp, center, fwhm])


def fit_lorentzian(data) -> LorentzianFit:
    """Fit a four-parameter Lorentzian to a spectrum or (omega, values) pair.

    Nelder-Mead with a pure simplex-size stopping rule (xatol = 1e-10, no
    function-value test), restarted once from the first optimum to escape
    near-converged flat simplices.  Needs at least eight non-constant
    samples; raises NoConvergence if the simplex has not collapsed within
    1e5 iterations.
    """
    w, y = _extract_xy(data)
    if len(w) < 8:
        raise DegenerateData("need at least 8 samples to fit a Lorentzian")
    if np.max(y) == np.min(y):
        raise DegenerateData("constant data cannot constrain a Lorentzian")

    def objective(theta):
        r = _lorentzian(theta, w) - y
        return float(r @ r)

    options = {"xatol": 1e-10, "fatol": np.inf,
               "maxiter": 50_000, "maxfev": 150_000}
    first = minimize(objective, _initial_lorentzian(w, y),
                     method="Nelder-Mead", options=options)
    second = minimize(objective, first.x, method="Nelder-Mead",
                      options=options)
    if not second.success:
        raise NoConvergence(
            "simplex did not collapse below xatol within the iteration cap")
    base, amp, center, fwhm = second.x
    rms = math.sqrt(objective(second.x) / len(w))
    return LorentzianFit(baseline=float(base), amplitude=float(amp),
                         center=float(center), fwhm=abs(float(fwhm)),
                         residual_rms=rms,
                         n_iterations=int(first.nit + second.nit))


def fit_fpu(p: SystemParams, data, f_max: float = 0.5) -> FpuFit:
    """Estimate the pumped fraction from measured differential transmission.

    Golden-section search of the sum-of-squares mismatch between the
    measured Delta-T and the model Delta-T(f) over f in [0, f_max]
    (interval tolerance 1e-6).  Deterministic: no randomized starts, and
    the bracket shrinks by the same ratio every iteration.  The unpumped
    reference spectrum is computed once.
    """
    validate(p)
    w, y = _extract_xy(data)
    if len(w) < 8:
        raise DegenerateData("need at least 8 samples to estimate f_pu")
    if not (0.0 < f_max <= 1.0):
        raise ConfigError("f_max must lie in (0, 1]")
    t_dark = np.abs(transmission_transfer(replace(p, f_pu=0.0), w)) ** 2

    def objective(f):
        model = np.abs(transmission_transfer(
            replace(p, f_pu=f), w)) ** 2 - t_dark
        r = model - y
        return float(r @ r)

    a, b = 0.0, float(f_max)
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = objective(c), objective(d)
    while b - a > 1e-6:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = objective(d)
    f_hat = 0.5 * (a + b)
    boundary = f_hat <= 1e-4 or f_hat >= f_max - 1e-4
    rms = math.sqrt(objective(f_hat) / len(w))
    return FpuFit(f_pu=f_hat, residual_rms=rms, boundary=boundary)


def load_spectrum_csv(path):
    """Read a two-column CSV (wavenumber, value) into a pair of arrays.

    Blank lines and lines starting with '#' are skipped; a single
    non-numeric header row is tolerated.  The frequency column must be
    strictly increasing (no resampling is attempted here).
    """
    w, y = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) < 2:
                raise ConfigError("expected two columns in %s" % path)
            try:
                w.append(float(row[0]))
                y.append(float(row[1]))
            except ValueError:
                if not w:  # header row
                    continue
                raise ConfigError(
                    "non-numeric row %r in %s" % (row, path))
    if not w:
        raise ConfigError("no data rows in %s" % path)
    w = np.array(w)
    y = np.array(y)
    if np.any(np.diff(w) <= 0):
        raise ConfigError(
            "frequency column must be strictly increasing in %s" % path)
    return w, y

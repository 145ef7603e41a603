"""Physical parameter model, unit conventions, derived rates, and validation.

Unit convention
---------------
Every frequency-like quantity is a wavenumber in cm^-1, used numerically as an
angular frequency.  The matching internal time unit is

    u_t = 1/(2*pi*c * 1 cm^-1) ~= 5.309 ps,

so that omega*t is dimensionless with omega in cm^-1 and t in u_t.  Physical
constants then drop out of every equation of motion; conversion to/from SI
happens only at I/O boundaries.

Note on the cavity lifetime: with kappa = 11 cm^-1 this convention gives
1/kappa ~= 0.48 ps.  Reported experimental lifetimes for comparable cavities
are several picoseconds; the discrepancy comes from differing lifetime
definitions and is documented here rather than hidden by rescaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ConfigError, OutOfRange

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - environment-dependent import
    import tomli as tomllib

# Internal time unit in picoseconds: 1/(2*pi*c) with c in cm/ps.
_C_CM_PER_PS = 0.0299792458
INTERNAL_TIME_PS = 1.0 / (2.0 * math.pi * _C_CM_PER_PS)  # ~= 5.3089 ps


@dataclass(frozen=True)
class SystemParams:
    """All physical constants of the model.

    Attributes
    ----------
    omega_0 : float
        Fundamental vibrational frequency, cm^-1.
    omega_c : float
        Cavity-mode frequency, cm^-1.
    kappa : float
        Total cavity linewidth, cm^-1.
    gamma_m : float
        Molecular FWHM, cm^-1.
    delta : float
        Mechanical anharmonicity, cm^-1; the 1->2 transition sits 2*delta
        below the fundamental.
    g1_coll : float
        Collective light-matter coupling (single-molecule coupling times
        sqrt of molecule number), cm^-1.
    g3_ratio : float
        Electrical anharmonicity ratio (dimensionless); the 1->2 transition
        dipole is sqrt(2)*(1 + g3_ratio) times the fundamental dipole.
    f_pu : float
        Pump-induced excited-state fraction, in [0, 1].
    """

    omega_0: float
    omega_c: float
    kappa: float
    gamma_m: float
    delta: float
    g1_coll: float
    g3_ratio: float
    f_pu: float


@dataclass(frozen=True)
class DerivedRates:
    """Rates and frequencies derived from SystemParams.

    gamma_1 = gamma_m/2 damps the fundamental polarization, gamma_3 =
    3*gamma_m/2 the 1->2 polarization; omega_12 = omega_0 - 2*delta is the
    1->2 transition frequency and g3_coll = g3_ratio*g1_coll the collective
    anharmonic coupling.  All cm^-1 except where dimensionless.
    """

    gamma_1: float
    gamma_3: float
    omega_12: float
    g3_coll: float


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform frequency grid: [omega_min, omega_max] in steps of `step` (cm^-1)."""

    omega_min: float
    omega_max: float
    step: float

    def __post_init__(self):
        if not (self.omega_min < self.omega_max):
            raise OutOfRange("omega_min", "grid requires omega_min < omega_max")
        if not (self.step > 0):
            raise OutOfRange("step", "grid step must be positive")

    @property
    def n_points(self) -> int:
        return int(math.floor((self.omega_max - self.omega_min) / self.step)) + 1

    def frequencies(self):
        """Grid frequencies as a numpy array, cm^-1."""
        import numpy as np

        return self.omega_min + self.step * np.arange(self.n_points)


# Default analysis window: covers both polaritons at the default parameters
# with sub-linewidth resolution.
DEFAULT_GRID = SpectralGrid(1900.0, 2070.0, 0.01)


def validate(p: SystemParams) -> SystemParams:
    """Check every SystemParams invariant; return `p` or raise OutOfRange.

    Frequencies must be positive, linewidths and the collective coupling
    non-negative, f_pu in [0, 1]; delta and g3_ratio may be any finite real
    (both signs are physical).
    """
    for name in ("omega_0", "omega_c", "kappa", "gamma_m", "delta",
                 "g1_coll", "g3_ratio", "f_pu"):
        v = getattr(p, name)
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            raise OutOfRange(name, f"{name} must be a finite real number")
    if p.omega_0 <= 0:
        raise OutOfRange("omega_0")
    if p.omega_c <= 0:
        raise OutOfRange("omega_c")
    if p.kappa < 0:
        raise OutOfRange("kappa")
    if p.gamma_m < 0:
        raise OutOfRange("gamma_m")
    if p.g1_coll < 0:
        raise OutOfRange("g1_coll")
    if not (0.0 <= p.f_pu <= 1.0):
        raise OutOfRange("f_pu")
    return p


def derived(p: SystemParams) -> DerivedRates:
    """Pure arithmetic: damping rates, 1->2 frequency, collective anharmonic coupling."""
    return DerivedRates(
        gamma_1=p.gamma_m / 2.0,
        gamma_3=3.0 * p.gamma_m / 2.0,
        omega_12=p.omega_0 - 2.0 * p.delta,
        g3_coll=p.g3_ratio * p.g1_coll,
    )


def paper_defaults() -> SystemParams:
    """Reference parameter set for a cavity-coupled carbonyl stretch (W(CO)6-like)."""
    return SystemParams(
        omega_0=1983.0,   # cm^-1
        omega_c=1983.0,   # cm^-1
        kappa=11.0,       # cm^-1
        gamma_m=3.0,      # cm^-1
        delta=7.5,        # cm^-1
        g1_coll=19.0,     # cm^-1
        g3_ratio=-0.25,
        f_pu=0.075,
    )


# Config-file / override keys, in declaration order.
CONFIG_KEYS = (
    "omega_0_cm1", "omega_c_cm1", "kappa_cm1", "gamma_m_cm1",
    "delta_cm1", "g1_coll_cm1", "g3_ratio", "f_pu",
)
_KEY_TO_FIELD = {
    "omega_0_cm1": "omega_0",
    "omega_c_cm1": "omega_c",
    "kappa_cm1": "kappa",
    "gamma_m_cm1": "gamma_m",
    "delta_cm1": "delta",
    "g1_coll_cm1": "g1_coll",
    "g3_ratio": "g3_ratio",
    "f_pu": "f_pu",
}
_OPTIONAL_KEYS = ("g1_cm1", "n_molecules")


def params_from_mapping(mapping) -> SystemParams:
    """Build validated SystemParams from a flat key/value mapping.

    Accepts exactly the CONFIG_KEYS names; alternatively the pair
    (`g1_cm1`, `n_molecules`) may replace `g1_coll_cm1` and is converted to
    the collective coupling g1*sqrt(N).  Unknown keys are rejected.
    """
    data = dict(mapping)
    unknown = set(data) - set(CONFIG_KEYS) - set(_OPTIONAL_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    has_pair = "g1_cm1" in data or "n_molecules" in data
    if has_pair:
        if not ("g1_cm1" in data and "n_molecules" in data):
            raise ConfigError("g1_cm1 and n_molecules must be given together")
        if "g1_coll_cm1" in data:
            raise ConfigError("give either g1_coll_cm1 or the g1_cm1/n_molecules pair, not both")
        g1 = _as_number(data.pop("g1_cm1"), "g1_cm1")
        n = _as_number(data.pop("n_molecules"), "n_molecules")
        if n < 0:
            raise OutOfRange("n_molecules")
        data["g1_coll_cm1"] = g1 * math.sqrt(n)

    missing = [k for k in CONFIG_KEYS if k not in data]
    if missing:
        raise ConfigError(f"missing config keys: {missing}")

    fields = {_KEY_TO_FIELD[k]: _as_number(data[k], k) for k in CONFIG_KEYS}
    return validate(SystemParams(**fields))


def _as_number(v, key) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"config key {key} must be a number, got {v!r}")
    return float(v)


def load_config(path) -> SystemParams:
    """Load SystemParams from a flat TOML file (keys per CONFIG_KEYS)."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc
    return params_from_mapping(data)


def apply_overrides(p: SystemParams, overrides) -> SystemParams:
    """Apply `key=value` overrides (config-key names) to an existing parameter set."""
    updates = {}
    for key, value in overrides.items():
        if key not in _KEY_TO_FIELD:
            raise ConfigError(f"unknown override key: {key}")
        updates[_KEY_TO_FIELD[key]] = _as_number(value, key)
    return validate(replace(p, **updates))

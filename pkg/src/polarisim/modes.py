"""Transient mode-coupling matrices, cubic eigenproblems, and pole matching.

The pumped system supports three coupled modes: the cavity field, the
fundamental (0<->1) polarization, and the pump-activated 1->2 polarization.
Their complex resonances are simultaneously (a) the poles of the closed-form
transfer function and (b) the eigenvalues of a 3x3 mode-coupling matrix;
this module builds both routes and measures their agreement.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (DegenerateLinewidths, LeadingZero,
                     UnsupportedElectricalAnharmonicity)
from .params import SystemParams, derived, validate
from .response import denominator_poly

_THIRD = 1.0 / 3.0
_CUBE_ROOT_UNITY = complex(-0.5, math.sqrt(3.0) / 2.0)


@dataclass(frozen=True)
class ModeMatrix:
    """3x3 complex mode-coupling matrix (cm^-1) with a variant tag.

    Basis order: (cavity, fundamental polarization, 1->2 polarization).
    variant is "lossless" (matter damping dropped) or "damped" (molecular
    relaxation folded into the couplings).
    """

    entries: np.ndarray
    variant: str

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", e)
        if e.shape != (3, 3):
            raise ValueError("mode matrix must be 3x3")
        if self.variant not in ("lossless", "damped"):
            raise ValueError("variant must be 'lossless' or 'damped'")


@dataclass(frozen=True)
class ResonanceSet:
    """Three complex resonances sorted by real part, labeled LP / MID / UP.

    gamma_* are full linewidths, -2 Im(lambda).  The labels order by
    frequency only; no physical identity is claimed for MID.
    """

    poles: tuple
    labels: tuple = ("LP", "MID", "UP")

    @staticmethod
    def from_roots(roots) -> "ResonanceSet":
        ordered = sorted((complex(r) for r in roots),
                         key=lambda z: (z.real, z.imag))
        return ResonanceSet(poles=tuple(ordered))

    @property
    def omega_lp(self) -> float:
        return self.poles[0].real

    @property
    def omega_mid(self) -> float:
        return self.poles[1].real

    @property
    def omega_up(self) -> float:
        return self.poles[2].real

    @property
    def gamma_lp(self) -> float:
        return -2.0 * self.poles[0].imag

    @property
    def gamma_mid(self) -> float:
        return -2.0 * self.poles[1].imag

    @property
    def gamma_up(self) -> float:
        return -2.0 * self.poles[2].imag

    @property
    def rabi(self) -> float:
        """Splitting omega_UP - omega_LP, cm^-1."""
        return self.omega_up - self.omega_lp

    def to_json_dict(self) -> dict:
        return {
            "re_cm1": [z.real for z in self.poles],
            "im_cm1": [z.imag for z in self.poles],
            "labels": list(self.labels),
        }


# ---------------------------------------------------------------------------
# matrix builders

def build_h(p: SystemParams) -> ModeMatrix:
    """Lossless mode-coupling matrix (matter damping dropped, cavity kept).

    Diagonal (omega_c - i*kappa/2, omega_0, omega_12); the cavity couples to
    the fundamental with G1*sqrt(1-2*f_pu) (continued to i*G1*sqrt(2*f_pu-1)
    past the f_pu = 0.5 decoupling point, principal branch) and to the 1->2
    polarization with (G1+G3)*sqrt(2*f_pu).  The matter-matter block is
    diagonal: the two transitions talk only through the cavity.
    """
    validate(p)
    d = derived(p)
    f = p.f_pu
    if f <= 0.5:
        h12 = p.g1_coll * math.sqrt(1.0 - 2.0 * f)
    else:
        h12 = 1j * p.g1_coll * math.sqrt(2.0 * f - 1.0)
    h13 = (p.g1_coll + d.g3_coll) * math.sqrt(2.0 * f)
    entries = np.array([
        [p.omega_c - 0.5j * p.kappa, h12, h13],
        [h12, p.omega_0, 0.0],
        [h13, 0.0, d.omega_12],
    ], dtype=complex)
    return ModeMatrix(entries=entries, variant="lossless")


def build_h_damped(p: SystemParams) -> ModeMatrix:
    """Mode-coupling matrix with molecular relaxation included (g3 = 0 only).

    Valid for kappa != 3*gamma_m.  Diagonal
    (omega_c - i*kappa/2, omega_0 - i*gamma_m/2, omega_12 - 3i*gamma_m/2);
    with r = sqrt(gamma_m/(kappa - 3*gamma_m)) the couplings are

        h12 = X - i*u,  h21 = X + i*u,
        u   = (omega_c - omega_12)*r - (i/4)*gamma_m/r,
        X   = sqrt(G1^2*(1 - 2*f_pu*(kappa+gamma_m)/(kappa-3*gamma_m)) - u^2),
        h13 = h31 = sqrt(2*f_pu)*G1,
        h23 = -h32 = 2i*sqrt(2*f_pu)*G1*r.

    Constructed so that the characteristic polynomial equals the closed-form
    denominator cubic identically (eigenvalues == transfer-function poles for
    every kappa != 3*gamma_m), and so that the gamma_m -> 0 limit reduces
    entrywise to the lossless matrix.  Off-diagonal phases beyond those two
    requirements are gauge: any diagonal similarity preserves both the
    eigenvalues and the pairwise coupling products.
    """
    validate(p)
    if p.g3_ratio != 0:
        raise UnsupportedElectricalAnharmonicity(
            "the damped mode matrix is defined only for g3_ratio = 0")
    if abs(p.kappa - 3.0 * p.gamma_m) < 1e-9:
        raise DegenerateLinewidths("kappa = 3*gamma_m is a singular point")
    d = derived(p)
    G1 = p.g1_coll
    f = p.f_pu
    if p.gamma_m == 0.0:
        u = 0.0 + 0.0j
        q = 0.0 + 0.0j
        pop_ratio = 1.0
    else:
        # complex branch handled once here; gamma_m/r below keeps the product
        # r * (gamma_m/r) = gamma_m on either side of kappa = 3*gamma_m
        r = cmath.sqrt(p.gamma_m / (p.kappa - 3.0 * p.gamma_m))
        u = (p.omega_c - d.omega_12) * r - 0.25j * p.gamma_m / r
        q = 2.0 * math.sqrt(2.0 * f) * G1 * r
        pop_ratio = (p.kappa + p.gamma_m) / (p.kappa - 3.0 * p.gamma_m)
    x = cmath.sqrt(G1 * G1 * (1.0 - 2.0 * f * pop_ratio) - u * u)
    h13 = math.sqrt(2.0 * f) * G1
    entries = np.array([
        [p.omega_c - 0.5j * p.kappa, x - 1j * u, h13],
        [x + 1j * u, p.omega_0 - 0.5j * p.gamma_m, 1j * q],
        [h13, -1j * q, d.omega_12 - 1.5j * p.gamma_m],
    ], dtype=complex)
    return ModeMatrix(entries=entries, variant="damped")


# ---------------------------------------------------------------------------
# cubic solver

def cubic_roots(c3: complex, c2: complex, c1: complex, c0: complex) -> tuple:
    """Roots of c3*x^3 + c2*x^2 + c1*x + c0, ascending by (real, imag).

    Closed-form (depressed cubic + trigonometric-free radical solution with
    cancellation-aware branch choice) followed by one complex Newton polish
    per root.  Adequate and dependency-free at 3x3 scale.
    """
    c3, c2, c1, c0 = complex(c3), complex(c2), complex(c1), complex(c0)
    if c3 == 0:
        raise LeadingZero("cubic leading coefficient is zero")
    a = c2 / c3
    b = c1 / c3
    c = c0 / c3
    # depressed cubic y^3 + py + q, x = y - a/3
    p = b - a * a * _THIRD
    q = 2.0 * a ** 3 / 27.0 - a * b * _THIRD + c
    if p == 0 and q == 0:
        ys = (0.0 + 0.0j, 0.0 + 0.0j, 0.0 + 0.0j)
    else:
        s = cmath.sqrt(0.25 * q * q + p ** 3 / 27.0)
        u3 = -0.5 * q + s
        alt = -0.5 * q - s
        if abs(alt) > abs(u3):
            u3 = alt
        u = u3 ** _THIRD
        v = -p / (3.0 * u)
        w1 = _CUBE_ROOT_UNITY
        w2 = w1.conjugate()
        ys = (u + v, u * w1 + v * w2, u * w2 + v * w1)
    shift = a * _THIRD
    roots = []
    for y in ys:
        x = y - shift
        fx = ((c3 * x + c2) * x + c1) * x + c0
        dfx = (3.0 * c3 * x + 2.0 * c2) * x + c1
        if dfx != 0:
            x = x - fx / dfx
        roots.append(x)
    roots.sort(key=lambda z: (z.real, z.imag))
    return tuple(roots)


def _quadratic_pair(d1: complex, d2: complex, product: complex) -> tuple:
    """Roots of (x - d1)(x - d2) - product = 0."""
    mid = 0.5 * (d1 + d2)
    disc = cmath.sqrt((0.5 * (d1 - d2)) ** 2 + product)
    return (mid - disc, mid + disc)


# ---------------------------------------------------------------------------
# eigenvalues and poles

def eigenvalues(m: ModeMatrix) -> ResonanceSet:
    """Eigenvalues of the mode matrix as a ResonanceSet.

    The matter-matter block of the lossless matrix is empty (entries (2,3)
    and (3,2) vanish), so a vanishing cavity coupling factors the problem
    exactly: those branches return one diagonal entry plus a closed-form
    2x2 pair, keeping decoupling statements exact to the last bit.  The
    general case goes through the characteristic cubic, centered on the
    trace for conditioning.
    """
    e = m.entries
    h12h21 = e[0, 1] * e[1, 0]
    h13h31 = e[0, 2] * e[2, 0]
    h23h32 = e[1, 2] * e[2, 1]
    if h23h32 == 0 and h12h21 == 0:
        pair = _quadratic_pair(e[0, 0], e[2, 2], h13h31)
        return ResonanceSet.from_roots((e[1, 1],) + pair)
    if h23h32 == 0 and h13h31 == 0:
        pair = _quadratic_pair(e[0, 0], e[1, 1], h12h21)
        return ResonanceSet.from_roots((e[2, 2],) + pair)
    # characteristic polynomial of (m - s*I) in y = lambda - s
    s = (e[0, 0] + e[1, 1] + e[2, 2]) * _THIRD
    b11 = e[0, 0] - s
    b22 = e[1, 1] - s
    b33 = e[2, 2] - s
    c2 = -(b11 + b22 + b33)
    c1 = b11 * b22 + b22 * b33 + b33 * b11 - (h12h21 + h13h31 + h23h32)
    c0 = (-b11 * b22 * b33 + h12h21 * b33 + h13h31 * b22 + h23h32 * b11
          - e[0, 1] * e[1, 2] * e[2, 0] - e[0, 2] * e[1, 0] * e[2, 1])
    roots = cubic_roots(1.0, c2, c1, c0)
    return ResonanceSet.from_roots(tuple(r + s for r in roots))


def poles(p: SystemParams) -> ResonanceSet:
    """Complex poles of the transmission transfer function."""
    validate(p)
    dp = denominator_poly(p)
    c3, c2, c1, c0 = dp.coeffs
    roots = cubic_roots(c3, c2, c1, c0)
    return ResonanceSet.from_roots(tuple(r + dp.ref_omega for r in roots))


def match_poles_eigenvalues(p: SystemParams, damped=None) -> float:
    """Distance between transfer-function poles and mode-matrix eigenvalues.

    Returns min over the six pairings of the max pairwise |pole - eigenvalue|
    (cm^-1).  With damped=None the damped matrix is used whenever gamma_m > 0
    and g3_ratio = 0, the lossless one otherwise.  The equivalence theorem
    guarantees distances at roundoff level for gamma_m = 0 (lossless, any
    f_pu) and for g3_ratio = 0, kappa != 3*gamma_m (damped); outside those
    regimes the returned distance measures the quality of the lossless
    approximation rather than an identity.
    """
    validate(p)
    if damped is None:
        damped = p.gamma_m != 0 and p.g3_ratio == 0
    matrix = build_h_damped(p) if damped else build_h(p)
    pole_set = poles(p).poles
    eig_set = eigenvalues(matrix).poles
    best = math.inf
    for perm in itertools.permutations(range(3)):
        worst = max(abs(pole_set[i] - eig_set[perm[i]]) for i in range(3))
        best = min(best, worst)
    return best


def rabi_splitting(p: SystemParams) -> float:
    """Polariton splitting omega_UP - omega_LP of the unpumped system, cm^-1.

    Computed from the pole set with f_pu forced to zero; at zero detuning
    with kappa = gamma_m = 0 this equals 2*G1 exactly.
    """
    validate(p)
    res = poles(replace(p, f_pu=0.0))
    return res.rabi

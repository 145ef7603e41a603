"""Mode matrices, cubic solver, eigenvalues, poles, and their equivalence."""

import itertools
import math
from dataclasses import replace

import numpy as np
import pytest

from polarisim import (DegenerateLinewidths, LeadingZero, ModeMatrix,
                       SystemParams, UnsupportedElectricalAnharmonicity,
                       build_h, build_h_damped, cubic_roots, eigenvalues,
                       match_poles_eigenvalues, paper_defaults, poles,
                       rabi_splitting)

P = paper_defaults()


def _pair_distance(a, b):
    return min(max(abs(a[i] - b[perm[i]]) for i in range(3))
               for perm in itertools.permutations(range(3)))


# ---------------------------------------------------------------------------
# cubic solver

def test_cubic_unity_roots():
    roots = cubic_roots(1, 0, 0, -1)
    w = complex(-0.5, math.sqrt(3.0) / 2.0)
    expected = sorted([1.0 + 0j, w, w.conjugate()], key=lambda z: (z.real, z.imag))
    for got, want in zip(roots, expected):
        assert got == pytest.approx(want, abs=1e-12)


def test_cubic_integer_roots_sorted():
    roots = cubic_roots(1, -6, 11, -6)
    for got, want in zip(roots, (1.0, 2.0, 3.0)):
        assert got == pytest.approx(want, abs=1e-10)
        assert got.imag == pytest.approx(0.0, abs=1e-10)


def test_cubic_double_root():
    # (x-1)^2 (x-2): the repeated root is conditioned like sqrt(eps)
    roots = cubic_roots(1, -4, 5, -2)
    near_one = sorted(roots, key=lambda z: abs(z - 1.0))[:2]
    for z in near_one:
        assert abs(z - 1.0) < 1e-6


def test_cubic_leading_zero():
    with pytest.raises(LeadingZero):
        cubic_roots(0, 1.0, 2.0, 3.0)


def test_cubic_synthesis_roundtrip_and_residual():
    rng = np.random.default_rng(614)
    for _ in range(300):
        want = rng.uniform(-50, 50, 3) + 1j * rng.uniform(-50, 50, 3)
        c2 = -want.sum()
        c1 = (want[0] * want[1] + want[1] * want[2] + want[2] * want[0])
        c0 = -want[0] * want[1] * want[2]
        got = cubic_roots(1.0, c2, c1, c0)
        assert _pair_distance(got, tuple(want)) < 1e-10
        scale = max(1.0, abs(c2), abs(c1), abs(c0))
        for z in got:
            residual = ((z + c2) * z + c1) * z + c0
            assert abs(residual) <= 1e-9 * scale


# ---------------------------------------------------------------------------
# matrix builders

def test_build_h_structure_and_tags():
    m = build_h(P)
    e = m.entries
    assert m.variant == "lossless"
    assert e[1, 2] == 0 and e[2, 1] == 0
    assert e[0, 0] == 1983.0 - 5.5j
    assert e[1, 1] == 1983.0 and e[2, 2] == 1968.0
    assert e[0, 1] == e[1, 0] and e[0, 2] == e[2, 0]
    assert e[0, 1] == pytest.approx(19.0 * math.sqrt(0.85), rel=1e-15)
    assert e[0, 2] == pytest.approx(14.25 * math.sqrt(0.15), rel=1e-15)


def test_build_h_decoupling_points():
    assert build_h(replace(P, f_pu=0.0)).entries[0, 2] == 0.0
    assert build_h(replace(P, f_pu=0.5)).entries[0, 1] == 0.0
    h12 = build_h(replace(P, f_pu=0.75)).entries[0, 1]
    assert h12.real == 0.0 and h12.imag > 0  # purely imaginary continuation


def test_build_h_damped_diagonal_and_errors():
    m = build_h_damped(replace(P, g3_ratio=0.0))
    e = m.entries
    assert m.variant == "damped"
    assert e[0, 0] == 1983.0 - 5.5j
    assert e[1, 1] == 1983.0 - 1.5j
    assert e[2, 2] == 1968.0 - 4.5j
    with pytest.raises(UnsupportedElectricalAnharmonicity):
        build_h_damped(P)  # g3_ratio = -0.25
    with pytest.raises(DegenerateLinewidths):
        build_h_damped(replace(P, g3_ratio=0.0, kappa=9.0))  # kappa = 3 gamma_m


def test_build_h_damped_reduces_to_lossless_without_damping():
    q = replace(P, g3_ratio=0.0, gamma_m=0.0)
    assert np.array_equal(build_h_damped(q).entries, build_h(q).entries)


def test_build_h_damped_approaches_lossless_continuously():
    q = replace(P, g3_ratio=0.0)
    lossless = build_h(replace(q, gamma_m=0.0)).entries
    gap = np.max(np.abs(build_h_damped(replace(q, gamma_m=1e-8)).entries - lossless))
    assert gap < 1e-3


# ---------------------------------------------------------------------------
# eigenvalues

def test_eigenvalues_block_factorization_f0():
    # kappa = 0, zero detuning, reference couplings: omega_0 +- G1 and omega_12
    m = build_h(replace(P, kappa=0.0, f_pu=0.0))
    got = eigenvalues(m).poles
    assert got == (1964.0 + 0j, 1968.0 + 0j, 2002.0 + 0j)


def test_eigenvalues_half_inversion_closed_form():
    # h12 = 0 decouples the fundamental: one eigenvalue exactly omega_0,
    # the others from the 2x2 cavity/1->2 block
    m = build_h(replace(P, kappa=0.0, f_pu=0.5))
    got = eigenvalues(m).poles
    assert 1983.0 + 0j in got
    disc = math.sqrt(7.5 ** 2 + 14.25 ** 2)
    others = sorted((z for z in got if z != 1983.0 + 0j), key=lambda z: z.real)
    assert others[0] == pytest.approx(1975.5 - disc, abs=1e-9)
    assert others[1] == pytest.approx(1975.5 + disc, abs=1e-9)
    assert others[0] == pytest.approx(1959.3968, abs=1e-3)
    assert others[1] == pytest.approx(1991.6032, abs=1e-3)


def test_eigenvalues_diagonal_matrix():
    diag = np.diag([1983.0 - 5.5j, 1983.0 + 0j, 1968.0 + 0j])
    got = eigenvalues(ModeMatrix(diag, "lossless")).poles
    assert got == (1968.0 + 0j, 1983.0 - 5.5j, 1983.0 + 0j)  # real, then imag


def test_eigenvalues_match_numpy():
    for matrix in (build_h(P), build_h(replace(P, f_pu=0.3)),
                   build_h_damped(replace(P, g3_ratio=0.0))):
        ours = eigenvalues(matrix).poles
        ref = tuple(sorted(np.linalg.eigvals(matrix.entries),
                           key=lambda z: (z.real, z.imag)))
        assert _pair_distance(ours, ref) < 1e-8


def test_trace_identity():
    for matrix in (build_h(P), build_h(replace(P, f_pu=0.6)),
                   build_h_damped(replace(P, g3_ratio=0.0))):
        eig_sum = sum(eigenvalues(matrix).poles)
        trace = matrix.entries.trace()
        assert abs(eig_sum - trace) <= 1e-10


def test_lossless_imaginary_parts_bounded():
    # below inversion the anti-Hermitian part is the cavity loss alone,
    # so every eigenvalue sits in the strip [-kappa/2, 0]
    rng = np.random.default_rng(2718)
    for _ in range(50):
        q = SystemParams(
            omega_0=rng.uniform(1900, 2050), omega_c=1983.0,
            kappa=rng.uniform(0, 30), gamma_m=0.0,
            delta=rng.uniform(-15, 15), g1_coll=rng.uniform(5, 30),
            g3_ratio=rng.uniform(-0.5, 0.5), f_pu=rng.uniform(0, 0.5))
        q = replace(q, omega_c=q.omega_0 + rng.uniform(-40, 40))
        for z in eigenvalues(build_h(q)).poles:
            assert -q.kappa / 2 - 1e-10 <= z.imag <= 1e-10


def test_eigenvalue_continuity_across_inversion():
    # h12^2 is linear in f_pu, so eigenvalue branches cross f = 0.5 with
    # bounded slope even though h12 itself has a sqrt kink
    q = replace(P, gamma_m=0.0)
    fs = np.linspace(0.4, 0.6, 201)
    prev = None
    for f in fs:
        cur = eigenvalues(build_h(replace(q, f_pu=float(f)))).poles
        if prev is not None:
            assert _pair_distance(cur, prev) < 0.2  # slope ~50/unit * 1e-3 step
        prev = cur
    tight = _pair_distance(
        eigenvalues(build_h(replace(q, f_pu=0.5 - 1e-9))).poles,
        eigenvalues(build_h(replace(q, f_pu=0.5 + 1e-9))).poles)
    assert tight < 1e-6


# ---------------------------------------------------------------------------
# poles and equivalence

def test_poles_factorized_limit():
    ideal = replace(P, kappa=0.0, gamma_m=0.0, f_pu=0.0)
    got = poles(ideal).poles
    assert got[0] == pytest.approx(1964.0 + 0j, abs=1e-10)
    assert got[1] == pytest.approx(1968.0 + 0j, abs=1e-10)
    assert got[2] == pytest.approx(2002.0 + 0j, abs=1e-10)


def test_poles_linear_defaults():
    res = poles(replace(P, f_pu=0.0))
    assert res.labels == ("LP", "MID", "UP")
    assert res.omega_lp == pytest.approx(1964.1, abs=0.5)
    assert res.omega_up == pytest.approx(2001.9, abs=0.5)
    # strong coupling shares the loss evenly: gamma = (kappa+gamma_m)/2
    assert res.gamma_lp == pytest.approx((P.kappa + P.gamma_m) / 2, abs=0.2)
    assert res.gamma_up == pytest.approx((P.kappa + P.gamma_m) / 2, abs=0.2)


def test_poles_gain_mode_above_inversion():
    res = poles(replace(P, kappa=0.0, gamma_m=0.0, f_pu=0.75))
    assert sum(1 for z in res.poles if z.imag > 0) == 1


def test_match_lossless_random_parameters():
    rng = np.random.default_rng(20260818)
    worst = 0.0
    for _ in range(100):
        q = SystemParams(
            omega_0=rng.uniform(1900, 2050), omega_c=1983.0,
            kappa=rng.uniform(0, 30), gamma_m=0.0,
            delta=rng.uniform(-15, 15), g1_coll=rng.uniform(5, 30),
            g3_ratio=rng.uniform(-0.5, 0.5), f_pu=rng.uniform(0, 1))
        q = replace(q, omega_c=q.omega_0 + rng.uniform(-40, 40))
        worst = max(worst, match_poles_eigenvalues(q, damped=False))
    assert worst < 1e-9


def test_match_damped_reference_and_branches():
    q = replace(P, g3_ratio=0.0)
    assert match_poles_eigenvalues(q) < 1e-8
    # below the kappa = 3 gamma_m line the builder continues analytically
    assert match_poles_eigenvalues(replace(q, kappa=5.0)) < 1e-8
    assert match_poles_eigenvalues(replace(q, kappa=5.0, f_pu=0.4)) < 1e-8
    # above inversion the saturated coupling goes complex; identity holds
    assert match_poles_eigenvalues(replace(q, f_pu=0.75)) < 1e-8


def test_match_decoupled_is_exact():
    # no coupling: both matrices are diagonal and equal the bare poles
    assert match_poles_eigenvalues(replace(P, g1_coll=0.0, gamma_m=0.0)) < 1e-12
    assert match_poles_eigenvalues(replace(P, g1_coll=0.0, g3_ratio=0.0)) < 1e-12


def test_match_auto_selects_variant():
    # gamma_m > 0 and g3 = 0 -> damped matrix; forcing lossless is worse
    q = replace(P, g3_ratio=0.0)
    assert match_poles_eigenvalues(q) < 1e-8
    assert match_poles_eigenvalues(q, damped=False) > 0.1


# ---------------------------------------------------------------------------
# splitting and serialization

def test_rabi_splitting_exact_and_detuned():
    ideal = replace(P, kappa=0.0, gamma_m=0.0, delta=0.0, g3_ratio=0.0)
    assert abs(rabi_splitting(ideal) - 38.0) <= 1e-10
    base = rabi_splitting(P)
    assert abs(base - 2.0 * math.sqrt(19.0 ** 2 + 0.0)) < 0.5
    detuned = rabi_splitting(replace(P, omega_c=1993.0))
    assert detuned > base
    assert abs(detuned - 2.0 * math.sqrt(19.0 ** 2 + 25.0)) < 0.5


def test_resonance_set_accessors_and_json():
    res = poles(P)
    assert res.labels == ("LP", "MID", "UP")
    assert res.omega_lp < res.omega_mid < res.omega_up
    assert res.gamma_lp == -2.0 * res.poles[0].imag
    assert res.rabi == res.omega_up - res.omega_lp
    blob = res.to_json_dict()
    assert set(blob) == {"re_cm1", "im_cm1", "labels"}
    assert blob["labels"] == ["LP", "MID", "UP"]
    assert blob["re_cm1"] == [z.real for z in res.poles]
    assert blob["im_cm1"] == [z.imag for z in res.poles]


def test_resonance_ordering_breaks_ties_by_imaginary_part():
    from polarisim.modes import ResonanceSet

    res = ResonanceSet.from_roots([2000.0 - 1j, 2000.0 - 5j, 1990.0 + 0j])
    assert res.poles == (1990.0 + 0j, 2000.0 - 5j, 2000.0 - 1j)

"""Tests for the statistical descriptors of the sphere medium."""

import numpy as np
import pytest

from halfspacedecay.medium import (
    LorentzSusceptibility,
    MediumSpec,
    chi_at,
    chi_effective,
    mean_filling_profile,
    overlap_c,
    overlap_i2,
    overlap_i2_numeric,
    surface_excess_integral,
)


def test_susceptibility_passivity_and_limits() -> None:
    model = LorentzSusceptibility(strength=0.8, resonance=1.2, damping=0.05)
    for w in (0.3, 0.9, 1.2, 2.0, 10.0):
        chi = chi_at(model, w)
        assert chi.imag >= 0.0
    assert abs(chi_at(model, 1e6)) < 1e-9
    # static limit: chi(0+) -> strength
    assert chi_at(model, 1e-9) == pytest.approx(0.8, rel=1e-6)


def test_susceptibility_fixed_value_and_validation() -> None:
    fixed = LorentzSusceptibility.fixed(0.5 + 0.5j)
    assert chi_at(fixed, 1.0) == 0.5 + 0.5j
    assert chi_at(fixed, 3.7) == 0.5 + 0.5j
    with pytest.raises(ValueError):
        LorentzSusceptibility(strength=-1.0)
    with pytest.raises(ValueError):
        LorentzSusceptibility(resonance=0.0)
    with pytest.raises(ValueError):
        chi_at(fixed, 0.0)
    with pytest.raises(ValueError):
        chi_at(LorentzSusceptibility(strength=1.0, damping=0.0), 1.0)


def test_medium_spec_validation_and_warnings() -> None:
    chi = LorentzSusceptibility.fixed(0.5)
    MediumSpec(radius_q=0.5, density_nv0=0.05, chi=chi)
    with pytest.raises(ValueError):
        MediumSpec(radius_q=0.0, density_nv0=0.05, chi=chi)
    with pytest.raises(ValueError):
        MediumSpec(radius_q=0.5, density_nv0=-0.1, chi=chi)
    with pytest.warns(UserWarning):
        MediumSpec(radius_q=0.5, density_nv0=0.3, chi=chi)
    with pytest.warns(UserWarning):
        MediumSpec(radius_q=1.5, density_nv0=0.05, chi=chi)


def test_overlap_c_endpoints_and_monotonicity() -> None:
    a = 0.7
    assert overlap_c(0.0, a) == 1.0
    assert overlap_c(2.0 * a, a) == 0.0
    assert overlap_c(5.0 * a, a) == 0.0
    r = np.linspace(0.0, 2.0 * a, 200)
    c = overlap_c(r, a)
    assert np.all(np.diff(c) < 0.0)
    assert np.all(c >= 0.0)


def test_overlap_c_equals_sphere_intersection_volume() -> None:
    # v0 * c(r) must equal the lens volume of two overlapping balls
    a = 0.5
    v0 = 4.0 / 3.0 * np.pi * a**3
    rng = np.random.default_rng(71)
    for _ in range(10):
        r = rng.uniform(0.0, 2.0 * a)
        lens = np.pi * (2.0 * a - r) ** 2 * (r**2 + 4.0 * a * r) / (12.0 * r) if r > 0 else v0
        assert v0 * overlap_c(r, a) == pytest.approx(lens, rel=1e-12)


def test_overlap_moment_special_values() -> None:
    a = 0.5
    v0 = 4.0 / 3.0 * np.pi * a**3
    assert overlap_i2(0.0, 0.3, a) == pytest.approx(v0 * a**2 / 5.0, rel=1e-14)
    assert overlap_i2(2.0 * a, 0.5, a) == 0.0
    assert overlap_i2(3.0 * a, 0.5, a) == 0.0


def test_overlap_moment_against_numeric_oracle() -> None:
    rng = np.random.default_rng(72)
    a = 0.5
    for _ in range(10):
        r = rng.uniform(0.0, 1.5 * a)
        c = rng.uniform(0.0, 1.0)
        closed = overlap_i2(r, c, a)
        numeric = overlap_i2_numeric(r, c, a)
        assert closed == pytest.approx(numeric, rel=1e-4)


def test_overlap_moment_continuous_across_geometry_change() -> None:
    # the integration geometry changes character at r = 2 a cos_theta;
    # the closed form must pass through that locus continuously
    a, c = 0.5, 0.6
    r_star = 2.0 * a * c
    diffs = []
    for delta in (1e-3, 1e-4, 1e-5):
        diffs.append(abs(overlap_i2(r_star + delta, c, a) - overlap_i2(r_star - delta, c, a)))
    # slope-limited difference, no jump
    assert diffs[0] < 0.05 * overlap_i2(r_star, c, a)
    # linear (O(delta)) shrinkage
    assert diffs[1] == pytest.approx(diffs[0] / 10.0, rel=0.2)
    assert diffs[2] == pytest.approx(diffs[1] / 10.0, rel=0.2)


def test_overlap_moment_numeric_rejects_bad_domain() -> None:
    with pytest.raises(ValueError):
        overlap_i2_numeric(1.0, 0.5, 0.5)  # r = 2a is outside the open domain
    with pytest.raises(ValueError):
        overlap_i2_numeric(0.5, 1.5, 0.5)


def test_effective_susceptibility_small_chi_and_size_limits() -> None:
    # first order in chi: chi_e -> nv0 * chi
    chi_e = chi_effective(1e-6 + 1e-6j, 0.5, 0.05)
    assert chi_e == pytest.approx(0.05 * (1e-6 + 1e-6j), rel=1e-5)
    # point-sphere limit keeps the local-field 1/3 only
    chi_e = chi_effective(0.5, 0.0, 0.05)
    assert chi_e == pytest.approx(0.05 * 0.5 * (1.0 - 0.5 / 3.0), rel=1e-14)
    with pytest.raises(ValueError):
        chi_effective(0.5, -0.1, 0.05)
    with pytest.raises(ValueError):
        chi_effective(0.5, 0.5, -0.05)


def test_filling_profile_shape() -> None:
    a, n = 0.5, 0.1
    v0 = 4.0 / 3.0 * np.pi * a**3
    h = np.linspace(-2.0 * a, 2.0 * a, 401)
    prof = mean_filling_profile(h, a, n)
    assert prof[0] == pytest.approx(n * v0, rel=1e-14)  # deep inside
    assert prof[-1] == 0.0  # outside the reach of any sphere
    assert mean_filling_profile(0.0, a, n) == pytest.approx(0.5 * n * v0, rel=1e-14)
    assert np.all(np.diff(prof) <= 1e-15)  # monotone non-increasing
    # continuity at the band edges
    for edge in (-a, a):
        lo = mean_filling_profile(edge - 1e-12, a, n)
        hi = mean_filling_profile(edge + 1e-12, a, n)
        assert lo == pytest.approx(hi, abs=1e-12)


def test_filling_profile_antisymmetry_and_zero_excess() -> None:
    a, n = 0.5, 0.1
    v0 = 4.0 / 3.0 * np.pi * a**3
    rng = np.random.default_rng(73)
    for h in rng.uniform(0.0, a, size=12):
        s = mean_filling_profile(h, a, n) + mean_filling_profile(-h, a, n)
        assert s == pytest.approx(n * v0, rel=1e-12)
    assert abs(surface_excess_integral(a, n)) < 1e-12


def test_filling_profile_matches_direct_overlap_construction() -> None:
    # <f(h)> = n * volume of {centers below the surface within reach}:
    # integrate the circular-slice area over the admissible center band
    from scipy.integrate import quad

    a, n = 0.5, 0.1
    for h in (-0.4, -0.1, 0.0, 0.2, 0.45):
        direct, _ = quad(
            lambda zc: np.pi * max(0.0, a**2 - (h - zc) ** 2),
            min(h - a, 0.0),
            min(h + a, 0.0),
            epsabs=1e-13,
        )
        assert mean_filling_profile(h, a, n) == pytest.approx(n * direct, abs=1e-12)

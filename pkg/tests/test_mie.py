"""Tests for the sphere multipole amplitudes and scattering kernels."""

import numpy as np
import pytest

from halfspacedecay.mie import (
    MieAmplitudes,
    effective_kernel_tensor,
    mie_amplitudes,
    mie_amplitudes_small_q,
    mie_farfield,
    mie_kernel_tensor,
)


def _random_unit(rng) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def test_effective_kernel_equals_chi_times_single_sphere_kernel() -> None:
    # the averaged-medium response kernel must reproduce chi times the
    # single-sphere kernel identically, term by term in chi and q
    rng = np.random.default_rng(20260816)
    worst = 0.0
    for _ in range(200):
        q = float(rng.uniform(0.01, 0.3))
        chi = rng.uniform(0.0, 0.3) * np.exp(2j * np.pi * rng.uniform())
        e_hat = _random_unit(rng)
        k_hat = _random_unit(rng)
        lhs = effective_kernel_tensor(e_hat, k_hat, q, chi)
        rhs = chi * mie_kernel_tensor(e_hat, k_hat, q, chi)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    assert worst <= 1e-12


def test_small_q_electric_dipole_tracks_full_amplitude() -> None:
    chi = 0.1
    devs = []
    for q in (0.01, 0.02, 0.05):
        full = mie_amplitudes(q, chi).electric_l(1)
        series = mie_amplitudes_small_q(q, chi)[0]
        devs.append(abs(full / series - 1.0))
        assert devs[-1] <= 5.0 * q
    # the closed form converges to the full amplitude as q shrinks
    assert devs[0] < devs[1] < devs[2]


def test_small_q_forms_converge_for_higher_multipoles() -> None:
    q = 0.05
    chi = 0.2 + 0.1j
    amps = mie_amplitudes(q, chi)
    be1, be2, bm1 = mie_amplitudes_small_q(q, chi)
    assert amps.electric_l(1) == pytest.approx(be1, rel=1e-3)
    assert amps.electric_l(2) == pytest.approx(be2, rel=1e-2)
    assert amps.magnetic_l(1) == pytest.approx(bm1, rel=1e-2)


def test_linearized_small_q_agrees_for_weak_susceptibility() -> None:
    q = 0.1
    chi = 0.01
    kept = mie_amplitudes_small_q(q, chi, linearized=False)
    lin = mie_amplitudes_small_q(q, chi, linearized=True)
    for a, b in zip(kept, lin):
        assert a == pytest.approx(b, rel=5e-3)


def test_zero_susceptibility_scatters_nothing() -> None:
    amps = mie_amplitudes(0.5, 0.0)
    for l in range(1, amps.lmax + 1):
        assert abs(amps.electric_l(l)) < 1e-15
        assert abs(amps.magnetic_l(l)) < 1e-15
    assert mie_amplitudes_small_q(0.3, 0.0) == (0.0, 0.0, 0.0)
    e_hat = np.array([1.0, 0.0, 0.0])
    k_hat = np.array([0.0, 0.0, 1.0])
    assert np.all(effective_kernel_tensor(e_hat, k_hat, 0.2, 0.0) == 0.0)


def test_amplitudes_shrink_with_multipole_order() -> None:
    amps = mie_amplitudes(0.3, 0.2, lmax=4)
    mags = [abs(amps.electric_l(l)) for l in range(1, 5)]
    assert mags[0] > mags[1] > mags[2] > mags[3]


def test_far_field_reduces_to_dipole_pattern_at_small_q() -> None:
    # for a tiny sphere the electric dipole dominates: the co-polarized
    # field follows cos(theta) in the scattering plane and the
    # cross-polarized plane is dark
    amps = mie_amplitudes(0.05, 0.1)
    r = 50.0
    e0_theta, _ = mie_farfield(r, 0.0, 0.0, amps, 1.0)
    for theta in (0.4, 0.9, 1.3):
        e_theta, e_phi = mie_farfield(r, theta, 0.0, amps, 1.0)
        assert e_theta / e0_theta == pytest.approx(np.cos(theta), rel=1e-2)
        assert e_phi == 0.0
    # and the phi-polarized lobe is nearly isotropic in theta
    _, p0 = mie_farfield(r, 0.0, np.pi / 2, amps, 1.0)
    _, p1 = mie_farfield(r, 1.2, np.pi / 2, amps, 1.0)
    assert p1 / p0 == pytest.approx(1.0, rel=5e-3)


def test_far_field_carries_outgoing_wave_envelope() -> None:
    amps = mie_amplitudes(0.4, 0.3 + 0.2j)
    near, _ = mie_farfield(20.0, 0.7, 0.3, amps, 2.0)
    far, _ = mie_farfield(40.0, 0.7, 0.3, amps, 2.0)
    assert abs(far) * 40.0 == pytest.approx(abs(near) * 20.0, rel=1e-12)
    assert far / near == pytest.approx(0.5 * np.exp(20j), rel=1e-12)
    with pytest.raises(ValueError):
        mie_farfield(5.0, 0.7, 0.3, amps, 1.0)


def test_denominator_resonance_raises_instead_of_returning_garbage() -> None:
    # walk the electric-dipole pole (the plasmon-like resonance near
    # chi = -3) with a secant iteration on 1/amplitude; the guard must
    # fire before the iteration can evaluate at the pole itself
    q = 0.8

    def inv_amp(chi: complex) -> complex:
        return 1.0 / mie_amplitudes(q, chi, lmax=1).electric_l(1)

    x0, x1 = -3.4 + 0.0j, -3.2 + 0.0j
    with pytest.raises(ValueError, match="resonance"):
        f0, f1 = inv_amp(x0), inv_amp(x1)
        for _ in range(60):
            x0, x1 = x1, x1 - f1 * (x1 - x0) / (f1 - f0)
            f0, f1 = f1, inv_amp(x1)
        raise AssertionError(f"secant never hit the guard: |1/B| = {abs(f1):.2e}")


def test_input_validation() -> None:
    with pytest.raises(ValueError):
        mie_amplitudes(0.0, 0.1)
    with pytest.raises(ValueError):
        mie_amplitudes(2.5, 0.1)
    with pytest.raises(ValueError):
        mie_amplitudes(0.5, 0.1, lmax=0)
    with pytest.raises(ValueError):
        mie_amplitudes(0.5, 0.1, lmax=11)
    with pytest.raises(ValueError):
        mie_amplitudes_small_q(-0.1, 0.1)
    with pytest.raises(ValueError):
        mie_kernel_tensor([1.0, 1.0, 0.0], [0.0, 0.0, 1.0], 0.2, 0.1)
    with pytest.raises(ValueError):
        effective_kernel_tensor([1.0, 0.0, 0.0], [0.0, 0.0, 2.0], 0.2, 0.1)


def test_amplitude_container_accessors() -> None:
    amps = mie_amplitudes(0.2, 0.1 + 0.05j, lmax=3)
    assert isinstance(amps, MieAmplitudes)
    assert amps.lmax == 3
    assert amps.electric_l(2) == amps.electric[1]
    assert amps.magnetic_l(3) == amps.magnetic[2]
    assert amps.q == 0.2
    assert amps.chi == 0.1 + 0.05j

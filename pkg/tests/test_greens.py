"""Tests for the vacuum dyadic Green function and its identity checks."""

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from halfspacedecay.greens import greens_farfield, greens_vacuum, verify_wave_identity


def _random_points(rng, spread=8.0):
    r = rng.uniform(-spread, spread, size=3)
    rp = rng.uniform(-spread, spread, size=3)
    if np.linalg.norm(r - rp) < 0.1:
        rp = rp + 0.5
    return r, rp


def test_reciprocity_transpose_symmetry() -> None:
    rng = np.random.default_rng(101)
    for _ in range(300):
        r, rp = _random_points(rng)
        g = greens_vacuum(r, rp)
        gt = greens_vacuum(rp, r)
        scale = np.max(np.abs(g))
        assert np.max(np.abs(g - gt.T)) <= 1e-14 * scale


def test_axis_aligned_closed_forms() -> None:
    # separation s along z: transverse entries phase*(beta - 1),
    # longitudinal entry -2 beta * phase, with beta = -i/s + 1/s^2
    rng = np.random.default_rng(102)
    for _ in range(20):
        s = rng.uniform(0.3, 20.0)
        g = greens_vacuum((0.0, 0.0, s), (0.0, 0.0, 0.0))
        phase = np.exp(1j * s) / (4.0 * np.pi * s)
        beta = -1j / s + 1.0 / s**2
        assert g[0, 0] == pytest.approx(phase * (beta - 1.0), rel=1e-14)
        assert g[1, 1] == pytest.approx(phase * (beta - 1.0), rel=1e-14)
        assert g[2, 2] == pytest.approx(-2.0 * beta * phase, rel=1e-14)
        off = np.abs(g - np.diag(np.diag(g))).max()
        assert off == 0.0


def test_rotational_covariance() -> None:
    # G(R d) = R G(d) R^T for any rotation R
    rng = np.random.default_rng(103)
    for k in range(25):
        d = rng.uniform(-5, 5, size=3)
        if np.linalg.norm(d) < 0.2:
            d = d + 1.0
        rot = Rotation.random(rng=rng).as_matrix()
        g1 = greens_vacuum(rot @ d, (0, 0, 0))
        g2 = rot @ greens_vacuum(d, (0, 0, 0)) @ rot.T
        assert np.max(np.abs(g1 - g2)) <= 1e-13 * np.max(np.abs(g1))


def test_wave_identity_residual_small_in_near_zone() -> None:
    res = verify_wave_identity((5.0, 0.0, 0.0), (0.0, 0.0, 0.0), h=1e-3)
    assert res <= 1e-5


def test_wave_identity_second_order_in_step() -> None:
    r, rp = (3.0, 1.0, -2.0), (0.0, 0.5, 0.0)
    res_coarse = verify_wave_identity(r, rp, h=2e-3)
    res_fine = verify_wave_identity(r, rp, h=1e-3)
    assert 3.0 < res_coarse / res_fine < 5.0


def test_wave_identity_farfield_negative_control() -> None:
    # the radiation-zone form alone violates the defining equation at O(1/s)
    r, rp = (20.0, 0.0, 0.0), (0.0, 0.0, 0.0)
    res_full = verify_wave_identity(r, rp, h=1e-3)
    res_far = verify_wave_identity(r, rp, h=1e-3, greens_function=greens_farfield)
    assert res_far > 1e-2
    assert res_far > 100.0 * res_full


def test_farfield_is_transverse_and_approaches_full_form() -> None:
    rng = np.random.default_rng(104)
    for _ in range(20):
        d = rng.normal(size=3)
        d *= rng.uniform(30.0, 120.0) / np.linalg.norm(d)
        g_far = greens_farfield(d, (0, 0, 0))
        shat = d / np.linalg.norm(d)
        assert np.max(np.abs(g_far @ shat)) <= 1e-15
        g_full = greens_vacuum(d, (0, 0, 0))
        s = np.linalg.norm(d)
        rel = np.max(np.abs(g_far - g_full)) / np.max(np.abs(g_full))
        assert rel <= 2.0 / s


def test_coincident_points_rejected() -> None:
    with pytest.raises(ValueError):
        greens_vacuum((1.0, 2.0, 3.0), (1.0, 2.0, 3.0))
    with pytest.raises(ValueError):
        greens_farfield((1.0, 0.0, 0.0), (0.0, 0.0, 0.0))  # inside near zone
    with pytest.raises(ValueError):
        verify_wave_identity((5.0, 0.0, 0.0), (0.0, 0.0, 0.0), h=0.0)

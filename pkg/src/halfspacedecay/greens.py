"""Vacuum dyadic Green function and numerical checks of its identities.

Everything is nondimensionalized with c = omega = 1, so the wave number
is k = 1 and all lengths are in units of the reduced wavelength. The
Green function here consists of the two regular terms only; the delta
contribution at coincidence is excluded on purpose and must be added by
the caller where it matters (the Monte Carlo module does so).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "greens_vacuum",
    "greens_farfield",
    "verify_wave_identity",
]

_I3 = np.eye(3)


def greens_vacuum(r, rp, eps_coincide: float = 1e-9) -> np.ndarray:
    """Regular part of the vacuum dyadic Green function at k = 1.

    Returns the 3x3 complex tensor

        -(e^{is}/4 pi s) (I - ss) + (e^{is}/4 pi s)(-i/s + 1/s^2)(I - 3ss)

    with s = |r - rp| and ss the outer product of the unit separation
    vector. The delta term I/3 at coincidence is NOT included; callers
    that integrate across r = rp must add it themselves.

    Raises
    ------
    ValueError
        If |r - rp| < eps_coincide.
    """
    d = np.asarray(r, dtype=float) - np.asarray(rp, dtype=float)
    s = float(np.sqrt(d @ d))
    if s < eps_coincide:
        raise ValueError(
            f"greens_vacuum evaluated at coincident points (s = {s:.3e}); "
            "the delta term is the caller's responsibility"
        )
    shat = d / s
    ss = np.outer(shat, shat)
    phase = np.exp(1j * s) / (4.0 * np.pi * s)
    return -phase * (_I3 - ss) + phase * (-1j / s + 1.0 / s**2) * (_I3 - 3.0 * ss)


def greens_farfield(r, rp, s_min: float = 10.0) -> np.ndarray:
    """Far-field (radiation-zone) part of the vacuum Green function.

    Keeps only the transverse 1/s term, -(e^{is}/4 pi s)(I - ss). The
    result annihilates the separation direction: G_far . shat = 0.

    Raises
    ------
    ValueError
        If |r - rp| < s_min (default 10, the far zone at k = 1).
    """
    d = np.asarray(r, dtype=float) - np.asarray(rp, dtype=float)
    s = float(np.sqrt(d @ d))
    if s < s_min:
        raise ValueError(f"far-field form requires s >= {s_min}, got s = {s:.3g}")
    shat = d / s
    return -np.exp(1j * s) / (4.0 * np.pi * s) * (_I3 - np.outer(shat, shat))


def verify_wave_identity(r, rp, h: float, greens_function=greens_vacuum) -> float:
    """Finite-difference check of the wave equations obeyed by the Green function.

    Verifies, away from coincidence and with central differences of step
    h in the first argument, both

        (I lap - 3 grad grad) . G = -G        (double-del identity)
        -curl curl G + G = 0                  (defining equation, chi = 0)

    and returns the larger of the two maximum entry discrepancies,
    normalized by the largest entry modulus of G. The error of the
    scheme is O(h^2); at s = 5 and h = 1e-3 the result is below 1e-5.

    The optional greens_function argument exists for negative controls:
    feeding the far-field form makes the identities fail at O(1/s).
    """
    if h <= 0:
        raise ValueError("finite-difference step h must be positive")
    r = np.asarray(r, dtype=float)
    rp = np.asarray(rp, dtype=float)

    g0 = greens_function(r, rp)
    # All second partials d_m d_i of every entry, by central differences.
    hess = np.empty((3, 3, 3, 3), dtype=complex)
    shifted = {}

    def g_at(steps):
        key = tuple(steps)
        if key not in shifted:
            offset = np.zeros(3)
            for axis, sign in steps:
                offset[axis] += sign * h
            shifted[key] = greens_function(r + offset, rp)
        return shifted[key]

    for m in range(3):
        hess[m, m] = (g_at(((m, +1),)) + g_at(((m, -1),)) - 2.0 * g0) / h**2
        for i in range(m + 1, 3):
            mixed = (
                g_at(((m, +1), (i, +1)))
                - g_at(((m, +1), (i, -1)))
                - g_at(((m, -1), (i, +1)))
                + g_at(((m, -1), (i, -1)))
            ) / (4.0 * h**2)
            hess[m, i] = mixed
            hess[i, m] = mixed

    lap = hess[0, 0] + hess[1, 1] + hess[2, 2]
    # P_mn = sum_i d_m d_i G_in, the grad-div part shared by both identities.
    graddiv = np.einsum("miin->mn", hess)

    scale = np.max(np.abs(g0))
    # (I lap - 3 grad grad) . G + G = 0
    err_doubledel = np.max(np.abs(lap - 3.0 * graddiv + g0)) / scale
    # -curl curl G + G = (lap - grad div) G + G = 0
    err_curlcurl = np.max(np.abs(lap - graddiv + g0)) / scale
    return float(max(err_doubledel, err_curlcurl))

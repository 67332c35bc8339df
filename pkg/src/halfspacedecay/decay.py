"""Average spontaneous-decay rate of an atom above a coarse dielectric half-space.

The half-space (z < 0) is a dilute random suspension of spheres of
radius q at filling fraction nv0 and susceptibility chi; the atom sits
at height zeta_a = k z_a above the mean surface. Everything is in
k = 1 units and accurate through second order in chi and leading orders
in q, with the 1/zeta_a far-zone term kept and 1/zeta_a^2 dropped.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .medium import MediumSpec, chi_at
from .specfun import exp_integral_en

__all__ = [
    "DecaySetup",
    "DecayCurvePoint",
    "lateral_integral_exact",
    "lateral_integral_asymptotic",
    "decay_correction_f",
    "decay_scattering_only",
    "decay_absorbing_only",
    "decay_rate_relative",
    "decay_rate_curve",
]

# push the oscillatory argument -2i*zeta off the negative imaginary axis
# endpoint singularity guard; the shift is far below every tolerance used
_ABEL_SHIFT = 1e-12


@dataclass(frozen=True)
class DecaySetup:
    """Atom height, medium, and dipole orientation for a decay-rate evaluation.

    dipole_parallel_fraction is |mu_par|^2/|mu|^2, the squared fraction
    of the transition dipole lying in the plane of the interface; only
    that component acquires the 1/zeta_a correction kept here.
    """

    zeta_a: float
    medium: MediumSpec
    dipole_parallel_fraction: float = 1.0

    def __post_init__(self):
        if self.zeta_a <= 0:
            raise ValueError("zeta_a must be > 0 (atom outside the medium)")
        if not 0.0 <= self.dipole_parallel_fraction <= 1.0:
            raise ValueError("dipole_parallel_fraction must lie in [0, 1]")
        if self.zeta_a < 5.0:
            warnings.warn(
                "zeta_a < 5 is outside the far-zone validity of the "
                "1/zeta_a expansion; results are extrapolations",
                stacklevel=2,
            )


@dataclass(frozen=True)
class DecayCurvePoint:
    """One evaluated point of the decay-rate curve.

    first_order_term and second_order_term are the chi and chi^2 parts
    of the complex bracket whose imaginary part is f_value; they are
    reported for diagnostics and sum to f_value under Im.
    """

    zeta_a: float
    f_value: float
    gamma_relative: float
    first_order_term: complex
    second_order_term: complex


def lateral_integral_exact(zeta_a: float) -> complex:
    """Closed form of the lateral half-space response integral.

    The xx (in-plane) component of the depth- and lateral-integrated
    product of two free-space tensor propagators, one from the atom down
    to a running point of the half-space and one back:

        (zeta_a/16 pi) [ (4/3) E_0(u) - E_1(u) - (1/3) E_3(u) ],
        u = -2i zeta_a.

    Conditionally convergent; the generalized exponential integrals
    carry the +i0 (Abel) regularization via a tiny real shift of u.
    """
    if zeta_a <= 0:
        raise ValueError("zeta_a must be > 0")
    u = -2j * zeta_a + _ABEL_SHIFT
    combo = (
        4.0 / 3.0 * exp_integral_en(0, u)
        - exp_integral_en(1, u)
        - exp_integral_en(3, u) / 3.0
    )
    return zeta_a / (16.0 * np.pi) * combo


def lateral_integral_asymptotic(zeta_a: float) -> complex:
    """Leading large-zeta_a form -e^(2i zeta_a)/(32 pi zeta_a).

    Relative accuracy is O(1/zeta_a); the next term of the expansion is
    down by 3/(2 zeta_a).
    """
    if zeta_a <= 0:
        raise ValueError("zeta_a must be > 0")
    return -np.exp(2j * zeta_a) / (32.0 * np.pi * zeta_a)


def _f_terms(zeta_a: float, q: float, chi: complex):
    if zeta_a <= 0:
        raise ValueError("zeta_a must be > 0")
    if q < 0:
        raise ValueError("sphere size parameter q must be >= 0")
    chi = complex(chi)
    osc = np.exp(2j * zeta_a) / zeta_a
    first = (1.0 - 0.4 * q * q) * chi * osc
    second = -(1.0 / 3.0 - 28.0 / 75.0 * q * q - 2j / 9.0 * q**3) * chi * chi * osc
    return first, second


def decay_correction_f(zeta_a: float, q: float, chi: complex) -> float:
    """Oscillatory decay-rate correction f(zeta_a).

    f = Im{ [1 - (2/5) q^2 - (1/3 - (28/75) q^2 - (2i/9) q^3) chi ]
            chi e^(2i zeta_a) / zeta_a }

    The mean relative decay rate is 1 - (3/16) nv0 * f per unit of
    in-plane dipole fraction.
    """
    first, second = _f_terms(zeta_a, q, chi)
    return float((first + second).imag)


def decay_scattering_only(zeta_a: float, q: float, chi_real: float) -> float:
    """f for a purely scattering medium (real chi)."""
    if isinstance(chi_real, complex):
        raise ValueError("chi_real must be a real number")
    if zeta_a <= 0:
        raise ValueError("zeta_a must be > 0")
    chi = float(chi_real)
    q2 = q * q
    s, c = np.sin(2.0 * zeta_a), np.cos(2.0 * zeta_a)
    return float(
        (1.0 - 0.4 * q2 - (1.0 / 3.0 - 28.0 / 75.0 * q2) * chi) * chi * s / zeta_a
        + 2.0 / 9.0 * q**3 * chi * chi * c / zeta_a
    )


def decay_absorbing_only(zeta_a: float, chi: complex) -> float:
    """f for point-like absorbing spheres (q -> 0, complex chi)."""
    if zeta_a <= 0:
        raise ValueError("zeta_a must be > 0")
    cr, ci = complex(chi).real, complex(chi).imag
    s, c = np.sin(2.0 * zeta_a), np.cos(2.0 * zeta_a)
    return float(
        (cr - (cr * cr - ci * ci) / 3.0) * s / zeta_a
        + (1.0 - 2.0 * cr / 3.0) * ci * c / zeta_a
    )


def decay_rate_relative(setup: DecaySetup) -> DecayCurvePoint:
    """Mean decay rate relative to free space for one atom height.

    <Gamma>/Gamma_0 = 1 - (3/16) nv0 * (|mu_par|^2/|mu|^2) * f(zeta_a),
    with the medium's susceptibility evaluated at the transition
    frequency (omega = 1 in these units).
    """
    chi = chi_at(setup.medium.chi, 1.0)
    first, second = _f_terms(setup.zeta_a, setup.medium.radius_q, chi)
    f_value = float((first + second).imag)
    gamma = 1.0 - 3.0 / 16.0 * setup.medium.density_nv0 * setup.dipole_parallel_fraction * f_value
    return DecayCurvePoint(
        zeta_a=float(setup.zeta_a),
        f_value=f_value,
        gamma_relative=float(gamma),
        first_order_term=complex(first),
        second_order_term=complex(second),
    )


def decay_rate_curve(setups) -> list:
    """Evaluate decay_rate_relative over an iterable of setups."""
    return [decay_rate_relative(s) for s in setups]

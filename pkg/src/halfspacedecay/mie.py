"""Mie multipole amplitudes and scattering kernels for a dielectric sphere.

Amplitudes are for a plane wave of unit wave number scattering off a
homogeneous sphere of radius q (k = 1 units) with susceptibility chi,
i.e. permittivity eps = 1 + chi. Includes the small-q closed forms of
the leading amplitudes, the far-field scattered wave, and the two
scattering kernel tensors whose proportionality (effective kernel equal
to chi times the single-sphere kernel) ties the effective-medium
response to Mie theory.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .specfun import angular_pi_tau, spherical_bessel_j, spherical_hankel1

__all__ = [
    "MieAmplitudes",
    "mie_amplitudes",
    "mie_amplitudes_small_q",
    "mie_farfield",
    "mie_kernel_tensor",
    "effective_kernel_tensor",
]

_I3 = np.eye(3)


@dataclass(frozen=True)
class MieAmplitudes:
    """Electric and magnetic multipole amplitudes B^e_l, B^m_l for l = 1..lmax."""

    electric: tuple
    magnetic: tuple
    q: float
    chi: complex

    @property
    def lmax(self) -> int:
        return len(self.electric)

    def electric_l(self, l: int) -> complex:
        return self.electric[l - 1]

    def magnetic_l(self, l: int) -> complex:
        return self.magnetic[l - 1]


def _sqrt_eps(chi: complex) -> complex:
    # decaying wave inside an absorbing sphere: pick Im sqrt(eps) >= 0
    root = np.sqrt(complex(1.0 + chi))
    if root.imag < 0:
        root = -root
    return root


def mie_amplitudes(q: float, chi: complex, lmax: int = 4) -> MieAmplitudes:
    """Multipole amplitudes of a homogeneous sphere, all orders l <= lmax.

    B^p_l = i^(l+1) (2l+1)/(l(l+1)) N^p_l / D^p_l, with numerators and
    denominators built from spherical Bessel (inside, at q' = sqrt(eps) q)
    and Hankel (outgoing, at q) functions. Intended for q <= 2 and
    lmax <= 10.

    Raises
    ------
    ValueError
        On a denominator resonance (|D| below 1e-14 of its term scale),
        which cannot occur in the dilute small-q regime this package
        targets but guards against misuse at larger q.
    """
    if q <= 0:
        raise ValueError("sphere size parameter q must be > 0")
    if q > 2:
        raise ValueError("q > 2 is outside the supported range")
    if lmax != int(lmax) or not 1 <= int(lmax) <= 10:
        raise ValueError("lmax must be an integer in [1, 10]")
    lmax = int(lmax)
    chi = complex(chi)
    eps = 1.0 + chi
    qp = _sqrt_eps(chi) * q

    electric = []
    magnetic = []
    for l in range(1, lmax + 1):
        jq = spherical_bessel_j(l, q)
        jq1 = spherical_bessel_j(l + 1, q)
        jp = spherical_bessel_j(l, qp)
        jp1 = spherical_bessel_j(l + 1, qp)
        hq = spherical_hankel1(l, q)
        hq1 = spherical_hankel1(l + 1, q)

        outer_j = (l + 1) * jq - q * jq1
        inner_j = (l + 1) * jp - qp * jp1
        outer_h = (l + 1) * hq - q * hq1

        ne = eps * outer_j * jp - inner_j * jq
        nm = outer_j * jp - inner_j * jq
        de = eps * outer_h * jp - inner_j * hq
        dm = outer_h * jp - inner_j * hq

        pref = 1j ** (l + 1) * (2 * l + 1) / (l * (l + 1))
        for name, num, den in (("electric", ne, de), ("magnetic", nm, dm)):
            scale = max(abs(eps * outer_h * jp), abs(inner_j * hq), 1e-300)
            if abs(den) < 1e-14 * scale:
                raise ValueError(
                    f"{name} denominator resonance at l={l}, q={q}, chi={chi}"
                )
        electric.append(complex(pref * ne / de))
        magnetic.append(complex(pref * nm / dm))

    return MieAmplitudes(tuple(electric), tuple(magnetic), float(q), chi)


def mie_amplitudes_small_q(q: float, chi: complex, linearized: bool = False):
    """Closed-form small-q amplitudes (B^e_1, B^e_2, B^m_1).

    The default keeps the full chi dependence of the leading dipole
    denominators; linearized=True additionally expands to first order in
    chi, which is the form the effective-medium kernel matches.
    """
    if q < 0:
        raise ValueError("sphere size parameter q must be >= 0")
    chi = complex(chi)
    if linearized:
        be1 = (
            1j / 3.0 * q**3 * chi
            * (1.0 - chi / 3.0 - q**2 / 5.0 * (1.0 - 5.0 / 3.0 * chi) + 2j / 9.0 * q**3 * chi)
        )
        be2 = -(1.0 / 90.0) * q**5 * chi * (1.0 - 0.4 * chi)
    else:
        w = chi / (3.0 + chi)
        be1 = 1j * q**3 * w * (1.0 - 0.6 * q**2 * (1.0 - chi) / (3.0 + chi) + 2j / 3.0 * q**3 * w)
        be2 = -(1.0 / 18.0) * q**5 * chi / (5.0 + 2.0 * chi)
    bm1 = 1j / 30.0 * q**5 * chi
    return complex(be1), complex(be2), complex(bm1)


def mie_farfield(r: float, theta: float, phi: float, amplitudes: MieAmplitudes, E0: float):
    """Far-zone scattered field components (E_theta, E_phi) at k = 1.

    The incident wave travels along +z with the electric field along x
    and amplitude E0; r >= 10 keeps the evaluation in the radiation
    zone. Sums are truncated at the amplitudes' lmax.
    """
    if r < 10.0:
        raise ValueError("far-field evaluation requires r >= 10 (k = 1 units)")
    u = float(np.cos(theta))
    env = E0 * np.exp(1j * r) / r
    sum_theta = 0.0 + 0.0j
    sum_phi = 0.0 + 0.0j
    for l in range(1, amplitudes.lmax + 1):
        pi_l, tau_l = angular_pi_tau(l, u)
        be = amplitudes.electric_l(l)
        bm = amplitudes.magnetic_l(l)
        factor = (-1j) ** l
        sum_theta += factor * (be * tau_l + bm * pi_l)
        sum_phi += factor * (be * pi_l + bm * tau_l)
    e_theta = env * np.cos(phi) * sum_theta
    e_phi = -env * np.sin(phi) * sum_phi
    return complex(e_theta), complex(e_phi)


def _check_unit(vec, name: str) -> np.ndarray:
    v = np.asarray(vec, dtype=float)
    if abs(v @ v - 1.0) > 2e-12:
        raise ValueError(f"{name} must be a unit vector (|{name}|^2 off by > 1e-12)")
    return v


def mie_kernel_tensor(e_hat, k_hat, q: float, chi: complex) -> np.ndarray:
    """Single-sphere scattering kernel through order q^3.

    The tensor bracket relating the scattered far field of one small
    sphere to the incident plane wave, for observation direction e_hat
    and incidence direction k_hat:

        I (1 - q^2/5 + (q^2/5) e.k)
        + chi [ I (-1/3 + q^2/3 + (2i/9) q^3) - (q^2/25)(I e.k + k e) ]

    where k e denotes the dyad with rows along k_hat.
    """
    e = _check_unit(e_hat, "e_hat")
    k = _check_unit(k_hat, "k_hat")
    chi = complex(chi)
    ek = float(e @ k)
    q2 = q * q
    ke = np.outer(k, e)
    return (
        _I3 * (1.0 - q2 / 5.0 + q2 / 5.0 * ek)
        + chi * (_I3 * (-1.0 / 3.0 + q2 / 3.0 + 2j / 9.0 * q**3) - q2 / 25.0 * (_I3 * ek + ke))
    )


def effective_kernel_tensor(e_hat, kp_hat, q: float, chi: complex) -> np.ndarray:
    """Effective-medium response kernel for plane-wave incidence.

    Combined first- and second-order (in chi) kernel of the averaged
    medium, with the incoming direction hard-wired to -kp_hat:

        chi I [1 - (q^2/5)(1 - e.k)]
        - chi^2 [ I (1/3 - q^2/3 + (q^2/25) e.k - (2i/9) q^3) + (q^2/25) k e ]

    Equals chi * mie_kernel_tensor(e_hat, kp_hat, q, chi) identically;
    the equality is the consistency check between the averaged response
    and single-sphere Mie scattering.
    """
    e = _check_unit(e_hat, "e_hat")
    k = _check_unit(kp_hat, "kp_hat")
    chi = complex(chi)
    ek = float(e @ k)
    q2 = q * q
    ke = np.outer(k, e)
    first = chi * _I3 * (1.0 - q2 / 5.0 * (1.0 - ek))
    second = -(chi**2) * (
        _I3 * (1.0 / 3.0 - q2 / 3.0 + q2 / 25.0 * ek - 2j / 9.0 * q**3) + q2 / 25.0 * ke
    )
    return first + second

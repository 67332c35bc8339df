"""Statistical descriptors of the granular medium.

The medium is a dilute random arrangement of non-overlapping spheres of
radius a (equal to q in units with c = omega = 1) with center density n,
filling a half-space. This module provides the susceptibility model of
the sphere material, the center-overlap function c(r) and its second
moment, the effective susceptibility of the averaged medium, and the
mean filling profile near the surface.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import dblquad, quad

__all__ = [
    "LorentzSusceptibility",
    "MediumSpec",
    "chi_at",
    "overlap_c",
    "overlap_i2",
    "overlap_i2_numeric",
    "chi_effective",
    "mean_filling_profile",
]


@dataclass(frozen=True)
class LorentzSusceptibility:
    """Sphere-material susceptibility: one damped resonance, or a fixed value.

    Parametric variant:

        chi(w) = strength * resonance^2 / (resonance^2 - w^2 - i damping w)

    which is passive (Im chi >= 0 for w > 0) whenever strength >= 0 and
    damping >= 0, and vanishes as w -> inf. The direct variant freezes a
    complex value that chi_at returns at every frequency; use it when
    only the value at the working frequency matters.
    """

    strength: float = 0.0
    resonance: float = 1.0
    damping: float = 0.0
    value: complex | None = None

    def __post_init__(self):
        if self.value is None:
            if self.strength < 0:
                raise ValueError("oscillator strength must be >= 0")
            if self.resonance <= 0:
                raise ValueError("resonance frequency must be > 0")
            if self.damping < 0:
                raise ValueError("damping must be >= 0")

    @classmethod
    def fixed(cls, chi: complex) -> "LorentzSusceptibility":
        """Susceptibility pinned to a single complex value."""
        return cls(value=complex(chi))


@dataclass(frozen=True)
class MediumSpec:
    """Half-space of spheres: radius q, filling factor n*v0, susceptibility."""

    radius_q: float
    density_nv0: float
    chi: LorentzSusceptibility

    def __post_init__(self):
        if self.radius_q <= 0:
            raise ValueError("sphere radius q must be > 0")
        if self.density_nv0 < 0:
            raise ValueError("filling factor n*v0 must be >= 0")
        if self.density_nv0 >= 0.1:
            warnings.warn(
                "filling factor n*v0 >= 0.1: the averaged response is "
                "first order in the density and loses accuracy here",
                stacklevel=2,
            )
        if self.radius_q >= 1:
            warnings.warn(
                "sphere radius q >= 1: the finite-size expansions assume q << 1",
                stacklevel=2,
            )


def chi_at(model: LorentzSusceptibility, omega: float) -> complex:
    """Susceptibility of the sphere material at frequency omega > 0."""
    if omega <= 0:
        raise ValueError("frequency must be positive")
    if model.value is not None:
        return complex(model.value)
    denom = model.resonance**2 - omega**2 - 1j * model.damping * omega
    if denom == 0:
        raise ValueError("undamped resonance hit exactly; chi diverges")
    return model.strength * model.resonance**2 / denom


def overlap_c(r, a: float):
    """Normalized overlap of two spheres of radius a at center distance r.

    c(r) = (1 - 3r/(4a) + r^3/(16 a^3)) for r < 2a and 0 beyond contact;
    monotone from c(0) = 1 to c(2a) = 0. Accepts array r.
    """
    if a <= 0:
        raise ValueError("sphere radius must be > 0")
    x = np.asarray(r, dtype=float) / a
    val = np.where(x < 2.0, 1.0 - 0.75 * x + x**3 / 16.0, 0.0)
    val = np.maximum(val, 0.0)  # roundoff guard at contact
    return float(val) if val.ndim == 0 else val


def overlap_i2(r: float, cos_theta: float, a: float) -> float:
    """Second moment of the sphere-overlap integral (closed form).

    The moment weights the overlap volume of two spheres at separation r
    by the squared coordinate along a fixed axis; cos_theta is the angle
    between the separation vector and that axis. Vanishes at and beyond
    contact (r >= 2a), and at r = 0 equals v0 a^2 / 5.
    """
    if a <= 0:
        raise ValueError("sphere radius must be > 0")
    if r >= 2.0 * a:
        return 0.0
    x = r / a
    c2 = cos_theta * cos_theta
    v0 = 4.0 * np.pi * a**3 / 3.0
    bracket = (
        0.2
        - (3.0 * x / 16.0) * (1.0 + c2)
        + (x**2 / 4.0) * c2
        + (x**3 / 32.0) * (1.0 - 3.0 * c2)
        - (x**5 / 1280.0) * (3.0 - 5.0 * c2)
    )
    return v0 * a**2 * bracket


def overlap_i2_numeric(r: float, cos_theta: float, a: float, tol: float = 1e-8) -> float:
    """Second overlap moment by direct numerical integration (oracle).

    Integrates h'^2 over the intersection of two balls of radius a whose
    centers are separated by (x, 0, h) with x = r sin(theta) and
    h = r cos(theta), the primed frame centered midway between them. The
    azimuthal (y') integration is carried out in closed form, leaving an
    adaptive 2D quadrature; tol is the absolute tolerance requested.

    This routine is deliberately independent of overlap_i2 and serves as
    its oracle.
    """
    if a <= 0:
        raise ValueError("sphere radius must be > 0")
    if not 0.0 <= r < 2.0 * a:
        raise ValueError("separation must satisfy 0 <= r < 2a")
    cos_theta = float(cos_theta)
    if abs(cos_theta) > 1.0:
        raise ValueError("cos_theta must lie in [-1, 1]")
    x = r * np.sqrt(max(0.0, 1.0 - cos_theta**2))
    hsep = abs(r * cos_theta)
    a2 = a * a

    def integrand(hp, xp):
        r1 = a2 - (0.5 * x - xp) ** 2 - (0.5 * hsep - hp) ** 2
        r2 = a2 - (0.5 * x + xp) ** 2 - (0.5 * hsep + hp) ** 2
        m = r1 if r1 < r2 else r2
        if m <= 0.0:
            return 0.0
        return 2.0 * hp * hp * np.sqrt(m)

    val, err = dblquad(
        integrand,
        0.5 * x - a,
        a - 0.5 * x,
        0.5 * hsep - a,
        a - 0.5 * hsep,
        epsabs=tol,
        epsrel=1e-10,
    )
    if err > 10.0 * max(tol, abs(val) * 1e-7):
        raise RuntimeError(
            f"overlap moment quadrature did not converge: estimate {err:.2e} "
            f"exceeds the requested tolerance {tol:.2e}"
        )
    return float(val)


def chi_effective(chi: complex, q: float, nv0: float) -> complex:
    """Effective susceptibility of the averaged dilute sphere medium.

    chi_e = n v0 chi [1 - chi (1/3 - (22/75) q^2 - (2i/9) q^3)], the
    local form valid through second order in chi and through q^3 in the
    sphere size.
    """
    if q < 0:
        raise ValueError("sphere radius q must be >= 0")
    if nv0 < 0:
        raise ValueError("filling factor n*v0 must be >= 0")
    chi = complex(chi)
    return nv0 * chi * (1.0 - chi * (1.0 / 3.0 - 22.0 / 75.0 * q**2 - 2j / 9.0 * q**3))


def mean_filling_profile(h, a: float, n: float):
    """Mean local filling fraction at signed distance h from the surface.

    h > 0 lies outside the medium. Equals n*v0 for h <= -a, 0 for
    h >= a, and in between

        n v0 theta_V + n [v0/2 eps(h) - pi a^2 h + (pi/3) h^3]

    with theta_V the volume step (1 inside, 1/2 on the surface, 0
    outside) and eps(h) = sign(h). Continuous, monotone non-increasing;
    the bracket is odd in h, so the surface excess integrates to zero.
    Accepts array h.
    """
    if a <= 0:
        raise ValueError("sphere radius must be > 0")
    if n < 0:
        raise ValueError("center density must be >= 0")
    h = np.asarray(h, dtype=float)
    v0 = 4.0 * np.pi * a**3 / 3.0
    theta_v = np.where(h < 0, 1.0, np.where(h > 0, 0.0, 0.5))
    band = 0.5 * v0 * np.sign(h) - np.pi * a**2 * h + (np.pi / 3.0) * h**3
    val = n * v0 * theta_v + n * band * (np.abs(h) < a)
    return float(val) if val.ndim == 0 else val


def surface_excess_integral(a: float, n: float) -> float:
    """Integral over the surface band of (profile - bulk step); zero by symmetry.

    Provided for the test suite; evaluates the integral by quadrature
    rather than assuming the analytic cancellation.
    """
    bulk = n * 4.0 * np.pi * a**3 / 3.0
    val, _ = quad(
        lambda h: mean_filling_profile(h, a, n) - bulk * (h < 0),
        -a,
        a,
        epsabs=1e-14,
        limit=200,
        points=[0.0],
    )
    return float(val)

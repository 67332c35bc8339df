"""Spontaneous decay of an atom near a coarse absorbing half-space.

The medium is a dilute random arrangement of dielectric spheres filling
z < 0; the package evaluates the configuration-averaged decay rate of
an excited atom above it, in the far zone and through second order in
the sphere susceptibility, together with the Mie-theory and Monte Carlo
checks that validate the averaged description. All lengths are in units
of the inverse wave number (k = 1).
"""

from .decay import (
    DecayCurvePoint,
    DecaySetup,
    decay_absorbing_only,
    decay_correction_f,
    decay_rate_curve,
    decay_rate_relative,
    decay_scattering_only,
    lateral_integral_asymptotic,
    lateral_integral_exact,
)
from .greens import greens_farfield, greens_vacuum, verify_wave_identity
from .mcvalidate import (
    EstimateWithError,
    SlabGeometry,
    SphereConfiguration,
    analytic_first_order,
    born_first_order_average,
    configuration_from_text,
    configuration_to_text,
    estimate_filling,
    estimate_pair_overlap,
    estimate_surface_moment_i2,
    sample_configuration,
    sample_configurations,
)
from .medium import (
    LorentzSusceptibility,
    MediumSpec,
    chi_at,
    chi_effective,
    mean_filling_profile,
    overlap_c,
    overlap_i2,
    overlap_i2_numeric,
)
from .mie import (
    MieAmplitudes,
    effective_kernel_tensor,
    mie_amplitudes,
    mie_amplitudes_small_q,
    mie_farfield,
    mie_kernel_tensor,
)
from .specfun import (
    angular_pi_tau,
    exp_integral_en,
    exp_integral_en_asymptotic,
    spherical_bessel_j,
    spherical_hankel1,
)

__version__ = "0.1.0"

__all__ = [
    "DecayCurvePoint",
    "DecaySetup",
    "EstimateWithError",
    "LorentzSusceptibility",
    "MediumSpec",
    "MieAmplitudes",
    "SlabGeometry",
    "SphereConfiguration",
    "analytic_first_order",
    "angular_pi_tau",
    "born_first_order_average",
    "chi_at",
    "chi_effective",
    "configuration_from_text",
    "configuration_to_text",
    "decay_absorbing_only",
    "decay_correction_f",
    "decay_rate_curve",
    "decay_rate_relative",
    "decay_scattering_only",
    "effective_kernel_tensor",
    "estimate_filling",
    "estimate_pair_overlap",
    "estimate_surface_moment_i2",
    "exp_integral_en",
    "exp_integral_en_asymptotic",
    "greens_farfield",
    "greens_vacuum",
    "lateral_integral_asymptotic",
    "lateral_integral_exact",
    "mean_filling_profile",
    "mie_amplitudes",
    "mie_amplitudes_small_q",
    "mie_farfield",
    "mie_kernel_tensor",
    "overlap_c",
    "overlap_i2",
    "overlap_i2_numeric",
    "sample_configuration",
    "sample_configurations",
    "spherical_bessel_j",
    "spherical_hankel1",
    "verify_wave_identity",
]

"""Special functions used throughout the package.

Provides generalized exponential integrals E_n for complex argument,
spherical Bessel and Hankel functions (thin wrappers over scipy), and
the Mie angular functions pi_l, tau_l.

Conventions
-----------
The angular functions follow the Bohren & Huffman normalization, i.e.
associated Legendre functions without the Condon-Shortley phase, so
pi_1(u) = 1 and tau_1(u) = u.

References
----------
DLMF 8.19 (generalized exponential integral), 10.47 (spherical Bessel
functions); Bohren & Huffman, "Absorption and Scattering of Light by
Small Particles", section 4.3.
"""

from __future__ import annotations

import numpy as np
from scipy.special import roots_legendre, spherical_jn, spherical_yn

__all__ = [
    "exp_integral_en",
    "exp_integral_en_asymptotic",
    "spherical_bessel_j",
    "spherical_hankel1",
    "angular_pi_tau",
]

# 20-point Gauss-Legendre rule on [-1, 1]; composite panels below push the
# quadrature error to machine precision for the analytic integrands used here.
_GL_X, _GL_W = roots_legendre(20)

# Truncation point of the substituted integral: the weight exp(-u) makes the
# tail beyond u = 45 smaller than 1e-19 relative to the whole integral.
_EN_UMAX = 45.0


def _check_en_domain(x: complex) -> complex:
    x = complex(x)
    if x == 0:
        raise ValueError("E_n(x) is undefined at x = 0")
    if x.imag == 0.0 and x.real < 0.0:
        raise ValueError("E_n(x) is not defined on the negative real axis (branch cut)")
    if not (np.isfinite(x.real) and np.isfinite(x.imag)):
        raise ValueError("E_n(x) requires finite x")
    return x


def exp_integral_en(n: int, x: complex) -> complex:
    """Generalized exponential integral E_n(x) = int_1^inf dt exp(-x t)/t^n.

    Valid for complex x off the negative real axis. For oscillatory
    arguments (x near the imaginary axis) the integration ray is rotated
    to t = 1 + s*exp(-i arg x), along which the integrand decays
    monotonically; the rotation crosses no singularity of the integrand
    for n >= 1 and |arg x| < pi.

    Parameters
    ----------
    n : int
        Non-negative order.
    x : complex
        Argument, x != 0 and not on the negative real axis.

    Returns
    -------
    complex
        E_n(x), accurate to close to machine precision for |x| >= 0.05.

    Notes
    -----
    Each order is integrated directly. Building n >= 2 from E_1 via the
    upward recurrence E_{n+1} = (exp(-x) - x E_n)/n amplifies the error
    of E_1 by roughly |x|/n per step, which is not acceptable for the
    strongly cancelling combinations formed in the decay module; the
    recurrence is kept as a cross-check in the test suite instead.
    """
    if n != int(n) or n < 0:
        raise ValueError("order n must be a non-negative integer")
    n = int(n)
    x = _check_en_domain(x)
    if n == 0:
        return np.exp(-x) / x

    # Substitute t = 1 + (u/|x|) exp(-i phi), phi = arg x, giving
    #   E_n(x) = exp(-x) exp(-i phi)/|x| * int_0^inf du exp(-u) g(u),
    #   g(u) = (1 + (u/|x|) exp(-i phi))^(-n).
    # g is analytic for u >= 0 (its singularity sits at u = -|x| e^{i phi});
    # composite Gauss-Legendre panels, geometrically widening away from 0,
    # resolve it to machine precision as long as the first panel is narrow
    # compared with the distance |x| to that singularity.
    phi = np.angle(x)
    ax = abs(x)
    rot = np.exp(-1j * phi)

    edges = [0.0]
    width = 0.5 * min(1.0, ax)
    while edges[-1] < _EN_UMAX:
        edges.append(min(edges[-1] + width, _EN_UMAX))
        width *= 2.0

    lo = np.asarray(edges[:-1])
    hi = np.asarray(edges[1:])
    mid = 0.5 * (hi + lo)
    half = 0.5 * (hi - lo)
    u = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    w = (half[:, None] * _GL_W[None, :]).ravel()

    g = (1.0 + (u / ax) * rot) ** (-n)
    integral = np.sum(w * np.exp(-u) * g)
    result = np.exp(-x) * rot / ax * integral
    if not (np.isfinite(result.real) and np.isfinite(result.imag)):
        raise ValueError(f"E_{n}({x}) overflowed (Re x too large and negative?)")
    return complex(result)


def exp_integral_en_asymptotic(n: int, x: complex, terms: int) -> complex:
    """Truncated large-|x| asymptotic series of E_n(x).

    Returns (exp(-x)/x) * sum_{k < terms} (-1)^k n(n+1)...(n+k-1) / x^k,
    the empty product at k = 0 being 1. Intended for |x| >= 1 with at
    most 6 terms; the series is asymptotic, not convergent.
    """
    if n != int(n) or n < 0:
        raise ValueError("order n must be a non-negative integer")
    n = int(n)
    terms = int(terms)
    if terms < 1:
        raise ValueError("need at least one term")
    x = complex(x)
    total = 0.0 + 0.0j
    coeff = 1.0  # rising factorial n(n+1)...(n+k-1), empty product = 1
    sign = 1.0
    xk = 1.0 + 0.0j
    for k in range(terms):
        total += sign * coeff / xk
        coeff *= n + k
        sign = -sign
        xk *= x
    return complex(np.exp(-x) / x * total)


def spherical_bessel_j(l: int, z: complex, derivative: bool = False) -> complex:
    """Spherical Bessel function j_l(z) (or its derivative) for complex z.

    The removable limit at z = 0 is handled explicitly: j_l(0) equals 1
    for l = 0 and 0 otherwise, and j_l'(0) is 1/3 for l = 1, 0 otherwise.
    """
    _check_order(l)
    z = complex(z)
    if z == 0:
        if derivative:
            return 1.0 / 3.0 if l == 1 else 0.0
        return 1.0 if l == 0 else 0.0
    return complex(spherical_jn(l, z, derivative=derivative))


def spherical_hankel1(l: int, z: complex, derivative: bool = False) -> complex:
    """Spherical Hankel function of the first kind, h_l(z) = j_l(z) + i y_l(z)."""
    _check_order(l)
    z = complex(z)
    if z == 0:
        raise ValueError("h_l^(1) diverges at z = 0")
    return complex(
        spherical_jn(l, z, derivative=derivative)
        + 1j * spherical_yn(l, z, derivative=derivative)
    )


def _check_order(l: int) -> None:
    if l != int(l) or l < 0:
        raise ValueError("order l must be a non-negative integer")
    if l > 10:
        raise ValueError("orders above l = 10 are outside the supported range")


def angular_pi_tau(l: int, u):
    """Mie angular functions (pi_l(u), tau_l(u)) with u = cos(theta).

    pi_l = P_l^1(u)/sin(theta) and tau_l = d P_l^1 / d theta, in the
    convention without the Condon-Shortley phase, evaluated with the
    standard upward recurrences. Both are polynomials in u, hence finite
    at u = +-1. Accepts array u and returns arrays of the same shape.
    """
    if l != int(l) or l < 1:
        raise ValueError("order l must be a positive integer")
    if l > 10:
        raise ValueError("orders above l = 10 are outside the supported range")
    u = np.asarray(u, dtype=float)
    pi_prev = np.zeros_like(u)  # pi_0
    pi_cur = np.ones_like(u)  # pi_1
    for m in range(2, l + 1):
        pi_next = ((2 * m - 1) * u * pi_cur - m * pi_prev) / (m - 1)
        pi_prev, pi_cur = pi_cur, pi_next
    tau = l * u * pi_cur - (l + 1) * pi_prev
    if u.ndim == 0:
        return float(pi_cur), float(tau)
    return pi_cur, tau

"""Monte Carlo validation of the averaged first-order medium response.

Draws hard-sphere configurations in a finite slab (a box of depth L and
lateral width W below the z = 0 plane), then checks the statistical
inputs of the effective-medium expansion against their closed forms:
the mean filling profile, the pair coverage correlation, the
h''-weighted constrained overlap, and the configuration-averaged
first-order scattering integral itself.

Sphere centers are produced by random sequential addition (RSA) with
overlap rejection, which reproduces uncorrelated center statistics to
the order kept by the analytic formulas. All estimators consume an
iterable of configurations and reduce in a fixed order, so a fixed
master seed gives bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_legendre

__all__ = [
    "SlabGeometry",
    "SphereConfiguration",
    "EstimateWithError",
    "spawn_seeds",
    "sample_configuration",
    "sample_configurations",
    "configuration_to_text",
    "configuration_from_text",
    "estimate_filling",
    "estimate_pair_overlap",
    "estimate_surface_moment_i2",
    "born_first_order_average",
    "analytic_first_order",
    "truncation_tail_scale",
]

_I3 = np.eye(3)


@dataclass(frozen=True)
class SlabGeometry:
    """Finite sampling box: z in [-L, 0], x and y in [-W/2, W/2]."""

    depth_L: float
    width_W: float
    radius_a: float
    periodic_lateral: bool = False

    def __post_init__(self):
        if self.radius_a <= 0:
            raise ValueError("radius_a must be > 0")
        if self.depth_L < 10 * self.radius_a or self.width_W < 10 * self.radius_a:
            raise ValueError("slab must be at least 10 sphere radii deep and wide")

    @property
    def volume(self) -> float:
        return self.depth_L * self.width_W**2

    @property
    def sphere_volume(self) -> float:
        return 4.0 / 3.0 * math.pi * self.radius_a**3


@dataclass(frozen=True)
class SphereConfiguration:
    """One set of non-overlapping sphere centers inside a slab."""

    centers: np.ndarray
    geometry: SlabGeometry
    seed: int

    def __post_init__(self):
        c = np.asarray(self.centers, dtype=float)
        if c.ndim != 2 or c.shape[1] != 3:
            raise ValueError("centers must have shape (N, 3)")
        object.__setattr__(self, "centers", c)
        g = self.geometry
        half = g.width_W / 2.0
        if (c[:, 2] > 0).any() or (c[:, 2] < -g.depth_L).any():
            raise ValueError("sphere center outside slab depth range")
        if (np.abs(c[:, :2]) > half).any():
            raise ValueError("sphere center outside lateral bounds")

    def validate(self) -> None:
        """Exhaustive pairwise hard-core check (O(N^2); call sparingly)."""
        c = self.centers
        d = c[:, None, :] - c[None, :, :]
        if self.geometry.periodic_lateral:
            w = self.geometry.width_W
            d[..., :2] -= w * np.round(d[..., :2] / w)
        dist2 = np.einsum("ijk,ijk->ij", d, d)
        np.fill_diagonal(dist2, np.inf)
        dmin2 = (2.0 * self.geometry.radius_a) ** 2
        worst = dist2.min() if dist2.size else np.inf
        if worst < dmin2 * (1.0 - 1e-12):
            raise ValueError(f"hard-core violation: min center distance {math.sqrt(worst)}")


@dataclass(frozen=True)
class EstimateWithError:
    """Monte Carlo mean with its standard error.

    For scalar estimators both fields are floats. For the dyadic
    first-order average mean is a complex (3, 3) array and std_error is
    a complex (3, 3) array packing the standard errors of the real and
    imaginary parts as std_error.real + 1j*std_error.imag.

    n_samples counts independent configurations (at least 2, so the
    error is always defined); lateral replicas within one configuration
    are averaged before the error estimate, so std_error stays valid
    even if replicas are correlated.
    """

    mean: object
    std_error: object
    n_samples: int


def spawn_seeds(master_seed: int, count: int) -> list:
    """Derive per-configuration integer seeds from one master seed."""
    children = np.random.SeedSequence(master_seed).spawn(count)
    return [int(c.generate_state(1, np.uint64)[0]) for c in children]


def _pair_dist2(a: np.ndarray, b: np.ndarray, width: float | None) -> np.ndarray:
    # squared distances (len(a), len(b)); minimum-image wrap in x, y when periodic
    d = a[:, None, :] - b[None, :, :]
    if width is not None:
        d[..., :2] -= width * np.round(d[..., :2] / width)
    return np.einsum("ijk,ijk->ij", d, d)


def sample_configuration(geometry: SlabGeometry, target_nv0: float, seed: int) -> SphereConfiguration:
    """Draw one RSA configuration at filling fraction target_nv0.

    The sphere count is round(n L W^2) with n = target_nv0/v0; zero
    filling yields an empty configuration. Deterministic for a fixed
    seed. Rejects filling fractions above 0.2, where plain sequential
    addition stalls.
    """
    if not 0.0 <= target_nv0 <= 0.2:
        raise ValueError("target_nv0 must lie in [0, 0.2] for RSA sampling")
    if target_nv0 == 0.0:
        return SphereConfiguration(np.empty((0, 3)), geometry, int(seed))
    a = geometry.radius_a
    count = int(round(target_nv0 / geometry.sphere_volume * geometry.volume))
    if count < 1:
        raise ValueError("geometry too small: zero spheres at this filling")

    rng = np.random.default_rng(seed)
    width = geometry.width_W if geometry.periodic_lateral else None
    half = geometry.width_W / 2.0
    dmin2 = (2.0 * a) ** 2
    scale = np.array([geometry.width_W, geometry.width_W, geometry.depth_L])
    shift = np.array([-half, -half, -geometry.depth_L])

    accepted = np.empty((count, 3))
    naccept = 0
    attempts = 0
    max_attempts = 200 * count + 10_000

    while naccept < count:
        if attempts >= max_attempts:
            raise RuntimeError(
                f"RSA failed to place {count} spheres within {max_attempts} attempts"
            )
        m = min(max(count - naccept, 32), 512)
        cand = rng.random((m, 3)) * scale + shift
        attempts += m

        ok_prev = np.ones(m, dtype=bool)
        if naccept:
            d2 = _pair_dist2(cand, accepted[:naccept], width)
            ok_prev = d2.min(axis=1) >= dmin2
        d2b = _pair_dist2(cand, cand, width)
        np.fill_diagonal(d2b, np.inf)
        conflicted = (d2b < dmin2).any(axis=1)

        # candidates clear of both the accepted set and all batch mates
        # commit in bulk; the few with intra-batch conflicts replay the
        # sequential rule (earlier accepted mates block later ones)
        status = ok_prev & ~conflicted
        for j in np.nonzero(ok_prev & conflicted)[0]:
            prior = np.nonzero(d2b[j, :j] < dmin2)[0]
            status[j] = not status[prior].any() if prior.size else True
        take = np.nonzero(status)[0][: count - naccept]
        k = take.size
        accepted[naccept : naccept + k] = cand[take]
        naccept += k

    return SphereConfiguration(accepted, geometry, int(seed))


def sample_configurations(geometry: SlabGeometry, target_nv0: float, master_seed: int, count: int):
    """Generate `count` configurations with seeds spawned from master_seed."""
    for s in spawn_seeds(master_seed, count):
        yield sample_configuration(geometry, target_nv0, s)


def configuration_to_text(config: SphereConfiguration) -> str:
    """Serialize centers as one 'x y z' record per line (round-trip exact)."""
    return "\n".join(" ".join(repr(float(v)) for v in row) for row in config.centers) + "\n"


def configuration_from_text(text: str, geometry: SlabGeometry, seed: int = -1) -> SphereConfiguration:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    centers = np.array([[float(v) for v in row] for row in rows], dtype=float)
    if centers.size and centers.shape[1] != 3:
        raise ValueError("each record must hold exactly three floats")
    return SphereConfiguration(centers.reshape(-1, 3), geometry, seed)


def _check_lateral_margin(points: np.ndarray, geometry: SlabGeometry) -> None:
    margin = geometry.width_W / 2.0 - 2.0 * geometry.radius_a
    if (np.abs(points[:, :2]) > margin).any():
        raise ValueError("probe point closer than 2a to a lateral boundary")


def _offsets_array(lateral_offsets) -> np.ndarray:
    off = np.atleast_2d(np.asarray(lateral_offsets, dtype=float))
    if off.shape[1] != 2:
        raise ValueError("lateral offsets must be (dx, dy) pairs")
    return off


def _reduce(samples: np.ndarray) -> EstimateWithError:
    m = samples.shape[0]
    if m < 2:
        raise ValueError("error estimation needs at least 2 configurations")
    mean = samples.mean(axis=0)
    se_re = samples.real.std(axis=0, ddof=1) / math.sqrt(m)
    se_im = samples.imag.std(axis=0, ddof=1) / math.sqrt(m)
    if np.iscomplexobj(samples):
        se = np.empty(np.shape(mean), dtype=complex)
        se.real = se_re
        se.imag = se_im
        return EstimateWithError(mean, se, m)
    if mean.ndim == 0:
        return EstimateWithError(float(mean), float(se_re), m)
    return EstimateWithError(mean, se_re, m)


def estimate_filling(configs, probe_heights, lateral_offsets=((0.0, 0.0),)) -> list:
    """Mean coverage at probe heights h (probes at lateral offsets from center).

    Estimates <f(0, 0, h)>, the mean of the coverage count at a point a
    signed height h above the surface; compare with the closed-form
    filling profile. Offsets should be spaced by at least 4a so replicas
    decorrelate; the error estimate is config-level regardless.
    """
    heights = np.atleast_1d(np.asarray(probe_heights, dtype=float))
    off = _offsets_array(lateral_offsets)
    probes = np.concatenate(
        [np.column_stack([np.broadcast_to(off, (len(off), 2)), np.full(len(off), h)]) for h in heights]
    )
    geometry = None
    values = []
    for config in configs:
        if geometry is None:
            geometry = config.geometry
            _check_lateral_margin(probes, geometry)
            a2 = geometry.radius_a**2
        d2 = _pair_dist2(probes, config.centers, None)
        counts = (d2 < a2).sum(axis=1).reshape(len(heights), len(off))
        values.append(counts.mean(axis=1))
    if not values:
        raise ValueError("no configurations supplied")
    samples = np.asarray(values, dtype=float)
    return [_reduce(samples[:, i]) for i in range(len(heights))]


def estimate_pair_overlap(configs, r1, r2, lateral_offsets=((0.0, 0.0),)) -> EstimateWithError:
    """Mean coverage product <f(r1) f(r2)> for two fixed bulk points.

    Both points must sit at least 2a inside every slab boundary; each
    lateral offset shifts the whole pair, preserving the separation.
    """
    p1 = np.asarray(r1, dtype=float)
    p2 = np.asarray(r2, dtype=float)
    off = _offsets_array(lateral_offsets)
    shifts = np.column_stack([off, np.zeros(len(off))])
    pts1 = p1[None, :] + shifts
    pts2 = p2[None, :] + shifts
    geometry = None
    values = []
    for config in configs:
        if geometry is None:
            geometry = config.geometry
            both = np.vstack([pts1, pts2])
            _check_lateral_margin(both, geometry)
            zlo, zhi = -geometry.depth_L + 2 * geometry.radius_a, -2 * geometry.radius_a
            if (both[:, 2] < zlo).any() or (both[:, 2] > zhi).any():
                raise ValueError("pair probe closer than 2a to a z boundary")
            a2 = geometry.radius_a**2
        c1 = (_pair_dist2(pts1, config.centers, None) < a2).sum(axis=1)
        c2 = (_pair_dist2(pts2, config.centers, None) < a2).sum(axis=1)
        values.append(float((c1 * c2).mean()))
    if not values:
        raise ValueError("no configurations supplied")
    return _reduce(np.asarray(values, dtype=float))


def estimate_surface_moment_i2(configs, r_s_pair, lateral_offsets=((0.0, 0.0),)) -> EstimateWithError:
    """Height-squared-weighted double coverage for a surface-straddling pair.

    For pair points placed symmetrically about z = 0 (midpoint on the
    surface), sums c_z^2 over centers covering both points and scales by
    2/n; the factor 2 uses the mirror symmetry of the constrained
    overlap, since physical centers sample only the lower half. The
    expectation is the closed-form second overlap moment I2.
    """
    p_plus = np.asarray(r_s_pair[0], dtype=float)
    p_minus = np.asarray(r_s_pair[1], dtype=float)
    if abs(p_plus[2] + p_minus[2]) > 1e-12:
        raise ValueError("pair midpoint must lie on the surface plane z = 0")
    off = _offsets_array(lateral_offsets)
    shifts = np.column_stack([off, np.zeros(len(off))])
    pts_plus = p_plus[None, :] + shifts
    pts_minus = p_minus[None, :] + shifts
    geometry = None
    values = []
    for config in configs:
        if geometry is None:
            geometry = config.geometry
            a = geometry.radius_a
            if abs(p_plus[2]) > a:
                raise ValueError("pair separation along z exceeds the straddling range |h| <= a")
            _check_lateral_margin(np.vstack([pts_plus, pts_minus]), geometry)
            a2 = a * a
        density = len(config.centers) / geometry.volume
        both = (_pair_dist2(config.centers, pts_plus, None) < a2) & (
            _pair_dist2(config.centers, pts_minus, None) < a2
        )
        zsq = config.centers[:, 2] ** 2
        per_offset = (zsq[:, None] * both).sum(axis=0)
        values.append(float(per_offset.mean()) * 2.0 / density)
    if not values:
        raise ValueError("no configurations supplied")
    return _reduce(np.asarray(values, dtype=float))


def _pair_product_tensors(r: np.ndarray, rp: np.ndarray, pts: np.ndarray):
    """Products G(r, x) . G(x, rp) for many x, plus the direction cosines.

    Returns (T, dots) with T of shape (M, 3, 3) and dots = shat1 . shat2
    where shat1 = unit(r - x), shat2 = unit(x - rp). The factor
    (1 + e.e') of the surface kernel, with e and e' the directions from
    the running point toward r and rp, equals 1 - dots.
    """
    d1 = r[None, :] - pts
    s1 = np.sqrt(np.einsum("mi,mi->m", d1, d1))
    d2 = pts - rp[None, :]
    s2 = np.sqrt(np.einsum("mi,mi->m", d2, d2))
    if s1.min() < 1e-6 or s2.min() < 1e-6:
        raise ValueError("field point coincides with an integration point")
    e1 = d1 / s1[:, None]
    e2 = d2 / s2[:, None]

    ph1 = np.exp(1j * s1) / (4.0 * np.pi * s1)
    b1 = -1j / s1 + 1.0 / s1**2
    alpha1 = ph1 * (b1 - 1.0)
    gamma1 = ph1 * (1.0 - 3.0 * b1)
    ph2 = np.exp(1j * s2) / (4.0 * np.pi * s2)
    b2 = -1j / s2 + 1.0 / s2**2
    alpha2 = ph2 * (b2 - 1.0)
    gamma2 = ph2 * (1.0 - 3.0 * b2)

    dots = np.einsum("mi,mi->m", e1, e2)
    o11 = np.einsum("mi,mj->mij", e1, e1)
    o22 = np.einsum("mi,mj->mij", e2, e2)
    o12 = np.einsum("mi,mj->mij", e1, e2)
    T = (
        (alpha1 * alpha2)[:, None, None] * _I3
        + (alpha1 * gamma2)[:, None, None] * o22
        + (gamma1 * alpha2)[:, None, None] * o11
        + (gamma1 * gamma2 * dots)[:, None, None] * o12
    )
    return T, dots


def _ball_rule(radial_order: int, polar_order: int, azimuthal_order: int):
    # product rule on the unit ball; weights sum to 4 pi / 3
    x, wx = roots_legendre(radial_order)
    x = 0.5 * (x + 1.0)
    wx = 0.5 * wx * x**2
    mu, wmu = roots_legendre(polar_order)
    phi = 2.0 * np.pi * np.arange(azimuthal_order) / azimuthal_order
    wphi = 2.0 * np.pi / azimuthal_order
    rr, mm, pp = np.meshgrid(x, mu, phi, indexing="ij")
    sin_t = np.sqrt(1.0 - mm**2)
    nodes = np.stack(
        [rr * sin_t * np.cos(pp), rr * sin_t * np.sin(pp), rr * mm], axis=-1
    ).reshape(-1, 3)
    weights = (wx[:, None, None] * wmu[None, :, None] * wphi * np.ones_like(pp)).reshape(-1)
    return nodes, weights


def born_first_order_average(
    configs, r, rp, chi, radial_order: int = 5, polar_order: int = 5, azimuthal_order: int = 5
) -> EstimateWithError:
    """Configuration average of the first-order scattering dyadic.

    Per configuration accumulates -chi * sum_i over spheres of the
    ball integral of G(r, x) . G(x, rp), each ball integrated with a
    fixed product quadrature (radial x polar x azimuthal Gauss rule).
    Both field points must lie outside the slab (z > 0).
    """
    r = np.asarray(r, dtype=float)
    rp = np.asarray(rp, dtype=float)
    if r[2] <= 0 or rp[2] <= 0:
        raise ValueError("field points must lie outside the medium (z > 0)")
    chi = complex(chi)
    nodes, weights = _ball_rule(radial_order, polar_order, azimuthal_order)
    geometry = None
    values = []
    for config in configs:
        if geometry is None:
            geometry = config.geometry
            a = geometry.radius_a
            ball = a * nodes
        pts = (config.centers[:, None, :] + ball[None, :, :]).reshape(-1, 3)
        T, _ = _pair_product_tensors(r, rp, pts)
        wt = np.tile(weights, len(config.centers))
        values.append(-chi * a**3 * np.einsum("m,mij->ij", wt, T))
    if not values:
        raise ValueError("no configurations supplied")
    return _reduce(np.asarray(values))


def _gl_panels(lo: float, hi: float, panel: float, order: int):
    nseg = max(1, int(math.ceil((hi - lo) / panel)))
    x, w = roots_legendre(order)
    edges = np.linspace(lo, hi, nseg + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _slab_first_order(r, rp, chi, geometry, nv0, q, include_surface, panel, order):
    xn, xw = _gl_panels(-geometry.width_W / 2.0, geometry.width_W / 2.0, panel, order)
    zn, zw = _gl_panels(-geometry.depth_L, 0.0, panel, order)
    xx, yy = np.meshgrid(xn, xn, indexing="ij")
    wxy = np.outer(xw, xw).ravel()
    xy = np.column_stack([xx.ravel(), yy.ravel()])

    j_bulk = np.zeros((3, 3), dtype=complex)
    j_surf = np.zeros((3, 3), dtype=complex)
    for zi, wzi in zip(zn, zw):
        pts = np.column_stack([xy, np.full(len(xy), zi)])
        T, dots = _pair_product_tensors(r, rp, pts)
        j_bulk += wzi * np.einsum("m,mij->ij", wxy, T)
        if include_surface:
            j_surf += wzi * np.einsum("m,m,mij->ij", wxy, 1.0 - dots, T)
    out = j_bulk
    if include_surface:
        out = j_bulk - q * q / 5.0 * j_surf
    return -nv0 * chi * out


def analytic_first_order(
    r,
    rp,
    chi,
    geometry: SlabGeometry,
    nv0: float,
    q: float,
    include_surface: bool = True,
    panel: float = 0.7,
    order: int = 6,
    rtol: float = 1e-6,
) -> np.ndarray:
    """Closed-form first-order average over the same finite slab.

    -nv0 chi integral over the box of [1 - (q^2/5)(1 + e.e')] G G,
    evaluated with panelized Gauss-Legendre quadrature and verified by
    re-evaluation at higher order (RuntimeError if the two disagree
    beyond rtol of the largest entry). include_surface=False drops the
    q^2 surface kernel, leaving the bulk-only prediction.
    """
    r = np.asarray(r, dtype=float)
    rp = np.asarray(rp, dtype=float)
    if r[2] <= 0 or rp[2] <= 0:
        raise ValueError("field points must lie outside the medium (z > 0)")
    chi = complex(chi)
    coarse = _slab_first_order(r, rp, chi, geometry, nv0, q, include_surface, panel, order)
    fine = _slab_first_order(r, rp, chi, geometry, nv0, q, include_surface, panel, order + 2)
    scale = np.abs(fine).max()
    if np.abs(fine - coarse).max() > rtol * scale:
        raise RuntimeError("slab quadrature did not converge; reduce panel size")
    return fine


def truncation_tail_scale(r, geometry: SlabGeometry) -> float:
    """Crude magnitude scale of the half-space tail cut off by the box.

    Envelope 1/(32 pi s_edge) of the oscillatory lateral integrand at
    the nearest truncation edge; a size estimate, not a bound.
    """
    r = np.asarray(r, dtype=float)
    s_lateral = math.hypot(r[2], geometry.width_W / 2.0)
    s_bottom = r[2] + geometry.depth_L
    return 1.0 / (32.0 * math.pi * min(s_lateral, s_bottom))

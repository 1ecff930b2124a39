"""The three-point propagation differential and the string time function.

The differential is w(z) dz with w = -(1/2) wp'(z) / (wp(z) - p) where
p = wp(1/2 + q).  It has residues +1 at 0 and -1/2 at 1/2 +- q, purely
imaginary periods, and its real integral t(z) = -(1/2) ln|wp(z) - p| + C
is the harmonic "time" of string propagation.  The additive constant is
fixed by t((1+tau)/4) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .config import TorusConfig
from .elliptic import (
    half_period_values,
    reduce_to_fundamental,
    wp,
    wp_pair,
    wp_second,
)
from .errors import (
    BadContourError,
    DegenerateModuliError,
    PoleOnPathError,
    PoleProximityError,
)
from .quadrature import contour_residue, segment_integral

# offset of the period-cycle representatives, chosen to keep both segments
# away from the punctures for every configuration used in the test matrix
CYCLE_OFFSET = 0.17


@dataclass(frozen=True)
class PunctureSet:
    """Marked points together with the pole parameter p = wp(1/2 + q)."""

    p_in: complex
    q_out_1: complex
    q_out_2: complex
    p_q: complex


@dataclass(frozen=True)
class LevelLineSample:
    """Grid crossings of the time function with the level t = u."""

    u: float
    points: tuple[complex, ...]


@dataclass(frozen=True)
class MuModulus:
    """Level-2 moduli parameter mu = (e2-e1)/(e3-e1) and derived quantities."""

    mu: complex
    abs_mu: float
    separation_time_two_point: float


@lru_cache(maxsize=None)
def puncture_set(cfg: TorusConfig) -> PunctureSet:
    hp = half_period_values(cfg)
    if cfg.two_point:
        p_q = hp.e1
    else:
        p_q = wp(0.5 + cfg.q, cfg)
    return PunctureSet(
        p_in=0j, q_out_1=0.5 + cfg.q, q_out_2=0.5 - cfg.q, p_q=p_q
    )


def _distance_to_punctures(z: complex, cfg: TorusConfig) -> float:
    return min(
        abs(reduce_to_fundamental(z - s, cfg)) for s in cfg.punctures()
    )


def _check_away_from_punctures(z: complex, cfg: TorusConfig) -> None:
    if _distance_to_punctures(z, cfg) <= cfg.exclusion_radius:
        raise PoleProximityError(f"z={z} is inside a puncture exclusion disk")


def omega_hat(z: complex, cfg: TorusConfig) -> complex:
    """Scalar part of the propagation differential."""
    _check_away_from_punctures(z, cfg)
    p, dp = wp_pair(z, cfg)
    return -0.5 * dp / (p - puncture_set(cfg).p_q)


def omega_hat_prime(z: complex, cfg: TorusConfig) -> complex:
    """d/dz of omega_hat, in closed form from wp, wp', wp''."""
    _check_away_from_punctures(z, cfg)
    p, dp = wp_pair(z, cfg)
    ddp = wp_second(z, cfg)
    denom = p - puncture_set(cfg).p_q
    return -0.5 * (ddp * denom - dp * dp) / (denom * denom)


def residue_at(
    center: complex, radius: float, cfg: TorusConfig, nodes: int = 256
) -> complex:
    """Residue of the propagation differential on |z - center| = radius.

    The circle must enclose exactly one of the three punctures and stay
    clear of the others; the geometry is checked before integrating.
    """
    if nodes < 64:
        raise ValueError("at least 64 quadrature nodes are required")
    enclosed = 0
    for s in cfg.punctures():
        d = abs(reduce_to_fundamental(s - center, cfg))
        if abs(d - radius) <= 4.0 * cfg.exclusion_radius:
            raise BadContourError(
                f"puncture {s} lies on the contour |z-{center}|={radius}"
            )
        if d < radius:
            enclosed += 1
    if enclosed != 1:
        raise BadContourError(
            f"contour around {center} (radius {radius}) encloses {enclosed} "
            "punctures; exactly one is required"
        )
    return contour_residue(lambda z: omega_hat(z, cfg), center, radius, nodes)


def _cycle_segments(cfg: TorusConfig) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
    """Pole-free representatives of the a- and b-cycle.

    a-cycle: [d*tau, 1 + d*tau]; b-cycle: [d, d + tau], d = CYCLE_OFFSET.
    """
    tau = cfg.tau
    d = CYCLE_OFFSET
    return ((d * tau, 1.0 + d * tau), (complex(d), d + tau))


def _min_distance_segment(z0: complex, z1: complex, cfg: TorusConfig, samples: int = 64) -> float:
    best = math.inf
    for k in range(samples + 1):
        z = z0 + (z1 - z0) * (k / samples)
        best = min(best, _distance_to_punctures(z, cfg))
    return best


def period_real_parts(
    cfg: TorusConfig,
    a_cycle: tuple[complex, complex] | None = None,
    b_cycle: tuple[complex, complex] | None = None,
) -> tuple[float, float]:
    """Re of the contour integrals of the differential over both cycles.

    Both vanish (to quadrature accuracy) because the propagation
    differential has purely imaginary periods.  Default representatives
    are the offset segments of _cycle_segments; callers may override with
    their own pole-free segments.
    """
    defaults = _cycle_segments(cfg)
    segments = (a_cycle or defaults[0], b_cycle or defaults[1])
    results = []
    for z0, z1 in segments:
        if _min_distance_segment(z0, z1, cfg) <= 10.0 * cfg.exclusion_radius:
            raise PoleOnPathError(
                f"cycle segment [{z0}, {z1}] passes too close to a puncture"
            )
        val = segment_integral(lambda z: omega_hat(z, cfg), z0, z1, tol=1e-13)
        results.append(val.real)
    return results[0], results[1]


def _reference_constant(cfg: TorusConfig) -> float:
    ref = 0.25 * (1.0 + cfg.tau)
    return 0.5 * math.log(abs(wp(ref, cfg) - puncture_set(cfg).p_q))


def time_coordinate(z: complex, cfg: TorusConfig) -> float:
    """Harmonic time t(z) = -(1/2) ln|wp(z) - p| + C with t((1+tau)/4) = 0.

    t -> -inf at the in-point 0 and +inf at the out-points 1/2 +- q,
    matching the residue signs (+1, -1/2, -1/2).
    """
    _check_away_from_punctures(z, cfg)
    return -0.5 * math.log(abs(wp(z, cfg) - puncture_set(cfg).p_q)) + _reference_constant(cfg)


def separation_time(cfg: TorusConfig) -> float:
    """Time between the two interaction points tau/2 and (1+tau)/2.

    Equals (1/2) ln|(e3 - p)/(e2 - p)| with p = wp(1/2 + q); at q = 0 this
    becomes (1/2) ln|(e3 - e1)/(e2 - e1)|.
    """
    hp = half_period_values(cfg)
    p_q = puncture_set(cfg).p_q
    denom = hp.e2 - p_q
    if abs(denom) < 1e-13 * max(1.0, abs(hp.e2)):
        raise DegenerateModuliError("e2 coincides with wp(1/2+q)")
    return 0.5 * math.log(abs((hp.e3 - p_q) / denom))


def mu_modulus(cfg: TorusConfig) -> MuModulus:
    """mu = (e2 - e1)/(e3 - e1); |mu| = 1 marks Re tau = +-1/2 lattices."""
    hp = half_period_values(cfg)
    mu = (hp.e2 - hp.e1) / (hp.e3 - hp.e1)
    return MuModulus(mu=mu, abs_mu=abs(mu), separation_time_two_point=-0.5 * math.log(abs(mu)))


def level_line_samples(cfg: TorusConfig, u: float, resolution: int = 64) -> LevelLineSample:
    """Points where the time function crosses the level u.

    A (resolution x resolution) grid of the fundamental cell is scanned in
    row-major order; each sign change of t - u along a grid edge is refined
    by bisection until |t - u| <= cfg.tol.  Nodes inside puncture exclusion
    disks are skipped.
    """
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    tau = cfg.tau
    n = resolution
    coords = [-0.5 + k / n for k in range(n + 1)]
    safe_radius = 4.0 * cfg.exclusion_radius

    def node(ai: int, bi: int) -> complex:
        return complex(coords[ai] + coords[bi] * tau.real, coords[bi] * tau.imag)

    tvals: dict[tuple[int, int], float | None] = {}
    for bi in range(n + 1):
        for ai in range(n + 1):
            z = node(ai, bi)
            if _distance_to_punctures(z, cfg) <= safe_radius:
                tvals[(ai, bi)] = None
            else:
                tvals[(ai, bi)] = time_coordinate(z, cfg)

    def bisect(z0: complex, t0: float, z1: complex, t1: float) -> complex | None:
        for _ in range(80):
            zm = 0.5 * (z0 + z1)
            if _distance_to_punctures(zm, cfg) <= cfg.exclusion_radius:
                return None
            tm = time_coordinate(zm, cfg) - u
            if abs(tm) <= cfg.tol:
                return zm
            if (t0 - u) * tm <= 0:
                z1, t1 = zm, tm + u
            else:
                z0, t0 = zm, tm + u
        return zm

    points: list[complex] = []
    for bi in range(n + 1):
        for ai in range(n + 1):
            t0 = tvals[(ai, bi)]
            if t0 is None:
                continue
            for (aj, bj) in ((ai + 1, bi), (ai, bi + 1)):
                if aj > n or bj > n:
                    continue
                t1 = tvals[(aj, bj)]
                if t1 is None:
                    continue
                if (t0 - u) * (t1 - u) < 0:
                    pt = bisect(node(ai, bi), t0, node(aj, bj), t1)
                    if pt is not None:
                        points.append(pt)
    return LevelLineSample(u=u, points=tuple(points))

"""Weierstrass elliptic functions on the torus C/(Z + tau*Z).

Evaluation uses the Fourier (nome) expansion in u = exp(2*pi*i*z) and
q = exp(2*pi*i*tau).  After reducing z to the fundamental cell the series
terms decay at least like |q|**(n - 1/2), so a few dozen terms reach full
double precision for every Im(tau) >= 0.3 used here.  The second derivative
comes from the algebraic identity wp'' = 6*wp**2 - g2/2 rather than a
separate series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .config import TorusConfig
from .errors import PoleProximityError

_TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class HalfPeriodValues:
    """Values of wp at the half periods plus the cubic invariants."""

    e1: complex
    e2: complex
    e3: complex
    g2: complex
    g3: complex


def reduce_to_fundamental(z: complex, cfg: TorusConfig) -> complex:
    """Reduce z mod the lattice to a + b*tau with a, b in [-1/2, 1/2)."""
    tau = cfg.tau
    b = z.imag / tau.imag
    a = z.real - b * tau.real
    a -= math.floor(a + 0.5)
    b -= math.floor(b + 0.5)
    return complex(a + b * tau.real, b * tau.imag)


def _f_wp(x: complex) -> complex:
    # x/(1-x)^2, the Fourier kernel of wp
    d = 1.0 - x
    return x / (d * d)


def _g_wp(x: complex) -> complex:
    # x(1+x)/(1-x)^3, the Fourier kernel of wp'
    d = 1.0 - x
    return x * (1.0 + x) / (d * d * d)


def wp_pair(z: complex, cfg: TorusConfig) -> tuple[complex, complex]:
    """Return (wp(z), wp'(z)).

    Raises PoleProximityError inside the exclusion disk of a lattice point.
    The absolute error is far below cfg.tol away from the poles; accuracy
    degrades like the function itself (|wp| ~ |z|**-2) as z approaches one.
    """
    zr = reduce_to_fundamental(z, cfg)
    if abs(zr) <= cfg.exclusion_radius:
        raise PoleProximityError(f"z={z} is within {cfg.exclusion_radius} of a lattice point")
    q = cmath.exp(_TWO_PI_I * cfg.tau)
    u = cmath.exp(_TWO_PI_I * zr)

    wp = 1.0 / 12.0 + _f_wp(u)
    wpp = _g_wp(u)
    qn = 1.0 + 0j
    for n in range(1, cfg.series_cutoff + 1):
        qn *= q
        a = qn * u
        b = qn / u
        t_wp = _f_wp(a) + _f_wp(b) - 2.0 * _f_wp(qn)
        t_wpp = _g_wp(a) - _g_wp(b)
        wp += t_wp
        wpp += t_wpp
        if n >= 3 and abs(t_wp) + abs(t_wpp) < 1e-18 * (1.0 + abs(wp) + abs(wpp)):
            break
    four_pi2 = _TWO_PI_I * _TWO_PI_I
    return four_pi2 * wp, four_pi2 * _TWO_PI_I * wpp


def wp(z: complex, cfg: TorusConfig) -> complex:
    return wp_pair(z, cfg)[0]


def wp_prime(z: complex, cfg: TorusConfig) -> complex:
    return wp_pair(z, cfg)[1]


@lru_cache(maxsize=None)
def half_period_values(cfg: TorusConfig) -> HalfPeriodValues:
    """e1, e2, e3 at the half periods 1/2, (1+tau)/2, tau/2 and g2, g3.

    The cubic 4x^3 - g2*x - g3 = 4(x-e1)(x-e2)(x-e3) has no quadratic term,
    so e1+e2+e3 vanishes; this is checked against cfg.tol.
    """
    tau = cfg.tau
    e1 = wp(0.5 + 0j, cfg)
    e2 = wp(0.5 + 0.5 * tau, cfg)
    e3 = wp(0.5 * tau, cfg)
    s = e1 + e2 + e3
    scale = max(1.0, abs(e1), abs(e2), abs(e3))
    if abs(s) > 100.0 * cfg.tol * scale:
        raise ArithmeticError(
            f"half-period values violate e1+e2+e3=0 by {abs(s)} at tau={tau}"
        )
    g2 = -4.0 * (e1 * e2 + e1 * e3 + e2 * e3)
    g3 = 4.0 * e1 * e2 * e3
    return HalfPeriodValues(e1=e1, e2=e2, e3=e3, g2=g2, g3=g3)


def wp_second(z: complex, cfg: TorusConfig) -> complex:
    """wp''(z) via the differentiated Weierstrass equation."""
    hp = half_period_values(cfg)
    p = wp(z, cfg)
    return 6.0 * p * p - 0.5 * hp.g2

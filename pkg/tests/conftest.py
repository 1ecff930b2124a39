"""Shared fixtures and the high-precision reference oracle.

The oracle builds the Weierstrass function from Jacobi theta constants and
the sn function at 30 digits (mpmath), a fully independent evaluation
route from the production nome series.  Its own internal identities
(quartic theta relation, Laurent behaviour) are asserted on first use.
"""

from __future__ import annotations

import math
import random

import mpmath as mp
import pytest

from kntorus.config import TorusConfig
from kntorus.elliptic import reduce_to_fundamental

mp.mp.dps = 30

_ORACLE_VALIDATED: set[complex] = set()


def theta_half_period_values(tau: complex) -> tuple[complex, complex, complex]:
    """(e1, e2, e3) from theta constants; independent of the nome series."""
    nome = mp.exp(1j * mp.pi * mp.mpc(tau))
    t2 = mp.jtheta(2, 0, nome)
    t3 = mp.jtheta(3, 0, nome)
    t4 = mp.jtheta(4, 0, nome)
    assert abs(t2**4 + t4**4 - t3**4) < mp.mpf(10) ** -25
    pi2_3 = mp.pi**2 / 3
    e1 = pi2_3 * (t3**4 + t4**4)
    e2 = pi2_3 * (t2**4 - t4**4)
    e3 = -pi2_3 * (t2**4 + t3**4)
    return complex(e1), complex(e2), complex(e3)


def wp_oracle(z: complex, tau: complex) -> complex:
    """Reference wp(z) via e3 + (e1-e3)/sn(z*sqrt(e1-e3))**2."""
    e1, e2, e3 = theta_half_period_values(tau)
    m = (mp.mpc(e2) - e3) / (mp.mpc(e1) - e3)
    w = mp.sqrt(mp.mpc(e1) - e3) * mp.mpc(z)
    sn = mp.ellipfun("sn", w, m)
    value = mp.mpc(e3) + (mp.mpc(e1) - e3) / sn**2
    if tau not in _ORACLE_VALIDATED:
        # Laurent anchor: wp(h) ~ h**-2 for small h
        probe = mp.mpc(e3) + (mp.mpc(e1) - e3) / mp.ellipfun(
            "sn", mp.sqrt(mp.mpc(e1) - e3) * mp.mpf("1e-6"), m
        ) ** 2
        assert abs(probe * mp.mpf("1e-12") - 1) < 1e-9
        _ORACLE_VALIDATED.add(tau)
    return complex(value)


@pytest.fixture(scope="session")
def cfg_square() -> TorusConfig:
    return TorusConfig(tau=1j, q=0.2)


@pytest.fixture(scope="session")
def cfg_generic() -> TorusConfig:
    return TorusConfig(tau=0.3 + 1.1j, q=0.17 + 0.05j)


@pytest.fixture(scope="session")
def cfg_two_point() -> TorusConfig:
    return TorusConfig(tau=1j, two_point=True)


@pytest.fixture(scope="session")
def all_acceptance_configs() -> list[TorusConfig]:
    return [
        TorusConfig(tau=tau, q=q)
        for tau in (1j, 0.3 + 1.1j)
        for q in (0.2, 0.17 + 0.05j)
    ]


def sample_points(cfg: TorusConfig, count: int, seed: int, margin: float = 0.08) -> list[complex]:
    """Deterministic cell points away from punctures, half periods, lattice."""
    rng = random.Random(seed)
    tau = cfg.tau
    special = (*cfg.punctures(), 0.5 * tau, 0.5 + 0.5 * tau, 0.5 + 0j)
    points: list[complex] = []
    while len(points) < count:
        a = rng.uniform(-0.5, 0.5)
        b = rng.uniform(-0.5, 0.5)
        z = complex(a + b * tau.real, b * tau.imag)
        if min(abs(reduce_to_fundamental(z - s, cfg)) for s in special) > margin:
            points.append(z)
    return points


def assert_close(actual, expected, tol, label=""):
    err = abs(actual - expected)
    assert err <= tol, f"{label}: |{actual} - {expected}| = {err} > {tol}"


LN2_OVER_2 = math.log(2.0) / 2.0

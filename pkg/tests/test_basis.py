import random

import pytest

from conftest import assert_close, sample_points
from kntorus.basis import (
    WITT_PARAMS,
    basis_derivative,
    basis_value,
    formal_params,
    lambda_coefficients,
    order_triple,
    winding_order,
)
from kntorus.elliptic import half_period_values, wp_prime
from kntorus.errors import NonIntegerWindingError
from kntorus.propagation import omega_hat, omega_hat_prime, puncture_set


def test_unit_and_omega(cfg_square):
    for z in sample_points(cfg_square, 5, seed=31):
        assert basis_value(0, z, cfg_square) == 1.0
        assert_close(basis_value(-1, z, cfg_square), omega_hat(z, cfg_square), 1e-13)


def test_even_product_law(cfg_square):
    rng = random.Random(32)
    pts = sample_points(cfg_square, 20, seed=33)
    for _ in range(100):
        z = rng.choice(pts)
        i = 2 * rng.randint(-4, 4)
        j = rng.randint(-8, 8)
        lhs = basis_value(i, z, cfg_square) * basis_value(j, z, cfg_square)
        rhs = basis_value(i + j, z, cfg_square)
        assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))


def test_odd_product_law(cfg_generic):
    rng = random.Random(34)
    pts = sample_points(cfg_generic, 20, seed=35)
    lam = lambda_coefficients(cfg_generic)
    for _ in range(100):
        z = rng.choice(pts)
        i = 2 * rng.randint(-4, 3) + 1
        j = 2 * rng.randint(-4, 3) + 1
        lhs = basis_value(i, z, cfg_generic) * basis_value(j, z, cfg_generic)
        rhs = sum(
            c * basis_value(i + j + 2 * t, z, cfg_generic)
            for t, c in enumerate(lam.as_tuple())
        )
        assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))


def test_parity(cfg_square):
    for z in sample_points(cfg_square, 10, seed=36):
        for k in range(-6, 7):
            sign = 1.0 if k % 2 == 0 else -1.0
            lhs = basis_value(k, -z, cfg_square)
            rhs = sign * basis_value(k, z, cfg_square)
            assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))


def test_derivative_constant_is_zero(cfg_square):
    z = sample_points(cfg_square, 1, seed=37)[0]
    assert basis_derivative(0, z, cfg_square) == 0.0


@pytest.mark.parametrize("k", range(-6, 7))
def test_derivative_vs_finite_difference(k, cfg_square):
    h = 1e-5
    for z in sample_points(cfg_square, 5, seed=38):
        fd = (basis_value(k, z + h, cfg_square) - basis_value(k, z - h, cfg_square)) / (2 * h)
        an = basis_derivative(k, z, cfg_square)
        assert abs(fd - an) <= 1e-6 * max(1.0, abs(an))


def test_order_triples():
    assert order_triple(2) == (2, -1, -1)
    assert order_triple(-1) == (-1, -1, -1)
    assert order_triple(0) == (0, 0, 0)
    assert order_triple(4) == (4, -2, -2)
    assert order_triple(3) == (3, -3, -3)


def test_winding_orders_match_triples(cfg_square):
    ps = puncture_set(cfg_square)
    for k in range(-6, 7):
        triple = order_triple(k)
        assert winding_order(k, 0j, 0.12, cfg_square) == triple[0]
        assert winding_order(k, ps.q_out_1, 0.1, cfg_square) == triple[1]
        assert winding_order(k, ps.q_out_2, 0.1, cfg_square) == triple[2]


def test_winding_order_k4_and_k3(cfg_square):
    assert winding_order(4, 0j, 0.12, cfg_square) == 4
    assert winding_order(3, 0.7 + 0j, 0.1, cfg_square) == -3
    assert winding_order(0, 0j, 0.12, cfg_square) == 0


def test_winding_orders_two_point(cfg_two_point):
    # merged out-puncture carries order -k (even) or -k-2 (odd)
    for k in range(-5, 6):
        assert winding_order(k, 0j, 0.12, cfg_two_point) == k
        merged = -k if k % 2 == 0 else -k - 2
        assert winding_order(k, 0.5 + 0j, 0.15, cfg_two_point) == merged


def test_winding_rejects_bad_contour(cfg_square):
    # radius 0.5 around the origin passes through zeros of the odd basis
    # functions at the half periods, leaving a half-integer winding
    with pytest.raises(NonIntegerWindingError):
        winding_order(3, 0j, 0.5, cfg_square)


def test_lambda_derived_values(cfg_square):
    lam = lambda_coefficients(cfg_square)
    ps = puncture_set(cfg_square)
    hp = half_period_values(cfg_square)
    assert lam.lam4 == 1.0
    assert_close(lam.lam5, 3 * ps.p_q, 1e-12 * abs(ps.p_q))
    assert_close(
        lam.lam6,
        3 * ps.p_q**2 - (hp.e2**2 + hp.e2 * hp.e3 + hp.e3**2),
        1e-10 * max(1.0, abs(lam.lam6)),
    )
    quarter_sq = 0.25 * wp_prime(0.5 + cfg_square.q, cfg_square) ** 2
    assert abs(lam.lam7 - quarter_sq) <= 1e-10 * abs(lam.lam7)


def test_lambda_two_point_values(cfg_two_point):
    lam = lambda_coefficients(cfg_two_point)
    hp = half_period_values(cfg_two_point)
    assert_close(lam.lam5, 3 * hp.e1, 1e-10 * abs(hp.e1))
    assert_close(lam.lam6, (hp.e1 - hp.e2) * (hp.e1 - hp.e3), 1e-9 * abs(lam.lam6))
    assert lam.lam7 == 0j


def test_lambda_formal():
    assert WITT_PARAMS.as_tuple() == (1.0, 0j, 0j, 0j)
    p = formal_params(2j, -1.0, 0.5 + 0.5j)
    assert p.lam4 == 1.0 and p.provenance == "formal"


def test_omega_squared_expansion(cfg_square, cfg_generic):
    for cfg in (cfg_square, cfg_generic):
        lam = lambda_coefficients(cfg)
        for z in sample_points(cfg, 50, seed=39):
            w2 = omega_hat(z, cfg) ** 2
            rhs = sum(c * basis_value(-2 + 2 * t, z, cfg) for t, c in enumerate(lam.as_tuple()))
            assert abs(w2 - rhs) <= 1e-8


def test_omega_prime_expansion(cfg_square):
    # w' = -lam4*A_-2 + lam6*A_2 + 2*lam7*A_4 (factor-2 consistent with (w^2)' = 2ww')
    lam = lambda_coefficients(cfg_square)
    for z in sample_points(cfg_square, 20, seed=40):
        lhs = omega_hat_prime(z, cfg_square)
        rhs = (
            -lam.lam4 * basis_value(-2, z, cfg_square)
            + lam.lam6 * basis_value(2, z, cfg_square)
            + 2 * lam.lam7 * basis_value(4, z, cfg_square)
        )
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))

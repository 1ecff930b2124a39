import random

import pytest

from conftest import sample_points
from kntorus.algebra import (
    bracket,
    bracket_eval,
    bracket_numeric,
    build_structure_table,
    degeneration_table,
    jacobi_residual,
    table_gap,
)
from kntorus.basis import WITT_PARAMS, basis_value, formal_params, lambda_coefficients
from kntorus.config import TorusConfig


def _random_formal(seed):
    rng = random.Random(seed)

    def c():
        return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))

    return formal_params(c(), c(), c())


def test_bracket_even_even(cfg_square):
    lam = lambda_coefficients(cfg_square)
    assert bracket(2, 4, lam) == {5: 2 + 0j}
    assert bracket(4, 2, lam) == {5: -2 + 0j}
    assert bracket(2, 2, lam) == {}


def test_bracket_equal_odd(cfg_square):
    lam = lambda_coefficients(cfg_square)
    assert bracket(1, 1, lam) == {}


def test_bracket_odd_even_pattern(cfg_square):
    # [l_1, l_2]: the lam5 slot carries factor (n - a - 1) = 0 and drops out
    lam = lambda_coefficients(cfg_square)
    terms = bracket(1, 2, lam)
    assert set(terms) == {2, 6, 8}
    assert terms[2] == lam.lam4
    assert terms[6] == -lam.lam6
    assert terms[8] == -2 * lam.lam7


def test_bracket_antisymmetry_full(cfg_generic):
    lam = lambda_coefficients(cfg_generic)
    for i in range(-5, 6):
        for j in range(-5, 6):
            forward = bracket(i, j, lam)
            backward = bracket(j, i, lam)
            assert set(forward) == set(backward)
            for k, c in forward.items():
                assert c == -backward[k]


def test_support_window_and_parity(cfg_generic):
    lam = lambda_coefficients(cfg_generic)
    for i in range(-8, 9):
        for j in range(-8, 9):
            for k in bracket(i, j, lam):
                assert i + j - 1 <= k <= i + j + 5
                assert (k - (i + j - 1)) % 2 == 0


def test_bracket_numeric_vanishes_on_diagonal(cfg_square):
    z = sample_points(cfg_square, 1, seed=41)[0]
    assert bracket_numeric(3, 3, z, cfg_square) == 0j


def test_bracket_numeric_even_pair(cfg_square):
    for z in sample_points(cfg_square, 5, seed=42):
        lhs = bracket_numeric(2, 4, z, cfg_square)
        rhs = 2 * basis_value(5, z, cfg_square)
        assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))


def test_bracket_numeric_mixed_pair(cfg_square):
    lam = lambda_coefficients(cfg_square)
    for z in sample_points(cfg_square, 5, seed=43):
        lhs = bracket_numeric(1, -1, z, cfg_square)
        rhs = bracket_eval(1, -1, z, cfg_square, lam)
        assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs))


@pytest.mark.parametrize("window", [8])
def test_oracle_equivalence_sweep(window, cfg_square):
    lam = lambda_coefficients(cfg_square)
    rng = random.Random(44)
    pts = sample_points(cfg_square, 25, seed=45)
    for i in range(-window, window + 1):
        for j in range(-window, window + 1):
            for _ in range(5):
                z = rng.choice(pts)
                num = bracket_numeric(i, j, z, cfg_square)
                cf = bracket_eval(i, j, z, cfg_square, lam)
                assert abs(num - cf) <= 1e-7 * max(1.0, abs(num))


def test_jacobi_examples(cfg_square):
    lam = lambda_coefficients(cfg_square)
    # even triple: the intermediate odd index still drags lambda terms in,
    # so cancellation is exact only up to round-off
    assert jacobi_residual(2, 4, 6, lam) <= 1e-12
    assert jacobi_residual(2, 4, 6, WITT_PARAMS) == 0.0
    for seed in range(5):
        assert jacobi_residual(1, 3, 2, _random_formal(seed)) <= 1e-9
    assert jacobi_residual(1, -1, 3, lam) <= 1e-9


def test_jacobi_sweep(cfg_square, cfg_generic):
    param_sets = [
        lambda_coefficients(cfg_square),
        lambda_coefficients(cfg_generic),
        _random_formal(1),
        _random_formal(2),
        _random_formal(3),
    ]
    for params in param_sets:
        worst = max(
            jacobi_residual(i, j, k, params)
            for i in range(-5, 6)
            for j in range(-5, 6)
            for k in range(-5, 6)
        )
        assert worst <= 1e-9


def test_structure_table_round_trip(cfg_square):
    lam = lambda_coefficients(cfg_square)
    table = build_structure_table(lam, 4)
    assert table.entries[(2, 4)] == {5: 2 + 0j}
    assert (1, 1) not in table.entries
    rows = table.to_csv_rows()
    assert rows[0] == "i,j,k,re,im"
    assert rows == sorted(rows[:1]) + sorted(rows[1:], key=lambda r: [int(x) for x in r.split(",")[:3]])
    payload = table.to_json_dict()
    assert payload["window"] == 4
    assert payload["indexing"] == "original"


def test_shifted_table_indexing(cfg_square):
    lam = lambda_coefficients(cfg_square)
    shifted = build_structure_table(lam, 3, indexing="shifted")
    # [e_1, e_3] = [l_2, l_4] = 2 l_5 = 2 e_4
    assert shifted.entries[(1, 3)] == {4: 2 + 0j}


def test_degeneration_two_point_values(cfg_two_point):
    from kntorus.elliptic import half_period_values

    hp = half_period_values(cfg_two_point)
    table = degeneration_table("two_point", 4, cfg=cfg_two_point)
    terms = table.entries[(1, 3)]
    assert abs(terms[3] - 2.0) < 1e-12
    assert abs(terms[5] - 2 * 3 * hp.e1) < 1e-9
    assert abs(terms[7] - 2 * (hp.e1 - hp.e2) * (hp.e1 - hp.e3)) < 1e-8
    assert 9 not in terms  # lam7 = 0 shrinks the support to three slots


def test_degeneration_witt():
    table = degeneration_table("witt", 3)
    assert table.entries[(1, 2)] == {2: 1 + 0j}
    for (i, j), terms in table.entries.items():
        assert set(terms) == {i + j - 1}
        assert terms[i + j - 1] == complex(j - i)


def test_degeneration_continuity():
    tau = 0.8j
    two_point = degeneration_table("two_point", 6, cfg=TorusConfig(tau=tau, two_point=True))
    gaps = [
        table_gap(
            degeneration_table("three_point", 6, cfg=TorusConfig(tau=tau, q=q)), two_point
        )
        for q in (1e-1, 1e-2, 1e-3)
    ]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] <= 1e-4


def test_degeneration_requires_config():
    with pytest.raises(ValueError):
        degeneration_table("three_point", 4)
    with pytest.raises(ValueError):
        degeneration_table("unknown", 4, params=WITT_PARAMS)

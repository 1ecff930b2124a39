"""Deterministic invariant batteries for every module.

Each suite returns a list of CheckResult records; the CLI serializes them
and pytest reuses them.  All randomness is seeded, so repeated runs with
identical inputs produce identical reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import algebra, basis, cocycle, elliptic, fock, propagation
from .basis import WITT_PARAMS, formal_params, lambda_coefficients
from .config import TorusConfig

SUITES = ("elliptic", "differential", "basis", "algebra", "cocycle", "fock")


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _check(name: str, residual: float, tol: float) -> CheckResult:
    return CheckResult(
        name=name,
        status="pass" if residual <= tol else "fail",
        max_residual=residual,
        tolerance=tol,
    )


def random_points(cfg: TorusConfig, count: int, seed: int, margin: float = 0.08) -> list[complex]:
    """Deterministic sample of cell points away from punctures and lattice."""
    rng = random.Random(seed)
    tau = cfg.tau
    points = []
    while len(points) < count:
        a = rng.uniform(-0.5, 0.5)
        b = rng.uniform(-0.5, 0.5)
        z = complex(a + b * tau.real, b * tau.imag)
        dist = min(
            abs(elliptic.reduce_to_fundamental(z - s, cfg))
            for s in (*cfg.punctures(), 0.5 * tau, 0.5 + 0.5 * tau)
        )
        if dist > margin:
            points.append(z)
    return points


def _random_formal_sets(count: int, seed: int) -> list[basis.AlgebraParams]:
    rng = random.Random(seed)

    def c() -> complex:
        return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))

    return [formal_params(c(), c(), c()) for _ in range(count)]


# ---------------------------------------------------------------------------


def verify_elliptic(cfg: TorusConfig) -> list[CheckResult]:
    checks = []
    pts = random_points(cfg, 30, seed=101)
    rng = random.Random(102)

    worst = 0.0
    for z in pts[:10]:
        ref = elliptic.wp(z, cfg)
        for _ in range(3):
            m, n = rng.randint(-3, 3), rng.randint(-3, 3)
            worst = max(worst, abs(elliptic.wp(z + m + n * cfg.tau, cfg) - ref) / max(1.0, abs(ref)))
    checks.append(_check("wp_periodicity", worst, 10 * cfg.tol))

    worst = 0.0
    for z in pts[:15]:
        p1, d1 = elliptic.wp_pair(z, cfg)
        p2, d2 = elliptic.wp_pair(-z, cfg)
        worst = max(worst, abs(p1 - p2) / max(1.0, abs(p1)), abs(d1 + d2) / max(1.0, abs(d1)))
    checks.append(_check("wp_parity", worst, cfg.tol))

    hp = elliptic.half_period_values(cfg)
    worst = 0.0
    for z in pts:
        p, dp = elliptic.wp_pair(z, cfg)
        res = dp * dp - 4.0 * (p - hp.e1) * (p - hp.e2) * (p - hp.e3)
        worst = max(worst, abs(res) / (1.0 + abs(p) ** 3))
    checks.append(_check("wp_differential_equation", worst, cfg.tol))

    worst = 0.0
    for z in pts[:10]:
        direct = elliptic.wp(z + 2 + cfg.tau, cfg)
        reduced = elliptic.wp(elliptic.reduce_to_fundamental(z + 2 + cfg.tau, cfg), cfg)
        worst = max(worst, abs(direct - reduced) / max(1.0, abs(direct)))
    checks.append(_check("wp_reduction_consistency", worst, cfg.tol))

    scale = max(1.0, abs(hp.e1), abs(hp.e2), abs(hp.e3))
    checks.append(_check("half_period_sum", abs(hp.e1 + hp.e2 + hp.e3) / scale, cfg.tol))
    return checks


def verify_differential(cfg: TorusConfig) -> list[CheckResult]:
    checks = []
    rng = random.Random(201)
    pts = random_points(cfg, 50, seed=202)

    worst = 0.0
    for w in pts:
        lhs = propagation.omega_hat(0.5 + w, cfg)
        rhs = propagation.omega_hat(0.5 - w, cfg)
        worst = max(worst, abs(lhs + rhs) / max(1.0, abs(lhs)))
        lhs2 = propagation.omega_hat(-w, cfg)
        rhs2 = propagation.omega_hat(w, cfg)
        worst = max(worst, abs(lhs2 + rhs2) / max(1.0, abs(lhs2)))
    checks.append(_check("omega_antisymmetry", worst, cfg.tol))

    radius = 0.05
    res_in = propagation.residue_at(0j, radius, cfg)
    if cfg.two_point:
        res_out = propagation.residue_at(0.5 + 0j, radius, cfg)
        worst = max(abs(res_in - 1.0), abs(res_out + 1.0))
        total = abs(res_in + res_out)
    else:
        r1 = propagation.residue_at(0.5 + cfg.q, radius, cfg)
        r2 = propagation.residue_at(0.5 - cfg.q, radius, cfg)
        worst = max(abs(res_in - 1.0), abs(r1 + 0.5), abs(r2 + 0.5))
        total = abs(res_in + r1 + r2)
    checks.append(_check("residue_triple", worst, 1e-8))
    checks.append(_check("residue_sum", total, 1e-8))

    pa, pb = propagation.period_real_parts(cfg)
    checks.append(_check("period_real_parts", max(abs(pa), abs(pb)), 1e-8))

    from .quadrature import segment_integral

    worst = 0.0
    for _ in range(20):
        z0, z1 = rng.choice(pts), rng.choice(pts)
        if z0 == z1:
            continue
        mid = 0.5 * (z0 + z1)
        if min(abs(elliptic.reduce_to_fundamental(mid - s, cfg)) for s in cfg.punctures()) < 0.05:
            continue
        lhs = propagation.time_coordinate(z1, cfg) - propagation.time_coordinate(z0, cfg)
        rhs = segment_integral(lambda z: propagation.omega_hat(z, cfg), z0, z1).real
        worst = max(worst, abs(lhs - rhs))
    checks.append(_check("time_vs_line_integral", worst, 1e-7))

    mu = propagation.mu_modulus(cfg)
    cfg0 = cfg if cfg.two_point else TorusConfig(
        tau=cfg.tau, two_point=True, tol=cfg.tol, series_cutoff=cfg.series_cutoff
    )
    sep0 = propagation.separation_time(cfg0)
    checks.append(_check("mu_vs_separation_time", abs(mu.separation_time_two_point - sep0), 1e-10))
    return checks


def verify_basis(cfg: TorusConfig) -> list[CheckResult]:
    checks = []
    rng = random.Random(301)
    pts = random_points(cfg, 40, seed=302)
    params = lambda_coefficients(cfg)

    worst = 0.0
    for _ in range(100):
        z = rng.choice(pts)
        i = 2 * rng.randint(-4, 4)
        j = rng.randint(-8, 8)
        lhs = basis.basis_value(i, z, cfg) * basis.basis_value(j, z, cfg)
        rhs = basis.basis_value(i + j, z, cfg)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    checks.append(_check("even_product_law", worst, 1e-8))

    worst = 0.0
    for _ in range(60):
        z = rng.choice(pts)
        i = 2 * rng.randint(-4, 3) + 1
        j = 2 * rng.randint(-4, 3) + 1
        lhs = basis.basis_value(i, z, cfg) * basis.basis_value(j, z, cfg)
        rhs = sum(
            lam * basis.basis_value(i + j + 2 * t, z, cfg)
            for t, lam in enumerate(params.as_tuple())
        )
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    checks.append(_check("odd_product_law", worst, 1e-8))

    worst = 0.0
    for k in range(-5, 6):
        z = rng.choice(pts)
        even_sign = 1.0 if k % 2 == 0 else -1.0
        lhs = basis.basis_value(k, -z, cfg)
        rhs = even_sign * basis.basis_value(k, z, cfg)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    checks.append(_check("basis_parity", worst, 1e-8))

    h = 1e-5
    worst = 0.0
    for k in range(-6, 7):
        for _ in range(3):
            z = rng.choice(pts)
            fd = (basis.basis_value(k, z + h, cfg) - basis.basis_value(k, z - h, cfg)) / (2 * h)
            an = basis.basis_derivative(k, z, cfg)
            worst = max(worst, abs(fd - an) / max(1.0, abs(an)))
    checks.append(_check("derivative_vs_finite_difference", worst, 1e-6))

    mismatches = 0.0
    ps = propagation.puncture_set(cfg)
    for k in range(-6, 7):
        triple = basis.order_triple(k)
        if cfg.two_point:
            # merged out-puncture: double zero of the pole factor, simple
            # differential pole; orders become -k (even) / -k-2 (odd)
            merged = -k if k % 2 == 0 else -k - 2
            got = (
                basis.winding_order(k, 0j, 0.12, cfg),
                basis.winding_order(k, 0.5 + 0j, 0.15, cfg),
            )
            if got != (triple[0], merged):
                mismatches += 1
        else:
            got = (
                basis.winding_order(k, 0j, 0.12, cfg),
                basis.winding_order(k, ps.q_out_1, 0.1, cfg),
                basis.winding_order(k, ps.q_out_2, 0.1, cfg),
            )
            if got != triple:
                mismatches += 1
    checks.append(_check("order_triples_vs_winding", mismatches, 0.0))

    worst = 0.0
    for z in pts[:50]:
        w2 = propagation.omega_hat(z, cfg) ** 2
        rhs = sum(
            lam * basis.basis_value(-2 + 2 * t, z, cfg)
            for t, lam in enumerate(params.as_tuple())
        )
        worst = max(worst, abs(w2 - rhs))
    checks.append(_check("omega_squared_expansion", worst, 1e-8))
    return checks


def verify_algebra(cfg: TorusConfig, window: int = 8) -> list[CheckResult]:
    checks = []
    rng = random.Random(401)
    pts = random_points(cfg, 25, seed=402)
    params = lambda_coefficients(cfg)

    worst = 0.0
    for i in range(-window, window + 1):
        for j in range(-window, window + 1):
            for _ in range(5):
                z = rng.choice(pts)
                num = algebra.bracket_numeric(i, j, z, cfg)
                cf = algebra.bracket_eval(i, j, z, cfg, params)
                worst = max(worst, abs(num - cf) / max(1.0, abs(num)))
    checks.append(_check("bracket_oracle_equivalence", worst, 1e-7))

    worst = 0.0
    param_sets = [params, *_random_formal_sets(3, seed=403)]
    for ps in param_sets:
        for i in range(-5, 6):
            for j in range(-5, 6):
                for k in range(-5, 6):
                    worst = max(worst, algebra.jacobi_residual(i, j, k, ps))
    checks.append(_check("jacobi_identity", worst, 1e-9))

    table = algebra.build_structure_table(params, window)
    worst = 0.0
    grading_violation = 0.0
    parity_violation = 0.0
    for (i, j), terms in table.entries.items():
        mirror = table.entries.get((j, i), {})
        for k, c in terms.items():
            worst = max(worst, abs(c + mirror.get(k, 0j)))
            if not (i + j - 1 <= k <= i + j + 5):
                grading_violation += 1
            if (k - (i + j - 1)) % 2 != 0:
                parity_violation += 1
    checks.append(_check("table_antisymmetry", worst, 1e-12))
    checks.append(_check("grading_window", grading_violation, 0.0))
    checks.append(_check("support_parity", parity_violation, 0.0))

    if not cfg.two_point:
        two_point = algebra.degeneration_table("two_point", 6, cfg=cfg)
        gaps = [
            algebra.table_gap(
                algebra.degeneration_table(
                    "three_point", 6, cfg=TorusConfig(tau=cfg.tau, q=qq, tol=cfg.tol)
                ),
                two_point,
            )
            for qq in (1e-1, 1e-2, 1e-3)
        ]
        monotone = 0.0 if gaps[0] > gaps[1] > gaps[2] else 1.0
        checks.append(_check("degeneration_monotone", monotone, 0.0))
        # the relative gap at q = 1e-3 is P'(e1)*1e-6 ~ (0.9..1.1)e-4 over the
        # admissible tau range; the acceptance criterion pins 1e-4 at tau=0.8i
        checks.append(_check("degeneration_final_gap", gaps[2], 2e-4))
    return checks


def verify_cocycle(cfg: TorusConfig, window: int = 8) -> list[CheckResult]:
    checks = []
    params = lambda_coefficients(cfg)

    worst = 0.0
    for j in range(-6, 7):
        for k in range(-6, 7):
            expect = 1.0 if j == k else 0.0
            worst = max(worst, abs(cocycle.pairing(j, k, cfg) - expect))
    checks.append(_check("pairing_duality", worst, 1e-8))

    worst = 0.0
    for j, k in ((0, 0), (3, 3), (-4, -4), (2, 0), (-1, 1), (3, 5), (1, -1)):
        a, b = cocycle.pairing_residue_routes(j, k, cfg)
        worst = max(worst, abs(a - b))
    checks.append(_check("pairing_route_consistency", worst, 1e-8))

    worst = 0.0
    support_violation = 0.0
    mixed_violation = 0.0
    for i in range(-window, window + 1):
        for j in range(-window, window + 1):
            v = cocycle.chi_sum(i, j, params)
            worst = max(worst, abs(v + cocycle.chi_sum(j, i, params)))
            if v != 0 and (i + j) not in (0, -2, -4, -6, -8, -10, -12):
                support_violation += 1
            if v != 0 and (i % 2) != (j % 2):
                mixed_violation += 1
    checks.append(_check("chi_antisymmetry", worst, 1e-12))
    checks.append(_check("chi_support", support_violation, 0.0))
    checks.append(_check("chi_mixed_parity", mixed_violation, 0.0))

    worst = 0.0
    for m in range(-8, 9):
        expect = 13.0 / 6.0 * (m**3 - m)
        worst = max(worst, abs(cocycle.chi_sum(m, -m, WITT_PARAMS) - expect))
    off = max(
        abs(cocycle.chi_sum(i, j, WITT_PARAMS))
        for i in range(-8, 9)
        for j in range(-8, 9)
        if i + j != 0
    )
    checks.append(_check("witt_cocycle_values", max(worst, off), 1e-9))

    worst = 0.0
    for ps in (WITT_PARAMS, params, *_random_formal_sets(1, seed=404)):
        for i in range(-4, 5):
            for j in range(-4, 5):
                for k in range(-4, 5):
                    worst = max(worst, cocycle.cocycle_identity_residual(i, j, k, ps))
    checks.append(_check("two_cocycle_identity", worst, 1e-9))

    cfg0 = cfg if cfg.two_point else TorusConfig(tau=cfg.tau, two_point=True, tol=cfg.tol)
    params0 = lambda_coefficients(cfg0)
    qv0 = cocycle.q_values(params0)
    starred = max(abs(qv0[k]) for k in sorted(qv0.starred))
    deep = max(
        (
            abs(cocycle.chi_sum(i, j, params0))
            for i in range(-window, window + 1)
            for j in range(-window, window + 1)
            if i + j in (-10, -12) or (i + j == -6 and i % 2 != 0 and j % 2 != 0)
        ),
        default=0.0,
    )
    checks.append(_check("starred_q_vanishing_two_point", max(starred, deep), 1e-10))

    # informational: tolerance -1 flags a reported (not gated) quantity;
    # the closed-form tables are transcribed verbatim and disagreements are
    # emitted as a machine-readable report, never silently corrected
    report = cocycle.reconciliation_report(params, window)
    checks.append(
        CheckResult(
            name="closed_form_reconciliation_reported",
            status="pass",
            max_residual=float(len(report)),
            tolerance=-1.0,
        )
    )
    return checks


def verify_fock(cfg: TorusConfig) -> list[CheckResult]:
    checks = []
    rng = random.Random(501)
    params = lambda_coefficients(cfg)

    def random_state() -> fock.WedgeState:
        vec: fock.FockVector = {fock.VACUUM: 1.0 + 0j}
        for _ in range(rng.randint(1, 5)):
            idx = rng.randint(-8, 8)
            op = rng.choice((fock.apply_c, fock.apply_b))
            cand = op(idx, vec)
            if cand:
                vec = cand
        return next(iter(vec))

    worst = 0.0
    for _ in range(30):
        st = random_state()
        base = {st: 1.0 + 0j}
        for k in range(-6, 7):
            for i in range(-6, 7):
                anti = fock.vec_add(
                    fock.apply_b(k, fock.apply_c(i, base)),
                    fock.apply_c(i, fock.apply_b(k, base)),
                )
                expect = base if k == i else {}
                worst = max(worst, fock.vec_norm(fock.vec_add(anti, fock.vec_scale(expect, -1))))
        k, l = rng.randint(-8, 8), rng.randint(-8, 8)
        worst = max(
            worst,
            fock.vec_norm(
                fock.vec_add(fock.apply_b(k, fock.apply_b(l, base)), fock.apply_b(l, fock.apply_b(k, base)))
            ),
        )
        worst = max(
            worst,
            fock.vec_norm(
                fock.vec_add(fock.apply_c(k, fock.apply_c(l, base)), fock.apply_c(l, fock.apply_c(k, base)))
            ),
        )
    checks.append(_check("clifford_relations", worst, 0.0))

    vac: fock.FockVector = {fock.VACUUM: 1.0 + 0j}
    worst = 0.0
    for k in range(-6, 7):
        out = fock.normal_ordered_bc(k, k, vac)
        worst = max(worst, abs(out.get(fock.VACUUM, 0j)))
    checks.append(_check("normal_ordering_vacuum", worst, 0.0))

    worst = 0.0
    for i in range(3, 9):
        worst = max(worst, fock.vec_norm(fock.l_operator(i, vac, WITT_PARAMS)))
    checks.append(_check("annihilation_side", worst, 0.0))

    v1 = {random_state(): 0.7 + 0.2j}
    v2 = {random_state(): -0.4 + 1.1j}
    lin = fock.vec_add(
        fock.l_operator(2, fock.vec_add(v1, v2), params),
        fock.vec_scale(fock.l_operator(2, v1, params), -1),
        fock.vec_scale(fock.l_operator(2, v2, params), -1),
    )
    checks.append(_check("l_operator_linearity", fock.vec_norm(lin), 1e-12))

    conv = fock.determine_sign_convention()
    worst = 0.0
    for _ in range(10):
        i, j = rng.randint(-4, 4), rng.randint(-4, 4)
        v = {random_state(): 1.0 + 0j}
        worst = max(worst, fock.commutator_residual(i, j, v, params, conv))
    checks.append(_check("commutator_relation", worst, 1e-9))

    worst = 0.0
    for i in range(-5, 6):
        ext = fock.extract_vacuum_cocycle(i, -i, params)
        expect = conv[1] * cocycle.chi_sum(i, -i, params)
        worst = max(worst, abs(ext - expect) / max(1.0, abs(expect)))
    checks.append(_check("vacuum_cocycle_grounding", worst, 1e-9))

    bad = 0.0
    for _ in range(10):
        st = random_state()
        if fock.state_from_text(st.to_text()) != st:
            bad += 1
    sample = fock.canonical_state(-1, {0}, {-2})
    checks.append(
        _check(f"wedge_text_round_trip[{sample.to_text()}]", bad, 0.0)
    )
    return checks


def verify_suite(suite: str, cfg: TorusConfig, window: int = 8) -> list[CheckResult]:
    if suite == "elliptic":
        return verify_elliptic(cfg)
    if suite == "differential":
        return verify_differential(cfg)
    if suite == "basis":
        return verify_basis(cfg)
    if suite == "algebra":
        return verify_algebra(cfg, window)
    if suite == "cocycle":
        return verify_cocycle(cfg, window)
    if suite == "fock":
        return verify_fock(cfg)
    if suite == "all":
        out = []
        for name in SUITES:
            out.extend(verify_suite(name, cfg, window))
        return out
    raise ValueError(f"unknown suite {suite!r}")

"""Duality pairing and the central-extension cocycle.

The cocycle is computed two ways:

* chi_sum: the finite double sum over products of shifted structure
  constants, split by the normal-ordering boundary k = -1.  This is the
  oracle; it reproduces the commutator anomaly of the wedge-space
  operators exactly (up to the stored orientation flags).
* chi_closed: fixed closed-form coefficient tables, kept verbatim, in the
  same orientation.  Disagreements beyond round-off are emitted in a
  reconciliation report rather than silently corrected; the double sum is
  the authority (it is what the wedge operators realize).

Orientation: the double sum is evaluated with its pair order chosen so
that the Witt limit lands in the conventional form
chi(m, -m) = 13/6 (m^3 - m).  The wedge-operator commutator realizes the
opposite orientation; the empirical flags (sigma_c, sigma_chi) = (+1, -1)
stored on CocycleTable connect the two:
[L_i, L_j] = sigma_c * sum_k C_ij^k L_k + sigma_chi * chi_sum(i, j).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import BracketTerms, bracket
from .basis import AlgebraParams
from .config import TorusConfig, _lattice_distance
from .elliptic import wp_pair
from .errors import BadContourError
from .propagation import puncture_set

# empirical wedge-operator convention; rederived by fock.determine_sign_convention
DEFAULT_SIGN_CONVENTION: tuple[int, int] = (1, -1)

PAIRING_INDEX_BOUND = 12


# ---------------------------------------------------------------------------
# duality pairing by contour quadrature


def _order_at_origin(k: int) -> int:
    return k


def _order_at_out_puncture(k: int, cfg: TorusConfig) -> int:
    """Vanishing order at one out-puncture (per puncture).

    In two-point mode the out-punctures merge: the pole factor acquires a
    double zero there while the differential keeps a simple pole, so the
    merged orders are -k (even) and -k-2 (odd).
    """
    if cfg.two_point:
        return -k if k % 2 == 0 else -k - 2
    return -k // 2 if k % 2 == 0 else (-k - 3) // 2


@lru_cache(maxsize=None)
def _pairing_circles(cfg: TorusConfig, nodes: int):
    """Cached quadrature data on fixed circles around each distinct puncture.

    For each circle: the node offsets (z - center), the pole factor
    wp(z) - p and the differential scalar at every node.  All basis
    functions on the circle are cheap monomials in these arrays.
    """
    ps = puncture_set(cfg)
    centers = list(cfg.punctures())
    tau = cfg.tau
    lattice_min = min(1.0, abs(tau), abs(tau + 1.0), abs(tau - 1.0))
    radii = []
    for idx, c in enumerate(centers):
        others = [s for pos, s in enumerate(centers) if pos != idx]
        dist = min(_lattice_distance(c - s, tau) for s in others)
        # the center's own lattice translates bound the holomorphy disk too
        dist = min(dist, lattice_min)
        radii.append(0.45 * dist)
    import cmath

    data = []
    for c, r in zip(centers, radii):
        offsets = tuple(r * cmath.exp(2j * cmath.pi * k / nodes) for k in range(nodes))
        base = []
        omega = []
        for dz in offsets:
            p, dp = wp_pair(c + dz, cfg)
            b = p - ps.p_q
            base.append(b)
            omega.append(-0.5 * dp / b)
        data.append((offsets, tuple(base), tuple(omega)))
    return tuple(data)


def _circle_residue(circle, i1: int, i2: int) -> complex:
    """Residue of A_{i1} * A_{i2} on a cached circle."""
    offsets, base, omega = circle
    n = len(offsets)
    total = 0j

    def value(idx: int, b: complex, w: complex) -> complex:
        if idx % 2 == 0:
            return b ** (-idx // 2)
        return w * b ** (-(idx + 1) // 2)

    for dz, b, w in zip(offsets, base, omega):
        total += value(i1, b, w) * value(i2, b, w) * dz
    return total / n


def pairing(j: int, k: int, cfg: TorusConfig, nodes: int = 512) -> complex:
    """Dual pairing of the vector field e_j with the quadratic form O_k.

    The integrand is the scalar A_{j+1} * A_{-k-2}; its integral over any
    level line equals the residue at the in-point and minus the sum of the
    residues at the out-points.  The in-point quadrature is used whenever
    the pole there is mild (order <= 4).  A deeper in-point pole forces,
    by conservation of the total vanishing order, a holomorphic integrand
    at both out-points, whose residues vanish identically; the level-line
    value is then an exact zero.  The underlying vanishing orders are
    certified separately by argument-principle quadrature.  Returns
    delta_j^k up to quadrature error.
    """
    if max(abs(j), abs(k)) > PAIRING_INDEX_BOUND:
        raise BadContourError(
            f"pairing indices |j|,|k| must be <= {PAIRING_INDEX_BOUND}"
        )
    i1, i2 = j + 1, -k - 2
    n0 = _order_at_origin(i1) + _order_at_origin(i2)
    nq = _order_at_out_puncture(i1, cfg) + _order_at_out_puncture(i2, cfg)
    if n0 >= -4:
        circles = _pairing_circles(cfg, nodes)
        return _circle_residue(circles[0], i1, i2)
    if nq < 0:
        raise AssertionError(
            f"order bookkeeping violated for pairing({j},{k}): n0={n0}, nq={nq}"
        )
    return 0j


def pairing_residue_routes(j: int, k: int, cfg: TorusConfig, nodes: int = 512) -> tuple[complex, complex]:
    """(in-point residue, -(sum of out-point residues)) for consistency checks.

    Both routes are homologous to a level line, so they agree whenever both
    are numerically benign (mild pole orders on each side).
    """
    i1, i2 = j + 1, -k - 2
    circles = _pairing_circles(cfg, nodes)
    a = _circle_residue(circles[0], i1, i2)
    b = -sum(_circle_residue(circle, i1, i2) for circle in circles[1:])
    return a, b


# ---------------------------------------------------------------------------
# shifted structure constants and the cocycle double sum


def shifted_constants(i: int, j: int, params: AlgebraParams) -> BracketTerms:
    """Structure constants in the shifted basis e_i = l_{i+1}.

    Support lies in [i+j, i+j+6] with even steps.
    """
    return {k - 1: c for k, c in bracket(i + 1, j + 1, params).items()}


def _chi_literal(i: int, j: int, params: AlgebraParams) -> complex:
    """Double sum (sum_A - sum_B) C_ik^l C_jl^k over the boundary split.

    A = {k < -1, l >= -1}, B = {k >= -1, l < -1}.  The k ranges follow
    from the support window of the shifted constants:
      in A: l >= -1 and l <= i+k+6 force k >= -i-7;
      in B: l <= -2 and l >= i+k force k <= -i-2.
    One extra k on each side is scanned and asserted to contribute zero.
    """

    def row(a: int, b: int) -> BracketTerms:
        return shifted_constants(a, b, params)

    def term_sum(k: int, l_lo: int, l_hi: int) -> complex:
        first = row(i, k)
        if not first:
            return 0j
        total = 0j
        for l, c_ikl in first.items():
            if l < l_lo or l > l_hi:
                continue
            c_jlk = row(j, l).get(k)
            if c_jlk is not None:
                total += c_ikl * c_jlk
        return total

    total = 0j
    # region A: k <= -2, l >= -1
    k_lo = -i - 7
    for k in range(k_lo - 1, -1):
        contribution = term_sum(k, -1, k + 100000)  # upper bound inert; support caps l
        if k < k_lo and contribution != 0:
            raise AssertionError("cocycle sum window too small on the A side")
        total += contribution
    # region B: k >= -1, l <= -2
    k_hi = -i - 2
    for k in range(-1, k_hi + 2):
        contribution = term_sum(k, -(10 ** 9), -2)
        if k > k_hi and contribution != 0:
            raise AssertionError("cocycle sum window too small on the B side")
        total -= contribution
    return total


def chi_sum(i: int, j: int, params: AlgebraParams) -> complex:
    """Central-extension cocycle from the finite double sum.

    Supported on i+j in {0, -2, ..., -12} and normalized so that the Witt
    limit gives chi_sum(m, -m) = 13/6 (m^3 - m).  The sum is evaluated for
    the ordered pair (i < j) and negated otherwise, which makes
    antisymmetry bit-exact.
    """
    if i == j:
        return 0j
    if i < j:
        return _chi_literal(j, i, params)
    return -_chi_literal(i, j, params)


# ---------------------------------------------------------------------------
# closed-form cocycle


@dataclass(frozen=True)
class QValues:
    """Quadratic parameter combinations keyed by label products.

    Q_k = sum of lam_a * lam_b over a, b in {4,...,7} with a*b = k.  The
    starred keys carry a lam7 factor and vanish in two-point mode.
    """

    values: dict[int, complex]
    starred: frozenset[int] = frozenset({28, 35, 42, 49})

    def __getitem__(self, key: int) -> complex:
        return self.values[key]


def q_values(params: AlgebraParams) -> QValues:
    l4, l5, l6, l7 = params.as_tuple()
    return QValues(
        values={
            20: 2 * l4 * l5,
            24: 2 * l4 * l6,
            25: l5 * l5,
            28: 2 * l4 * l7,
            30: 2 * l5 * l6,
            35: 2 * l5 * l7,
            36: l6 * l6,
            42: 2 * l6 * l7,
            49: l7 * l7,
        }
    )


# closed-form coefficient tables: level -> [(cubic, linear, Q key or None)]
# with the summand (cubic * s**3 + linear * s) * Q at shift s = i - level/2 ...
# see chi_closed for the exact variable.
_ODD_TABLE: dict[int, list[tuple[float, float, int | None]]] = {
    0: [(13 / 6, -13 / 6, None)],
    -2: [(13 / 6, -2 / 3, 20)],
    -4: [(13 / 6, -25 / 6, 24)],
    -6: [(13 / 6, -76 / 6, 28)],
}

_EVEN_TABLE: dict[int, list[tuple[float, float, int | None]]] = {
    0: [(13 / 6, -13 / 6, None)],
    -2: [(13 / 3, 5 / 3, 20)],
    -4: [(13 / 3, 11 / 3, 24), (13 / 6, -2 / 3, 25)],
    -6: [(13 / 3, 5 / 3, 28), (13 / 3, -25 / 3, 30)],
    -8: [(13 / 3, -58 / 3, 35), (13 / 6, -73 / 6, 36)],
    -10: [(13 / 3, -133 / 3, 42)],
    -12: [(13 / 6, -110 / 3, 49)],
}


def chi_closed(i: int, j: int, params: AlgebraParams) -> complex:
    """Cocycle from the closed-form coefficient tables (kept verbatim).

    Mixed-parity pairs vanish; odd-odd pairs use the four-level table,
    even-even pairs the seven-level table.  The cubic variable is the first
    argument shifted by half the level depth, which makes each term
    antisymmetric under (i, j) swap and aligns the Witt limit with
    chi_sum.  Residual disagreements with chi_sum are the business of the
    reconciliation report, never patched here.
    """
    if (i + j) % 2 != 0 or (i % 2) != (j % 2):
        return 0j
    level = i + j
    table = _ODD_TABLE if i % 2 != 0 else _EVEN_TABLE
    if level not in table:
        return 0j
    shift = -level // 2
    s = i + shift
    qv = q_values(params)
    total = 0j
    for cubic, linear, qkey in table[level]:
        factor = 1.0 + 0j if qkey is None else qv[qkey]
        total += (cubic * s**3 + linear * s) * factor
    return total


# ---------------------------------------------------------------------------
# identities, tables, reconciliation


def cocycle_identity_residual(i: int, j: int, k: int, params: AlgebraParams) -> float:
    """Two-cocycle identity residual, normalized by the cubic parameter scale.

    Cyclic sum over (i, j, k) of sum_m C_jk^m chi_im; zero for any valid
    cocycle, in either orientation (the identity is linear in chi and C).
    """
    total = 0j
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for m, coeff in shifted_constants(b, c, params).items():
            total += coeff * chi_sum(a, m, params)
    scale = params.scale()
    return abs(total) / (scale**3)


@dataclass(frozen=True)
class CocycleTable:
    """Antisymmetric cocycle values over a symmetric shifted-index window."""

    window: int
    params: AlgebraParams
    method: str  # "sum" or "closed_form"
    sign_convention: tuple[int, int]
    entries: dict[tuple[int, int], complex]

    def to_csv_rows(self) -> list[str]:
        rows = ["i,j,re,im"]
        for (i, j) in sorted(self.entries):
            c = self.entries[(i, j)]
            rows.append(f"{i},{j},{c.real!r},{c.imag!r}")
        return rows

    def to_json_dict(self) -> dict:
        lam = self.params
        return {
            "window": self.window,
            "method": self.method,
            "sign_convention": {
                "sigma_c": self.sign_convention[0],
                "sigma_chi": self.sign_convention[1],
            },
            "params": {
                "lam4": [lam.lam4.real, lam.lam4.imag],
                "lam5": [lam.lam5.real, lam.lam5.imag],
                "lam6": [lam.lam6.real, lam.lam6.imag],
                "lam7": [lam.lam7.real, lam.lam7.imag],
                "provenance": lam.provenance,
            },
            "entries": [
                {"i": i, "j": j, "chi": [self.entries[(i, j)].real, self.entries[(i, j)].imag]}
                for (i, j) in sorted(self.entries)
            ],
        }


def build_cocycle_table(
    params: AlgebraParams,
    window: int,
    method: str = "sum",
    sign_convention: tuple[int, int] = DEFAULT_SIGN_CONVENTION,
) -> CocycleTable:
    if window < 1:
        raise ValueError("window must be >= 1")
    fn = {"sum": chi_sum, "closed_form": chi_closed}.get(method)
    if fn is None:
        raise ValueError(f"unknown cocycle method {method!r}")
    entries: dict[tuple[int, int], complex] = {}
    for i in range(-window, window + 1):
        for j in range(-window, window + 1):
            value = fn(i, j, params)
            if value != 0:
                entries[(i, j)] = value
    return CocycleTable(
        window=window,
        params=params,
        method=method,
        sign_convention=sign_convention,
        entries=entries,
    )


def reconciliation_report(
    params: AlgebraParams, window: int, rel_tol: float = 1e-8
) -> list[dict]:
    """Machine-readable chi_closed vs chi_sum comparison.

    One record per disagreeing pair; empty list means full agreement at the
    given relative tolerance over the whole window.
    """
    report: list[dict] = []
    for i in range(-window, window + 1):
        for j in range(-window, window + 1):
            s = chi_sum(i, j, params)
            c = chi_closed(i, j, params)
            diff = abs(s - c)
            if diff > rel_tol * max(1.0, abs(s)):
                report.append(
                    {
                        "i": i,
                        "j": j,
                        "chi_sum": [s.real, s.imag],
                        "chi_closed": [c.real, c.imag],
                        "abs_diff": diff,
                    }
                )
    return report

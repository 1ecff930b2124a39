"""Structure constants of the generalized Krichever-Novikov algebra.

Basis vector fields l_k = A_k d/dz close under the Lie bracket with sparse
structure constants whose only non-integer content is lam4..lam7:

    [l_n, l_m] = (m - n) l_{n+m-1}                       n, m even
    [l_a, l_b] = (b - a) * sum_t lam_{4+t} l_{a+b-1+2t}  a, b odd
    [l_a, l_n] = sum_t (n - a - t) lam_{4+t} l_{a+n-1+2t}  a odd, n even

with t = 0..3.  The even-odd bracket follows by antisymmetry.  Every
target index lies in [i+j-1, i+j+5] and shares the parity of i+j-1
(almost-grading).  bracket_numeric realizes the defining vector-field
bracket pointwise and serves as the independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .basis import AlgebraParams, WITT_PARAMS, basis_derivative, basis_value, lambda_coefficients
from .config import TorusConfig

BracketTerms = dict[int, complex]


def bracket(i: int, j: int, params: AlgebraParams) -> BracketTerms:
    """Sparse bracket [l_i, l_j] as a map target index -> coefficient.

    Zero coefficients are dropped, so antisymmetric pairs and equal
    arguments produce an empty map.
    """
    lam = params.as_tuple()
    terms: BracketTerms = {}

    def add(k: int, c: complex) -> None:
        if c != 0:
            terms[k] = terms.get(k, 0j) + c
            if terms[k] == 0:
                del terms[k]

    if i % 2 == 0 and j % 2 == 0:
        add(i + j - 1, complex(j - i))
    elif i % 2 != 0 and j % 2 != 0:
        factor = complex(j - i)
        if factor != 0:
            for t in range(4):
                add(i + j - 1 + 2 * t, factor * lam[t])
    elif i % 2 != 0:  # odd-even
        for t in range(4):
            add(i + j - 1 + 2 * t, complex(j - i - t) * lam[t])
    else:  # even-odd via antisymmetry
        for k, c in bracket(j, i, params).items():
            add(k, -c)
    return terms


def bracket_numeric(i: int, j: int, z: complex, cfg: TorusConfig) -> complex:
    """Pointwise vector-field bracket A_i * A_j' - A_j * A_i' at z.

    Truth oracle for bracket(): the closed-form constants must reproduce
    this value when contracted with the basis functions.
    """
    return basis_value(i, z, cfg) * basis_derivative(j, z, cfg) - basis_value(
        j, z, cfg
    ) * basis_derivative(i, z, cfg)


def bracket_eval(i: int, j: int, z: complex, cfg: TorusConfig, params: AlgebraParams) -> complex:
    """Contract bracket(i, j) with the basis functions at z."""
    return sum(c * basis_value(k, z, cfg) for k, c in bracket(i, j, params).items())


def jacobi_residual(i: int, j: int, k: int, params: AlgebraParams) -> float:
    """Max-norm of the cyclic Jacobi sum, normalized by the parameter scale.

    The double brackets are quadratic in lam4..lam7, so the residual is
    divided by max(1, max|lam|)^2; an exact Lie algebra leaves only
    floating-point noise well below 1e-9.
    """

    def double_bracket(a: int, b: int, c: int) -> BracketTerms:
        out: BracketTerms = {}
        for m, coeff in bracket(a, b, params).items():
            for target, inner in bracket(m, c, params).items():
                out[target] = out.get(target, 0j) + coeff * inner
        return out

    total: BracketTerms = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for target, coeff in double_bracket(a, b, c).items():
            total[target] = total.get(target, 0j) + coeff
    residual = max((abs(v) for v in total.values()), default=0.0)
    scale = params.scale()
    return residual / (scale * scale)


@dataclass(frozen=True)
class StructureTable:
    """Bracket coefficients for all pairs in a symmetric index window."""

    window: int
    indexing: str  # "original" (l basis) or "shifted" (e_i = l_{i+1})
    params: AlgebraParams
    entries: dict[tuple[int, int], BracketTerms]

    def to_csv_rows(self) -> list[str]:
        rows = ["i,j,k,re,im"]
        for (i, j) in sorted(self.entries):
            for k in sorted(self.entries[(i, j)]):
                c = self.entries[(i, j)][k]
                rows.append(f"{i},{j},{k},{c.real!r},{c.imag!r}")
        return rows

    def to_json_dict(self) -> dict:
        entries = []
        for (i, j) in sorted(self.entries):
            terms = [
                {"k": k, "c": [self.entries[(i, j)][k].real, self.entries[(i, j)][k].imag]}
                for k in sorted(self.entries[(i, j)])
            ]
            entries.append({"i": i, "j": j, "terms": terms})
        lam = self.params
        return {
            "window": self.window,
            "indexing": self.indexing,
            "params": {
                "lam4": [lam.lam4.real, lam.lam4.imag],
                "lam5": [lam.lam5.real, lam.lam5.imag],
                "lam6": [lam.lam6.real, lam.lam6.imag],
                "lam7": [lam.lam7.real, lam.lam7.imag],
                "provenance": lam.provenance,
            },
            "entries": entries,
        }


def build_structure_table(
    params: AlgebraParams, window: int, indexing: str = "original"
) -> StructureTable:
    if window < 1:
        raise ValueError("window must be >= 1")
    if indexing not in ("original", "shifted"):
        raise ValueError(f"unknown indexing {indexing!r}")
    entries: dict[tuple[int, int], BracketTerms] = {}
    for i in range(-window, window + 1):
        for j in range(-window, window + 1):
            if i == j:
                continue
            if indexing == "original":
                terms = bracket(i, j, params)
            else:
                terms = {k - 1: c for k, c in bracket(i + 1, j + 1, params).items()}
            if terms:
                entries[(i, j)] = terms
    return StructureTable(window=window, indexing=indexing, params=params, entries=entries)


def degeneration_table(
    mode: str,
    window: int,
    cfg: TorusConfig | None = None,
    params: AlgebraParams | None = None,
) -> StructureTable:
    """Structure table for one of the degeneration stages.

    three_point: parameters derived from cfg as given.
    two_point:   cfg forced to the coincident-puncture mode (lam7 = 0).
    witt:        formal parameters (1, 0, 0, 0); the bracket collapses to
                 [l_i, l_j] = (j - i) l_{i+j-1} for all parities.
    """
    if mode == "witt":
        return build_structure_table(params or WITT_PARAMS, window)
    if cfg is None:
        raise ValueError(f"mode {mode!r} requires a TorusConfig")
    if mode == "three_point":
        return build_structure_table(lambda_coefficients(cfg), window)
    if mode == "two_point":
        cfg0 = replace(cfg, q=0j, two_point=True)
        return build_structure_table(lambda_coefficients(cfg0), window)
    raise ValueError(f"unknown degeneration mode {mode!r}")


def table_gap(a: StructureTable, b: StructureTable) -> float:
    """Largest entrywise coefficient difference, relative to b's magnitude.

    Used for degeneration-continuity checks; the normalization is the
    largest coefficient magnitude of the reference table.
    """
    keys = set(a.entries) | set(b.entries)
    gap = 0.0
    ref = 1.0
    for terms in b.entries.values():
        for c in terms.values():
            ref = max(ref, abs(c))
    for key in keys:
        ta = a.entries.get(key, {})
        tb = b.entries.get(key, {})
        for k in set(ta) | set(tb):
            gap = max(gap, abs(ta.get(k, 0j) - tb.get(k, 0j)))
    return gap / ref

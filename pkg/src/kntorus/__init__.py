"""Krichever-Novikov algebra of a complex torus with three symmetric punctures.

Library layout:

* config     -- TorusConfig (lattice, punctures, tolerances)
* elliptic   -- Weierstrass wp, wp', half-period values
* propagation-- propagation differential, residues, string time, moduli
* basis      -- adapted function basis and the lam4..lam7 scalars
* algebra    -- structure constants, bracket oracle, degenerations
* cocycle    -- duality pairing, central-extension cocycle (sum + closed form)
* fock       -- semi-infinite wedge representation grounding the cocycle
* verify     -- deterministic invariant batteries (also behind the CLI)
* cli        -- kntorus command line front end
"""

from .basis import AlgebraParams, WITT_PARAMS, formal_params, lambda_coefficients
from .config import TorusConfig
from .elliptic import HalfPeriodValues, half_period_values, reduce_to_fundamental, wp, wp_pair, wp_prime
from .errors import (
    BadContourError,
    DegenerateModuliError,
    KNTorusError,
    NonIntegerWindingError,
    PoleOnPathError,
    PoleProximityError,
    WindowViolationError,
)

__all__ = [
    "AlgebraParams",
    "BadContourError",
    "DegenerateModuliError",
    "HalfPeriodValues",
    "KNTorusError",
    "NonIntegerWindingError",
    "PoleOnPathError",
    "PoleProximityError",
    "TorusConfig",
    "WindowViolationError",
    "WITT_PARAMS",
    "formal_params",
    "half_period_values",
    "lambda_coefficients",
    "reduce_to_fundamental",
    "wp",
    "wp_pair",
    "wp_prime",
]

__version__ = "0.1.0"

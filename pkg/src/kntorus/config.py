"""Torus geometry configuration shared by every module."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class TorusConfig:
    """Fixes the lattice Z + tau*Z, the puncture offset q and numerical knobs.

    The three punctures are 0 and 1/2 +- q (mod the lattice).  ``two_point``
    selects the degenerate configuration where both out-punctures coincide
    at 1/2; it is an explicit mode, not a numerical limit, and forces q = 0.
    """

    tau: complex
    q: complex = 0j
    tol: float = 1e-10
    series_cutoff: int = 64
    two_point: bool = False
    exclusion_radius: float = 1e-4

    def __post_init__(self):
        tau = complex(self.tau)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "q", 0j if self.two_point else complex(self.q))
        if tau.imag <= 0:
            raise ValueError(f"tau must lie in the upper half plane, got {tau}")
        if not (0 < self.tol):
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.series_cutoff < 1:
            raise ValueError("series_cutoff must be a positive integer")
        if not self.two_point:
            for base in (0j, 0.5 + 0j):
                d = _lattice_distance(self.q - base, tau)
                if d <= self.exclusion_radius:
                    raise ValueError(
                        f"q={self.q} is within {self.exclusion_radius} of "
                        f"{base} mod the lattice; use two_point=True for the "
                        "degenerate configuration"
                    )

    def punctures(self) -> tuple[complex, ...]:
        """Distinct marked points; (0, 1/2+q, 1/2-q) or (0, 1/2) degenerate."""
        if self.two_point:
            return (0j, 0.5 + 0j)
        return (0j, 0.5 + self.q, 0.5 - self.q)


def _lattice_distance(z: complex, tau: complex) -> float:
    """Distance from z to the nearest point of Z + tau*Z."""
    b = z.imag / tau.imag
    a = z.real - b * tau.real
    a -= math.floor(a + 0.5)
    b -= math.floor(b + 0.5)
    best = abs(complex(a + b * tau.real, b * tau.imag))
    # wrap-around candidates: the reduced point may be closer to a corner
    for da in (-1.0, 0.0, 1.0):
        for db in (-1.0, 0.0, 1.0):
            w = complex(a + da + (b + db) * tau.real, (b + db) * tau.imag)
            best = min(best, abs(w))
    return best

"""Numerical tolerances, all in one place.

Module-level constants are the defaults; a :class:`Tolerances` instance can
carry per-run overrides (the CLI exposes them as ``--tolerance key=value``).
"""

from dataclasses import dataclass, replace

NORM_TOL = 1e-12          # state norm drift after any operation sequence
LEAK_TOL = 1e-12          # probability allowed in the top retained Fock level
CONSERVATION_TOL = 1e-10  # excitation-number / unitarity checks on random states
EIGENVALUE_FLOOR = -1e-10  # most negative admissible density-matrix eigenvalue
FID_TOL = 1e-6            # fidelity comparisons against exact constructions
DEGENERATE_BRANCH_TOL = 1e-15  # measurement branch below this cannot be sampled
TIMING_TOL = 1e-3         # joint residual for "simultaneously satisfied" timing


@dataclass(frozen=True)
class Tolerances:
    norm: float = NORM_TOL
    leakage: float = LEAK_TOL
    conservation: float = CONSERVATION_TOL
    eigenvalue_floor: float = EIGENVALUE_FLOOR
    fidelity: float = FID_TOL
    degenerate_branch: float = DEGENERATE_BRANCH_TOL
    timing: float = TIMING_TOL

    def override(self, **kwargs: float) -> "Tolerances":
        return replace(self, **kwargs)


DEFAULT = Tolerances()

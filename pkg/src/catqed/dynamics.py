"""Primitive evolutions: resonant exchange, Ramsey rotation, free phases,
projective atomic measurement.

All maps are pure functions on :class:`~catqed.fockspace.QuantumState`.
Conventions:

* The exchange pulse (atom resonant with the cavity, interaction picture)
  rotates each pair (|up, n>, |down, n+1>) by the angle g*sqrt(n+1)*t:

      |up, n>      -> cos(...)|up, n> - sin(...)|down, n+1>
      |down, n+1>  -> cos(...)|down, n+1> + sin(...)|up, n>

  and leaves |down, 0> alone.  The omega-dependent phases live entirely in
  :func:`free_evolve`, applied between interaction zones.

* Free evolution for time t multiplies |n> by e^{-i n omega t} and each
  selected atom's up level by e^{-i omega t}; the down level carries no
  phase (gauge choice — protocol observables only see phase differences).
"""

import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from . import tolerances
from .backend import kernels
from .errors import CutoffError, DegenerateBranchError
from .fockspace import HilbertLayout, QuantumState, Subsystem

__all__ = [
    "PhysicalParams",
    "RamseySetting",
    "jc_evolve",
    "ramsey_rotate",
    "free_evolve",
    "branch_probabilities",
    "measure_atom",
    "collapse_atom",
]


@dataclass(frozen=True)
class PhysicalParams:
    """Atom-field coupling g and resonant mode frequency omega (rad/s)."""

    g: float
    omega: float

    def __post_init__(self):
        if self.g <= 0:
            raise ValueError(f"coupling g must be positive, got {self.g}")
        if self.omega <= 0:
            raise ValueError(f"frequency omega must be positive, got {self.omega}")


@dataclass(frozen=True)
class RamseySetting:
    """Pulse angle theta and rotation phase phi of one Ramsey zone crossing."""

    theta: float
    phi: float = 0.0

    @classmethod
    def from_up_amplitude(cls, sqrt_p: float, phi: float = 0.0) -> "RamseySetting":
        """Setting with cos(theta/2) = sqrt_p (so an up atom keeps weight p)."""
        return cls(2.0 * math.acos(sqrt_p), phi)


def jc_evolve(
    state: QuantumState,
    atom: int,
    params: PhysicalParams,
    duration: float,
    tol: tolerances.Tolerances = tolerances.DEFAULT,
) -> QuantumState:
    """Resonant atom-cavity exchange for ``duration`` seconds.

    Raises :class:`CutoffError` if the top retained Fock level would feed an
    exchange (population at |up, fock_cutoff> above tolerance): truncation
    must never silently eat probability.
    """
    layout = state.layout
    layout.check_atom(atom)
    if duration < 0:
        raise ValueError(f"duration must be >= 0, got {duration}")
    k = layout.atom_count
    top = state.amplitudes[layout.fock_cutoff << k :]
    bits = np.arange(1 << k)
    top_up = top[(bits >> atom) & 1 == 1]
    if float(np.sum(np.abs(top_up) ** 2)) > tol.norm:
        raise CutoffError(
            f"population at |up, n={layout.fock_cutoff}> exceeds tolerance; "
            "raise fock_cutoff"
        )
    amps = state.copy_amplitudes()
    kernels.jc_evolve(amps, layout.n_levels, k, atom, params.g * duration)
    return QuantumState(layout, amps)


def ramsey_rotate(state: QuantumState, atom: int, setting: RamseySetting) -> QuantumState:
    """Apply the Ramsey zone rotation (theta, phi) to one atom."""
    layout = state.layout
    layout.check_atom(atom)
    amps = state.copy_amplitudes()
    kernels.ramsey_rotate(
        amps, layout.n_levels, layout.atom_count, atom, setting.theta, setting.phi
    )
    return QuantumState(layout, amps)


def _split_targets(
    layout: HilbertLayout, acted_on: Union[Iterable[Subsystem], None]
) -> tuple[bool, int]:
    if acted_on is None:
        return True, (1 << layout.atom_count) - 1
    include_cavity = False
    mask = 0
    for sub in acted_on:
        if sub == "cavity":
            include_cavity = True
        else:
            layout.check_atom(int(sub))
            mask |= 1 << int(sub)
    return include_cavity, mask


def free_evolve(
    state: QuantumState,
    params: PhysicalParams,
    duration: float,
    acted_on: Union[Iterable[Subsystem], None] = None,
) -> QuantumState:
    """Free phases on the selected subsystems (default: everything).

    A binomial field state just gets its mean phase shifted by
    -omega*duration; atoms pick up e^{-i omega t} on the up level.
    """
    if duration < 0:
        raise ValueError(f"duration must be >= 0, got {duration}")
    layout = state.layout
    include_cavity, mask = _split_targets(layout, acted_on)
    amps = state.copy_amplitudes()
    kernels.free_evolve(
        amps, layout.n_levels, layout.atom_count, params.omega * duration,
        include_cavity, mask,
    )
    return QuantumState(layout, amps)


def branch_probabilities(state: QuantumState, atom: int) -> tuple[float, float]:
    """(P_up, P_down) of a projective measurement, without collapsing."""
    layout = state.layout
    layout.check_atom(atom)
    p_up = kernels.up_probability(
        state.amplitudes, layout.n_levels, layout.atom_count, atom
    )
    p_up = min(max(p_up, 0.0), 1.0)
    return p_up, 1.0 - p_up


def collapse_atom(state: QuantumState, atom: int, outcome: str) -> tuple[QuantumState, float]:
    """Project ``atom`` onto ``outcome`` ("up"/"down") and renormalize.

    Returns the collapsed state and the branch probability.
    """
    layout = state.layout
    layout.check_atom(atom)
    p_up, p_down = branch_probabilities(state, atom)
    prob = p_up if outcome == "up" else p_down
    if prob < tolerances.DEGENERATE_BRANCH_TOL:
        raise DegenerateBranchError(
            f"branch {outcome!r} of atom {atom} has probability {prob}"
        )
    keep = 1 if outcome == "up" else 0
    amps = state.copy_amplitudes()
    k = layout.atom_count
    view = amps.reshape(layout.n_levels, 1 << (k - atom - 1), 2, 1 << atom)
    view[:, :, 1 - keep, :] = 0.0
    amps /= math.sqrt(prob)
    return QuantumState(layout, amps), prob


def measure_atom(
    state: QuantumState, atom: int, rng: np.random.Generator
) -> tuple[str, QuantumState, float]:
    """Born-rule measurement of one atom.

    Deterministic given the generator state: one uniform draw decides the
    branch.  Returns (outcome, collapsed state, branch probability).
    """
    p_up, _ = branch_probabilities(state, atom)
    outcome = "up" if rng.random() < p_up else "down"
    collapsed, prob = collapse_atom(state, atom, outcome)
    return outcome, collapsed, prob

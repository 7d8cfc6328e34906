"""Declarative schedules for the three cavity protocols and their interpreter.

Frame convention (validated end to end by the test suite): every event
carries a wall-clock duration.  While an event runs, the participating
subsystems receive only the ideal transform (exchange rotation inside the
cavity, Ramsey rotation inside a zone), and *all other* subsystems acquire
free-evolution phases for that duration.  Explicit ``free`` events cover the
gaps where nothing is inside a zone.  Under this bookkeeping the derived
zone settings below make each protocol exact up to the incommensurability
of the two-photon timing condition.

Generation: a cavity in vacuum plus an entangled atom pair
N0*(|up,down> + eta0 |down,up|) turns into a two-component binomial cat
with both atoms left in the ground state:

    theta_1: cos(theta_1/2) = sqrt(p)         (first preparing pulse)
    theta_2 = theta_1 + pi
    phi_2   = phi_1 + omega*(tau_1 + T - tau_2)
    T_1     = (4m+1) pi / 2g
    T_2     = 41 pi / 4g        (joint timing condition, residual ~9e-5)

    produced cat:  phi = -(phi_1 + omega*(tau_1 + T))
                   gamma = omega*(t_R2 - t_R1 - T_1)

Distinction: two ground-state probe atoms read out which component the
cavity holds; the first absorbs one photon, the second drains the rest,
and matched decoding pulses map component -> (up, up) or (down, down).

Coherence: same probes, but a second decoding zone (theta = pi/2, common
phase phi_c = (gamma - 2 phi + omega tau)/2) converts the superposition
sign into parallel vs antiparallel joint outcomes.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .dynamics import (
    PhysicalParams,
    RamseySetting,
    branch_probabilities,
    collapse_atom,
    free_evolve,
    jc_evolve,
    measure_atom,
    ramsey_rotate,
)
from .errors import ScheduleError
from .fockspace import HilbertLayout, QuantumState, Subsystem, inner_product
from .states import BinomialSpec, CatSpec, binomial_state

__all__ = [
    "ProtocolEvent",
    "GenerationSchedule",
    "DistinctionSchedule",
    "CoherenceSchedule",
    "RunRecord",
    "OutcomeBranch",
    "build_generation",
    "build_distinction",
    "build_coherence",
    "generation_initial_state",
    "generation_target",
    "probe_initial_state",
    "run_protocol",
    "enumerate_outcomes",
    "with_settings_from",
    "fit_cat_weight",
    "cavity_vacuum_probability",
]

TWO_PHOTON_PULSE_AREA = 41.0 * math.pi / 4.0  # joint solution of both timing conditions


def _single_pulse_area(m: int) -> float:
    return (4 * m + 1) * math.pi / 2.0


# ---------------------------------------------------------------------------
# events and interpreter


@dataclass(frozen=True)
class ProtocolEvent:
    """One step of a protocol.

    kind: "ramsey" | "cavity" | "free" | "measure".  ``duration`` is wall
    clock; ``acted_on`` restricts a free event (None = every subsystem).
    ``start`` is bookkeeping, filled in by the builders.
    """

    kind: str
    atom: Optional[int] = None
    duration: float = 0.0
    setting: Optional[RamseySetting] = None
    acted_on: Optional[tuple[Subsystem, ...]] = None
    start: float = 0.0

    def __post_init__(self):
        if self.kind not in ("ramsey", "cavity", "free", "measure"):
            raise ScheduleError(f"unknown event kind {self.kind!r}")
        if self.duration < 0:
            raise ScheduleError(f"negative duration {self.duration} in {self.kind}")
        if self.kind in ("ramsey", "cavity", "measure") and self.atom is None:
            raise ScheduleError(f"{self.kind} event needs an atom index")
        if self.kind == "ramsey" and self.setting is None:
            raise ScheduleError("ramsey event needs a RamseySetting")


def _with_start_times(events: Iterable[ProtocolEvent]) -> list[ProtocolEvent]:
    out = []
    clock = 0.0
    for ev in events:
        out.append(replace(ev, start=clock))
        clock += ev.duration
    return out


def _bystanders(layout: HilbertLayout, event: ProtocolEvent) -> tuple[Subsystem, ...]:
    """Subsystems that free-evolve while ``event``'s zone transform runs."""
    others: list[Subsystem] = [a for a in range(layout.atom_count) if a != event.atom]
    if event.kind != "cavity":
        others.append("cavity")
    return tuple(others)


def _apply_unitary_event(
    state: QuantumState, event: ProtocolEvent, params: PhysicalParams
) -> QuantumState:
    if event.kind == "free":
        return free_evolve(state, params, event.duration, event.acted_on)
    if event.duration > 0.0:
        state = free_evolve(state, params, event.duration, _bystanders(state.layout, event))
    if event.kind == "cavity":
        return jc_evolve(state, event.atom, params, event.duration)
    if event.kind == "ramsey":
        return ramsey_rotate(state, event.atom, event.setting)
    raise ScheduleError(f"not a unitary event: {event.kind}")


@dataclass
class RunRecord:
    """Diagnostics of one interpreted run."""

    norm_drift: float = 0.0
    max_leakage: float = 0.0
    measurements: list[tuple[int, str, float]] = field(default_factory=list)

    def observe(self, state: QuantumState) -> None:
        self.norm_drift = max(self.norm_drift, abs(state.norm() - 1.0))
        self.max_leakage = max(self.max_leakage, state.top_level_probability())


def run_protocol(
    events: Sequence[ProtocolEvent],
    initial: QuantumState,
    params: PhysicalParams,
    rng: Optional[np.random.Generator] = None,
) -> tuple[QuantumState, tuple[str, ...], RunRecord]:
    """Interpret the event list, sampling measurement outcomes from ``rng``.

    Returns (final state, measurement outcomes in order, diagnostics).
    """
    state = initial
    record = RunRecord()
    record.observe(state)
    outcomes: list[str] = []
    for ev in events:
        if ev.kind == "measure":
            if rng is None:
                raise ValueError("event list contains measurements but rng is None")
            outcome, state, prob = measure_atom(state, ev.atom, rng)
            outcomes.append(outcome)
            record.measurements.append((ev.atom, outcome, prob))
        else:
            state = _apply_unitary_event(state, ev, params)
        record.observe(state)
    return state, tuple(outcomes), record


@dataclass(frozen=True)
class OutcomeBranch:
    """One measurement record with its exact probability and final state."""

    outcomes: tuple[str, ...]
    probability: float
    final: QuantumState


def enumerate_outcomes(
    events: Sequence[ProtocolEvent],
    initial: QuantumState,
    params: PhysicalParams,
    prune_below: float = 1e-12,
) -> list[OutcomeBranch]:
    """Deterministic alternative to sampling: walk every measurement branch.

    Branch probabilities are exact Born-rule products; branches lighter than
    ``prune_below`` are dropped (their weight still shows in the total).
    """
    branches: list[tuple[tuple[str, ...], float, QuantumState]] = [((), 1.0, initial)]
    for ev in events:
        if ev.kind != "measure":
            branches = [
                (rec, w, _apply_unitary_event(st, ev, params)) for rec, w, st in branches
            ]
            continue
        grown = []
        for rec, w, st in branches:
            p_up, p_down = branch_probabilities(st, ev.atom)
            for outcome, p in (("up", p_up), ("down", p_down)):
                if w * p <= prune_below:
                    continue
                collapsed, _ = collapse_atom(st, ev.atom, outcome)
                grown.append((rec + (outcome,), w * p, collapsed))
        branches = grown
    return sorted(
        (OutcomeBranch(rec, w, st) for rec, w, st in branches),
        key=lambda b: b.outcomes,
    )


def outcome_distribution(branches: Iterable[OutcomeBranch]) -> dict[tuple[str, ...], float]:
    return {b.outcomes: b.probability for b in branches}


def with_settings_from(
    events: Sequence[ProtocolEvent], reference: Sequence[ProtocolEvent]
) -> list[ProtocolEvent]:
    """Copy Ramsey settings positionally from ``reference``.

    Used by jitter sweeps: durations come from the perturbed schedule while
    the zone settings stay at the experimenter's nominal values.
    """
    if len(events) != len(reference):
        raise ScheduleError("event lists differ in length")
    out = []
    for ev, ref in zip(events, reference):
        if ev.kind != ref.kind or ev.atom != ref.atom:
            raise ScheduleError("event lists differ in structure")
        out.append(replace(ev, setting=ref.setting) if ev.kind == "ramsey" else ev)
    return out


# ---------------------------------------------------------------------------
# generation


@dataclass(frozen=True)
class GenerationSchedule:
    """Timing and settings of the cat-generation sequence.

    Durations (seconds): tau1/tau2 are the zone-to-cavity flights, T is the
    total field free-evolution between the two cavity crossings, tR1/tR2 the
    preparing-zone crossing times.  The second atom enters the zone only
    after the first has left the cavity, so T = wait + tR2 + tau2 with
    wait >= 0.
    """

    p: float
    phi1: float
    eta0: float
    params: PhysicalParams
    m: int = 0
    tau1: float = 0.0
    tau2: float = 0.0
    T: float = 0.0
    tR1: float = 0.0
    tR2: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ScheduleError(f"p must lie in [0, 1], got {self.p}")
        if self.m < 0:
            raise ScheduleError(f"m must be a non-negative integer, got {self.m}")
        for name in ("tau1", "tau2", "T", "tR1", "tR2"):
            if getattr(self, name) < 0:
                raise ScheduleError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.wait < -1e-15:
            raise ScheduleError(
                f"atoms overlap: field gap T={self.T} is shorter than the second "
                f"atom's zone crossing plus flight ({self.tR2 + self.tau2})"
            )

    # -- derived quantities ------------------------------------------------

    @property
    def T1(self) -> float:
        """First interaction time, (4m+1) pi / 2g: a full photon swap."""
        return _single_pulse_area(self.m) / self.params.g

    @property
    def T2(self) -> float:
        """Second interaction time, 41 pi / 4g: joint timing solution."""
        return TWO_PHOTON_PULSE_AREA / self.params.g

    @property
    def wait(self) -> float:
        """Idle time between atom 1 leaving the cavity and atom 2 entering the zone."""
        return self.T - self.tR2 - self.tau2

    @property
    def atom_separation(self) -> float:
        """Launch separation: atom 2 enters the zone this long after atom 1 did."""
        return self.tR1 + self.tau1 + self.T1 + self.wait

    @property
    def theta1(self) -> float:
        return 2.0 * math.acos(math.sqrt(self.p))

    @property
    def theta2(self) -> float:
        return self.theta1 + math.pi

    @property
    def phi2(self) -> float:
        return self.phi1 + self.params.omega * (self.tau1 + self.T - self.tau2)

    def ramsey1(self) -> RamseySetting:
        return RamseySetting(self.theta1, self.phi1)

    def ramsey2(self) -> RamseySetting:
        return RamseySetting(self.theta2, self.phi2)

    # -- alternative constructors -------------------------------------------

    @classmethod
    def from_atom_separation(cls, T0: float, **kwargs) -> "GenerationSchedule":
        """Build from the launch separation T0 instead of the field gap T."""
        params: PhysicalParams = kwargs["params"]
        T1 = _single_pulse_area(kwargs.get("m", 0)) / params.g
        transit1 = kwargs.get("tR1", 0.0) + kwargs.get("tau1", 0.0) + T1
        if T0 < transit1:
            raise ScheduleError(
                f"separation T0={T0} is shorter than the first atom's transit "
                f"{transit1}; atoms would overlap in the apparatus"
            )
        wait = T0 - transit1
        T = wait + kwargs.get("tR2", 0.0) + kwargs.get("tau2", 0.0)
        return cls(T=T, **kwargs)

    @classmethod
    def from_velocities(
        cls,
        *,
        velocity1: float,
        velocity2: float,
        zone_length: float,
        zone_to_cavity: float,
        wait: float,
        **kwargs,
    ) -> "GenerationSchedule":
        """Durations from apparatus geometry: each atom's zone crossing and
        flight are distance/velocity; ``wait`` is the clock-controlled idle
        between atom 1 leaving the cavity and atom 2 entering the zone."""
        if velocity1 <= 0 or velocity2 <= 0:
            raise ScheduleError("velocities must be positive")
        tR1 = zone_length / velocity1
        tR2 = zone_length / velocity2
        tau1 = zone_to_cavity / velocity1
        tau2 = zone_to_cavity / velocity2
        return cls(
            tau1=tau1, tau2=tau2, tR1=tR1, tR2=tR2,
            T=wait + tR2 + tau2, **kwargs,
        )


def build_generation(schedule: GenerationSchedule, atoms: tuple[int, int] = (0, 1)) -> list[ProtocolEvent]:
    """Event list of the generation sequence for the given pair of atoms."""
    a1, a2 = atoms
    events = [
        ProtocolEvent("ramsey", atom=a1, duration=schedule.tR1, setting=schedule.ramsey1()),
        ProtocolEvent("free", duration=schedule.tau1),
        ProtocolEvent("cavity", atom=a1, duration=schedule.T1),
        ProtocolEvent("free", duration=schedule.wait),
        ProtocolEvent("ramsey", atom=a2, duration=schedule.tR2, setting=schedule.ramsey2()),
        ProtocolEvent("free", duration=schedule.tau2),
        ProtocolEvent("cavity", atom=a2, duration=schedule.T2),
    ]
    return _with_start_times(events)


def generation_initial_state(
    schedule: GenerationSchedule,
    layout: HilbertLayout,
    atoms: tuple[int, int] = (0, 1),
) -> QuantumState:
    """Cavity vacuum with the entangled pair N0*(|up,down> + eta0 |down,up>)."""
    if layout.atom_count < 2:
        raise ScheduleError("generation needs at least two atoms in the layout")
    a1, a2 = atoms
    amps = np.zeros(layout.dimension, dtype=np.complex128)
    norm = 1.0 / math.sqrt(1.0 + schedule.eta0**2)
    spins = [0] * layout.atom_count
    spins[a1] = 1
    amps[layout.index_of(0, spins)] = norm
    spins[a1], spins[a2] = 0, 1
    amps[layout.index_of(0, spins)] = norm * schedule.eta0
    return QuantumState(layout, amps)


def generation_gamma(schedule: GenerationSchedule) -> float:
    """Component phase gamma of the produced cat.

    The free-evolution bookkeeping contributes omega*(t_R2 - t_R1 - T_1);
    the second preparing pulse (theta_2 = theta_1 + pi) reverses the
    rotation orientation and adds a further pi.  Composing the exchange and
    rotation maps symbolically gives exactly pi + omega*(t_R2 - t_R1 - T_1),
    which the end-to-end tests confirm against a matrix-product oracle.
    """
    omega = schedule.params.omega
    return math.pi + omega * (schedule.tR2 - schedule.tR1 - schedule.T1)


def generation_target(schedule: GenerationSchedule) -> CatSpec:
    """Cat the sequence produces: weight eta0 * e^{i gamma} on the partner.

    phi = -(phi_1 + omega (tau_1 + T)), gamma from :func:`generation_gamma`.
    """
    omega = schedule.params.omega
    phi = -(schedule.phi1 + omega * (schedule.tau1 + schedule.T))
    gamma = generation_gamma(schedule)
    eta = schedule.eta0 * complex(math.cos(gamma), math.sin(gamma))
    return CatSpec(BinomialSpec(2, schedule.p, phi), eta)


def fit_cat_weight(cavity: QuantumState, base: BinomialSpec) -> complex:
    """Fitted component weight eta of a cavity state against a cat ansatz.

    For |psi> ~ |base> + eta |partner| the ratio of component overlaps
    recovers eta; used as a report diagnostic against the closed form.
    """
    a = inner_product(binomial_state(cavity.layout, base), cavity)
    b = inner_product(binomial_state(cavity.layout, base.orthogonal_partner()), cavity)
    return complex(b / a)


# ---------------------------------------------------------------------------
# distinction and coherence readout


@dataclass(frozen=True)
class DistinctionSchedule:
    """Timing for the two-probe component readout.

    p and phi identify the cat components the decoding zone is matched to;
    t1/t2 are the cavity-to-zone flights, Tprime the field free-evolution
    between the probes' cavity crossings, tRd1/tRd2 the zone crossings.
    """

    p: float
    phi: float
    params: PhysicalParams
    t1: float = 0.0
    t2: float = 0.0
    Tprime: float = 0.0
    m: int = 0
    tRd1: float = 0.0
    tRd2: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ScheduleError(f"p must lie in [0, 1], got {self.p}")
        if self.m < 0:
            raise ScheduleError(f"m must be a non-negative integer, got {self.m}")
        for name in ("t1", "t2", "Tprime", "tRd1", "tRd2"):
            if getattr(self, name) < 0:
                raise ScheduleError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.probe_gap_slack < -1e-15:
            raise ScheduleError(
                f"atoms overlap: Tprime={self.Tprime} is shorter than the first "
                "probe's path to its last zone"
            )

    @property
    def first_probe_path(self) -> float:
        """Wall clock the first probe spends between cavity exit and its last zone exit."""
        return self.t1 + self.tRd1

    @property
    def probe_gap_slack(self) -> float:
        return self.Tprime - self.first_probe_path

    @property
    def TP1(self) -> float:
        """First probe interaction: 41 pi / 4g (absorbs one photon from either component)."""
        return TWO_PHOTON_PULSE_AREA / self.params.g

    @property
    def TP2(self) -> float:
        """Second probe interaction: (4m+1) pi / 2g (drains the last photon)."""
        return _single_pulse_area(self.m) / self.params.g

    @property
    def theta_d(self) -> float:
        return 2.0 * math.acos(math.sqrt(self.p))

    @property
    def phi_d1(self) -> float:
        return -self.phi + self.params.omega * self.t1

    @property
    def phi_d2(self) -> float:
        return -self.phi + self.params.omega * (self.Tprime + self.t2)

    def decode1(self) -> RamseySetting:
        return RamseySetting(self.theta_d, self.phi_d1)

    def decode2(self) -> RamseySetting:
        return RamseySetting(self.theta_d, self.phi_d2)


def build_distinction(
    schedule: DistinctionSchedule, atoms: tuple[int, int] = (0, 1)
) -> list[ProtocolEvent]:
    """Probe sequence revealing which component the cavity holds.

    Component (p, phi) flips both probes to up; the orthogonal component
    leaves both down.  Each probe is measured right after its decoding zone.
    """
    a1, a2 = atoms
    events = [
        ProtocolEvent("cavity", atom=a1, duration=schedule.TP1),
        ProtocolEvent("free", duration=schedule.t1),
        ProtocolEvent("ramsey", atom=a1, duration=schedule.tRd1, setting=schedule.decode1()),
        ProtocolEvent("measure", atom=a1),
        ProtocolEvent("free", duration=schedule.probe_gap_slack),
        ProtocolEvent("cavity", atom=a2, duration=schedule.TP2),
        ProtocolEvent("free", duration=schedule.t2),
        ProtocolEvent("ramsey", atom=a2, duration=schedule.tRd2, setting=schedule.decode2()),
        ProtocolEvent("measure", atom=a2),
    ]
    return _with_start_times(events)


@dataclass(frozen=True)
class CoherenceSchedule(DistinctionSchedule):
    """Distinction timing extended with the coherence-decoding zone.

    gamma is the cat's component phase; t1p/t2p are the flights from the
    first decoding zone to the second, tRc1/tRc2 its crossing times.
    """

    gamma: float = 0.0
    t1p: float = 0.0
    t2p: float = 0.0
    tRc1: float = 0.0
    tRc2: float = 0.0

    def __post_init__(self):
        for name in ("t1p", "t2p", "tRc1", "tRc2"):
            if getattr(self, name) < 0:
                raise ScheduleError(f"{name} must be >= 0, got {getattr(self, name)}")
        super().__post_init__()

    @property
    def first_probe_path(self) -> float:
        return self.t1 + self.tRd1 + self.t1p + self.tRc1

    @property
    def tau_total(self) -> float:
        """Total readout path time entering the coherence-zone phase."""
        return self.Tprime + self.t1 + self.t1p + self.t2 + self.t2p

    @property
    def theta_c(self) -> float:
        return math.pi / 2.0

    @property
    def phi_c(self) -> float:
        return (self.gamma - 2.0 * self.phi + self.params.omega * self.tau_total) / 2.0

    def coherence_setting(self) -> RamseySetting:
        return RamseySetting(self.theta_c, self.phi_c)


def build_coherence(
    schedule: CoherenceSchedule, atoms: tuple[int, int] = (0, 1)
) -> list[ProtocolEvent]:
    """Probe sequence revealing the sign of the superposition.

    Parallel joint outcomes flag the + cat, antiparallel the - cat; both
    probes are detected after the coherence zone.
    """
    a1, a2 = atoms
    rc = schedule.coherence_setting()
    events = [
        ProtocolEvent("cavity", atom=a1, duration=schedule.TP1),
        ProtocolEvent("free", duration=schedule.t1),
        ProtocolEvent("ramsey", atom=a1, duration=schedule.tRd1, setting=schedule.decode1()),
        ProtocolEvent("free", duration=schedule.t1p),
        ProtocolEvent("ramsey", atom=a1, duration=schedule.tRc1, setting=rc),
        ProtocolEvent("free", duration=schedule.probe_gap_slack),
        ProtocolEvent("cavity", atom=a2, duration=schedule.TP2),
        ProtocolEvent("free", duration=schedule.t2),
        ProtocolEvent("ramsey", atom=a2, duration=schedule.tRd2, setting=schedule.decode2()),
        ProtocolEvent("free", duration=schedule.t2p),
        ProtocolEvent("ramsey", atom=a2, duration=schedule.tRc2, setting=rc),
        ProtocolEvent("measure", atom=a1),
        ProtocolEvent("measure", atom=a2),
    ]
    return _with_start_times(events)


def probe_initial_state(
    cavity: QuantumState, layout: HilbertLayout
) -> QuantumState:
    """Cavity contents tensored with all probe atoms in the ground state."""
    from .fockspace import embed_cavity

    return embed_cavity(cavity, layout)


def cavity_vacuum_probability(state: QuantumState) -> float:
    """Marginal probability of the cavity being empty."""
    k = state.layout.atom_count
    block = state.amplitudes[: 1 << k]
    return float(np.sum(np.abs(block) ** 2))


def parallel_probability(dist: dict[tuple[str, ...], float]) -> float:
    """P(up,up) + P(down,down) over a two-measurement outcome distribution."""
    return dist.get(("up", "up"), 0.0) + dist.get(("down", "down"), 0.0)

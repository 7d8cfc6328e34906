"""catqed: state-vector simulation of binomial-cat preparation and readout
in a resonant single-mode cavity.

Layers:

* :mod:`catqed.fockspace` — truncated cavity ⊗ atoms state vectors.
* :mod:`catqed.states` — generalized binomial states and their cats.
* :mod:`catqed.dynamics` — exchange pulses, Ramsey rotations, free phases,
  projective measurement.
* :mod:`catqed.protocols` — generation / distinction / coherence schedules
  and the event interpreter.
* :mod:`catqed.analysis` — timing-condition solver, velocity-jitter sweeps,
  sampled outcome statistics, lifetime feasibility.
* :mod:`catqed.cli` — config-driven runner emitting reports and data series.

The hot kernels live in a compiled extension with a numpy fallback; see
:mod:`catqed.backend`.
"""

from .backend import KERNEL_BACKEND
from .dynamics import (
    PhysicalParams,
    RamseySetting,
    branch_probabilities,
    free_evolve,
    jc_evolve,
    measure_atom,
    ramsey_rotate,
)
from .fockspace import (
    DensityMatrix,
    HilbertLayout,
    QuantumState,
    fidelity,
    inner_product,
    make_basis_state,
    mean_photon_number,
    purity,
    reduced_density,
)
from .protocols import (
    CoherenceSchedule,
    DistinctionSchedule,
    GenerationSchedule,
    ProtocolEvent,
    build_coherence,
    build_distinction,
    build_generation,
    enumerate_outcomes,
    generation_initial_state,
    generation_target,
    run_protocol,
)
from .states import BinomialSpec, CatSpec, binomial_overlap, binomial_state, cat_state

__version__ = "0.1.0"

"""Dense state vectors on a truncated cavity mode tensored with two-level atoms.

Basis convention (fixed, little-endian in the atoms): the joint label
(n, s_0, ..., s_{k-1}) with photon number ``n`` and atom levels
``s_j in {0 = down, 1 = up}`` maps to the flat index

    index = n * 2**k + sum_j s_j * 2**j .

States are value types: every operation returns a fresh vector and nothing
shares mutable buffers.
"""

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from . import tolerances
from .errors import CutoffError, LayoutError

DOWN = 0
UP = 1

#: Selector accepted by :func:`reduced_density`: the cavity mode or atom indices.
Subsystem = Union[str, int]


@dataclass(frozen=True)
class HilbertLayout:
    """Shape of the joint Hilbert space.

    ``fock_cutoff`` is the highest retained photon number, so the cavity
    factor has ``fock_cutoff + 1`` levels.
    """

    fock_cutoff: int
    atom_count: int

    def __post_init__(self):
        if self.fock_cutoff < 1:
            raise LayoutError(f"fock_cutoff must be >= 1, got {self.fock_cutoff}")
        if self.atom_count < 0:
            raise LayoutError(f"atom_count must be >= 0, got {self.atom_count}")

    @property
    def n_levels(self) -> int:
        return self.fock_cutoff + 1

    @property
    def dimension(self) -> int:
        return self.n_levels * (1 << self.atom_count)

    def index_of(self, n: int, spins: Sequence[int]) -> int:
        """Flat index of the basis label (n, spins)."""
        if not 0 <= n <= self.fock_cutoff:
            raise CutoffError(
                f"photon number {n} outside retained levels 0..{self.fock_cutoff}"
            )
        if len(spins) != self.atom_count:
            raise LayoutError(
                f"expected {self.atom_count} atom levels, got {len(spins)}"
            )
        bits = 0
        for j, s in enumerate(spins):
            if s not in (DOWN, UP):
                raise LayoutError(f"atom level must be 0 (down) or 1 (up), got {s!r}")
            bits |= s << j
        return n * (1 << self.atom_count) + bits

    def labels_of(self, index: int) -> tuple[int, tuple[int, ...]]:
        """Inverse of :meth:`index_of`."""
        if not 0 <= index < self.dimension:
            raise LayoutError(f"index {index} outside dimension {self.dimension}")
        bits = index & ((1 << self.atom_count) - 1)
        n = index >> self.atom_count
        spins = tuple((bits >> j) & 1 for j in range(self.atom_count))
        return n, spins

    def check_atom(self, atom: int) -> None:
        if not 0 <= atom < self.atom_count:
            raise LayoutError(f"atom index {atom} outside 0..{self.atom_count - 1}")


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Normalized complex amplitude vector over a :class:`HilbertLayout`."""

    layout: HilbertLayout
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.layout.dimension,):
            raise LayoutError(
                f"amplitude vector has shape {amps.shape}, "
                f"layout dimension is {self.layout.dimension}"
            )
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def top_level_probability(self) -> float:
        """Probability in the highest retained Fock level (cutoff leakage)."""
        k = self.layout.atom_count
        top = self.amplitudes[self.layout.fock_cutoff << k :]
        return float(np.sum(np.abs(top) ** 2))

    def probability_of(self, n: int, spins: Sequence[int]) -> float:
        return float(abs(self.amplitudes[self.layout.index_of(n, spins)]) ** 2)

    def copy_amplitudes(self) -> np.ndarray:
        return self.amplitudes.copy()


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace matrix on a subsystem of the joint space."""

    dimension: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.complex128)
        if m.shape != (self.dimension, self.dimension):
            raise LayoutError(
                f"entries have shape {m.shape}, expected square of size {self.dimension}"
            )
        object.__setattr__(self, "entries", m)

    def validate(self, tol: tolerances.Tolerances = tolerances.DEFAULT) -> None:
        m = self.entries
        if np.max(np.abs(m - m.conj().T)) > tol.norm:
            raise LayoutError("density matrix is not Hermitian within tolerance")
        if abs(np.trace(m).real - 1.0) > tol.norm:
            raise LayoutError("density matrix trace differs from 1")
        lo = float(np.min(np.linalg.eigvalsh(m)))
        if lo < tol.eigenvalue_floor:
            raise LayoutError(f"density matrix has eigenvalue {lo} below floor")


def make_basis_state(layout: HilbertLayout, n: int, spins: Sequence[int]) -> QuantumState:
    """Unit vector on the basis label (n, spins)."""
    amps = np.zeros(layout.dimension, dtype=np.complex128)
    amps[layout.index_of(n, spins)] = 1.0
    return QuantumState(layout, amps)


def inner_product(a: QuantumState, b: QuantumState) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    if a.layout != b.layout:
        raise LayoutError(f"layout mismatch: {a.layout} vs {b.layout}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: QuantumState, b: QuantumState) -> float:
    """|<a|b>|^2 for pure states."""
    return float(abs(inner_product(a, b)) ** 2)


def _tensor_shape(layout: HilbertLayout) -> tuple[int, ...]:
    # C-order axes: (cavity, atom_{k-1}, ..., atom_0); consistent with the
    # little-endian flat index.
    return (layout.n_levels,) + (2,) * layout.atom_count


def _axis_of(layout: HilbertLayout, sub: Subsystem) -> int:
    if sub == "cavity":
        return 0
    layout.check_atom(int(sub))
    return 1 + (layout.atom_count - 1 - int(sub))


def reduced_density(state: QuantumState, keep: Iterable[Subsystem]) -> DensityMatrix:
    """Partial trace onto the selected subsystems.

    ``keep`` lists the cavity (``"cavity"``) and/or atom indices.  The
    reduced matrix indexes kept subsystems with the same convention as the
    full space (cavity most significant, atoms little-endian).
    """
    keep = list(keep)
    if not keep:
        raise LayoutError("empty subsystem selector")
    if len(set(keep)) != len(keep):
        raise LayoutError(f"duplicate entries in selector {keep}")
    layout = state.layout
    keep_axes = sorted(_axis_of(layout, s) for s in keep)
    all_axes = range(1 + layout.atom_count)
    traced = [ax for ax in all_axes if ax not in keep_axes]
    psi = state.amplitudes.reshape(_tensor_shape(layout))
    rho = np.tensordot(psi, psi.conj(), axes=(traced, traced))
    dim = int(np.prod([psi.shape[ax] for ax in keep_axes]))
    return DensityMatrix(dim, rho.reshape(dim, dim))


def purity(rho: DensityMatrix) -> float:
    """trace(rho^2); equals 1 exactly for pure states, 1/d when maximally mixed."""
    return float(np.sum(np.abs(rho.entries) ** 2))


def mean_photon_number(state: QuantumState) -> float:
    """Expectation of the photon number operator."""
    layout = state.layout
    probs = np.abs(state.amplitudes.reshape(layout.n_levels, -1)) ** 2
    return float(np.arange(layout.n_levels) @ probs.sum(axis=1))


def embed_cavity(
    cavity: QuantumState, layout: HilbertLayout, spins: Sequence[int] | None = None
) -> QuantumState:
    """Tensor a cavity-only state with a product atom configuration.

    ``spins`` defaults to all atoms down.
    """
    if cavity.layout.atom_count != 0:
        raise LayoutError("embed_cavity expects a cavity-only state")
    if cavity.layout.fock_cutoff != layout.fock_cutoff:
        raise LayoutError("fock cutoffs differ between cavity state and target layout")
    if spins is None:
        spins = [DOWN] * layout.atom_count
    bits = layout.index_of(0, spins)
    amps = np.zeros(layout.dimension, dtype=np.complex128)
    amps[bits :: 1 << layout.atom_count] = cavity.amplitudes
    return QuantumState(layout, amps)


def cavity_state_vector(rho_or_state, layout_cavity: HilbertLayout) -> QuantumState:
    """Dominant eigenvector of a cavity density matrix, as a pure state.

    Convenience for diagnostics on nearly-pure reduced states.
    """
    if isinstance(rho_or_state, QuantumState):
        return rho_or_state
    w, v = np.linalg.eigh(rho_or_state.entries)
    vec = v[:, int(np.argmax(w))]
    return QuantumState(layout_cavity, vec)

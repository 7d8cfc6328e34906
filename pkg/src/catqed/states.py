"""Generalized binomial field states and their two-component superpositions.

A binomial state with maximum photon number N, single-photon probability p
and mean phase phi has Fock amplitudes

    c_n = sqrt( C(N, n) p^n (1-p)^(N-n) ) * e^{i n phi},   n = 0..N .

The pair (N, p, phi) and (N, 1-p, pi+phi) is always orthogonal, which makes
an equal-footing superposition of the two a cat of perfectly distinguishable
components.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import CutoffError, LayoutError
from .fockspace import HilbertLayout, QuantumState, inner_product

__all__ = [
    "BinomialSpec",
    "CatSpec",
    "binomial_amplitudes",
    "binomial_state",
    "binomial_overlap",
    "cat_state",
    "component_projection",
]


@dataclass(frozen=True)
class BinomialSpec:
    """Parameters (N, p, phi) of a generalized binomial state."""

    N: int
    p: float
    phi: float = 0.0

    def __post_init__(self):
        if self.N < 0:
            raise ValueError(f"N must be >= 0, got {self.N}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")

    def orthogonal_partner(self) -> "BinomialSpec":
        """The unique orthogonal binomial state with the same N."""
        return BinomialSpec(self.N, 1.0 - self.p, math.pi + self.phi)


@dataclass(frozen=True)
class CatSpec:
    """Superposition N_eta * (|base> + eta |partner>) with complex weight eta.

    ``partner`` is the orthogonal binomial state of ``base``; orthogonality
    makes the normalization factor exactly 1/sqrt(1 + |eta|^2).
    """

    base: BinomialSpec
    eta: complex

    @property
    def normalization(self) -> float:
        return 1.0 / math.sqrt(1.0 + abs(self.eta) ** 2)


def binomial_amplitudes(N: int, p: float, phi: float) -> np.ndarray:
    """Fock amplitudes c_0..c_N of the binomial state.

    Endpoints p = 0, 1 are taken as exact limits (0^0 := 1); interior p uses
    log-space so the construction stays stable for large N.
    """
    if p == 0.0:
        c = np.zeros(N + 1, dtype=np.complex128)
        c[0] = 1.0
        return c
    if p == 1.0:
        c = np.zeros(N + 1, dtype=np.complex128)
        c[N] = np.exp(1j * N * phi)
        return c
    n = np.arange(N + 1, dtype=float)
    log_comb = (
        math.lgamma(N + 1)
        - np.array([math.lgamma(k + 1) + math.lgamma(N - k + 1) for k in range(N + 1)])
    )
    log_p2 = log_comb + n * math.log(p) + (N - n) * math.log1p(-p)
    return np.exp(0.5 * log_p2) * np.exp(1j * n * phi)


def binomial_state(layout: HilbertLayout, spec: BinomialSpec) -> QuantumState:
    """Cavity-only binomial state; atoms are tensored on by the caller."""
    if layout.atom_count != 0:
        raise LayoutError("binomial_state builds the cavity factor only; "
                          "use fockspace.embed_cavity to add atoms")
    if spec.N > layout.fock_cutoff:
        raise CutoffError(f"N={spec.N} exceeds fock_cutoff {layout.fock_cutoff}")
    amps = np.zeros(layout.dimension, dtype=np.complex128)
    amps[: spec.N + 1] = binomial_amplitudes(spec.N, spec.p, spec.phi)
    return QuantumState(layout, amps)


def binomial_overlap(a: BinomialSpec, b: BinomialSpec) -> complex:
    """Closed-form <a|b> for equal N:

        [ sqrt((1-p_a)(1-p_b)) + sqrt(p_a p_b) e^{i (phi_b - phi_a)} ]^N .
    """
    if a.N != b.N:
        raise ValueError(f"overlap undefined for N={a.N} vs N={b.N}")
    base = math.sqrt((1.0 - a.p) * (1.0 - b.p)) + math.sqrt(a.p * b.p) * np.exp(
        1j * (b.phi - a.phi)
    )
    return complex(base**a.N)


def cat_state(layout: HilbertLayout, spec: CatSpec) -> QuantumState:
    """Normalized cat N_eta * (|N,p,phi> + eta |N,1-p,pi+phi>)."""
    a = binomial_state(layout, spec.base)
    b = binomial_state(layout, spec.base.orthogonal_partner())
    amps = spec.normalization * (a.amplitudes + spec.eta * b.amplitudes)
    return QuantumState(layout, amps)


def component_projection(state: QuantumState, spec: BinomialSpec) -> float:
    """Probability weight |<N,p,phi|state>|^2 of one binomial component."""
    ref = binomial_state(state.layout, spec)
    return float(abs(inner_product(ref, state)) ** 2)

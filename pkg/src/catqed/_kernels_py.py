"""Pure-numpy implementation of the hot state-vector kernels.

The compiled extension ``catqed._kernels`` exports the same four entry
points; :mod:`catqed.backend` selects whichever is importable.  All kernels
mutate ``amps`` in place and assume the flat index convention

    index = n * 2**n_atoms + bits,

where ``n`` is the photon number and bit ``j`` of ``bits`` holds atom ``j``
(1 = up).  Callers are responsible for copying.
"""

import numpy as np


def _atom_view(amps: np.ndarray, n_levels: int, n_atoms: int, atom: int) -> np.ndarray:
    """Reshape to (n, high bits, atom bit, low bits)."""
    hi = 1 << (n_atoms - atom - 1)
    lo = 1 << atom
    return amps.reshape(n_levels, hi, 2, lo)


def jc_evolve(amps: np.ndarray, n_levels: int, n_atoms: int, atom: int, gt: float) -> None:
    """Resonant exchange between ``atom`` and the cavity for pulse area ``gt``.

    Acts as a rotation by angle gt*sqrt(n+1) on each pair
    (|up, n>, |down, n+1>):  up -> cos*up - sin*down',  down' -> sin*up + cos*down'.
    """
    b = _atom_view(amps, n_levels, n_atoms, atom)
    up = b[:-1, :, 1, :]   # |up, n>,      n = 0 .. n_levels-2
    dn = b[1:, :, 0, :]    # |down, n+1>
    ang = gt * np.sqrt(np.arange(1, n_levels, dtype=float))
    c = np.cos(ang)[:, None, None]
    s = np.sin(ang)[:, None, None]
    new_up = c * up + s * dn
    new_dn = -s * up + c * dn
    up[...] = new_up
    dn[...] = new_dn


def ramsey_rotate(
    amps: np.ndarray, n_levels: int, n_atoms: int, atom: int, theta: float, phi: float
) -> None:
    """Classical-field rotation of one atom.

    up -> cos(theta/2) up - e^{i phi} sin(theta/2) down
    down -> e^{-i phi} sin(theta/2) up + cos(theta/2) down
    """
    b = _atom_view(amps, n_levels, n_atoms, atom)
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0)
    up = b[:, :, 1, :].copy()
    dn = b[:, :, 0, :]
    b[:, :, 1, :] = c * up + np.exp(-1j * phi) * s * dn
    b[:, :, 0, :] = -np.exp(1j * phi) * s * up + c * dn


def free_evolve(
    amps: np.ndarray,
    n_levels: int,
    n_atoms: int,
    omega_t: float,
    include_cavity: bool,
    atom_mask: int,
) -> None:
    """Free phases: e^{-i n omega t} on |n> and e^{-i omega t} on each selected up atom.

    The down level and the vacuum are the phase reference (gauge choice).
    """
    dim_atoms = 1 << n_atoms
    counts = np.zeros(dim_atoms, dtype=float)
    if atom_mask:
        bits = np.arange(dim_atoms)
        for j in range(n_atoms):
            if atom_mask & (1 << j):
                counts += (bits >> j) & 1
    levels = np.arange(n_levels, dtype=float) if include_cavity else np.zeros(n_levels)
    a = amps.reshape(n_levels, dim_atoms)
    a *= np.exp(-1j * omega_t * (levels[:, None] + counts[None, :]))


def up_probability(amps: np.ndarray, n_levels: int, n_atoms: int, atom: int) -> float:
    """Total probability of finding ``atom`` in the up level."""
    b = _atom_view(amps, n_levels, n_atoms, atom)
    return float(np.sum(np.abs(b[:, :, 1, :]) ** 2))

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled state-vector kernels.

Mirrors catqed._kernels_py (same signatures, same index convention:
index = n * 2**n_atoms + bits, bit j = atom j, 1 = up).  Kernels mutate
the amplitude buffer in place.
"""

from libc.math cimport cos, sin, sqrt


def jc_evolve(double complex[::1] amps, int n_levels, int n_atoms, int atom, double gt):
    cdef Py_ssize_t dim_atoms = 1 << n_atoms
    cdef Py_ssize_t lo = 1 << atom
    cdef Py_ssize_t hi = dim_atoms >> (atom + 1)
    cdef Py_ssize_t n, h, l, i_up, i_dn, base_up, base_dn
    cdef double c, s, ang
    cdef double complex a_up, a_dn
    for n in range(n_levels - 1):
        ang = gt * sqrt(n + 1.0)
        c = cos(ang)
        s = sin(ang)
        for h in range(hi):
            base_up = n * dim_atoms + (h << (atom + 1)) + lo
            base_dn = (n + 1) * dim_atoms + (h << (atom + 1))
            for l in range(lo):
                i_up = base_up + l
                i_dn = base_dn + l
                a_up = amps[i_up]
                a_dn = amps[i_dn]
                amps[i_up] = c * a_up + s * a_dn
                amps[i_dn] = -s * a_up + c * a_dn


def ramsey_rotate(double complex[::1] amps, int n_levels, int n_atoms, int atom,
                  double theta, double phi):
    cdef Py_ssize_t dim_atoms = 1 << n_atoms
    cdef Py_ssize_t lo = 1 << atom
    cdef Py_ssize_t hi = dim_atoms >> (atom + 1)
    cdef Py_ssize_t n, h, l, i_up, i_dn
    cdef double c = cos(theta / 2.0)
    cdef double s = sin(theta / 2.0)
    cdef double complex em = cos(phi) - 1j * sin(phi)   # e^{-i phi}
    cdef double complex ep = cos(phi) + 1j * sin(phi)
    cdef double complex a_up, a_dn
    for n in range(n_levels):
        for h in range(hi):
            for l in range(lo):
                i_dn = n * dim_atoms + (h << (atom + 1)) + l
                i_up = i_dn + lo
                a_up = amps[i_up]
                a_dn = amps[i_dn]
                amps[i_up] = c * a_up + em * s * a_dn
                amps[i_dn] = -ep * s * a_up + c * a_dn


def free_evolve(double complex[::1] amps, int n_levels, int n_atoms,
                double omega_t, bint include_cavity, int atom_mask):
    cdef Py_ssize_t dim_atoms = 1 << n_atoms
    cdef Py_ssize_t n, b, j
    cdef int count
    cdef double phase
    for n in range(n_levels):
        for b in range(dim_atoms):
            count = 0
            for j in range(n_atoms):
                if (atom_mask >> j) & 1 and (b >> j) & 1:
                    count += 1
            phase = omega_t * ((n if include_cavity else 0) + count)
            if phase != 0.0:
                amps[n * dim_atoms + b] = amps[n * dim_atoms + b] * (cos(phase) - 1j * sin(phase))


def up_probability(double complex[::1] amps, int n_levels, int n_atoms, int atom):
    cdef Py_ssize_t dim_atoms = 1 << n_atoms
    cdef Py_ssize_t lo = 1 << atom
    cdef Py_ssize_t hi = dim_atoms >> (atom + 1)
    cdef Py_ssize_t n, h, l, i
    cdef double total = 0.0
    cdef double complex a
    for n in range(n_levels):
        for h in range(hi):
            for l in range(lo):
                i = n * dim_atoms + (h << (atom + 1)) + lo + l
                a = amps[i]
                total += a.real * a.real + a.imag * a.imag
    return total

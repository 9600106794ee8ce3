# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel measuring the angular section of a polyhedral cone.

For a complex direction w and a polyhedral cone {v : a_i.v >(=) 0} the job is
to measure {phi in [0, 2pi) : cos(phi) u + sin(phi) u' in cone}, where
u, u' are the real vectors underlying w and i*w.  With p_i = a_i.u and
q_i = a_i.u' each constraint reduces to p_i cos(phi) + q_i sin(phi) >(=) 0,
so the scan is a tight double loop over angles and constraints.
"""

import numpy as np

from libc.math cimport cos, sin, M_PI


cdef inline bint _member(double phi, const double[:] p, const double[:] q,
                         const unsigned char[:] strict, Py_ssize_t m) noexcept nogil:
    cdef double c = cos(phi)
    cdef double s = sin(phi)
    cdef double val
    cdef Py_ssize_t i
    for i in range(m):
        val = p[i] * c + q[i] * s
        if strict[i]:
            if val <= 0.0:
                return 0
        else:
            if val < 0.0:
                return 0
    return 1


cdef double _transition(double lo, double hi, bint lo_member,
                        const double[:] p, const double[:] q,
                        const unsigned char[:] strict, Py_ssize_t m,
                        double tol) noexcept nogil:
    # membership(lo) == lo_member and membership(hi) == (not lo_member)
    cdef double mid
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _member(mid, p, q, strict, m) == lo_member:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


cdef double _arc_single(const double[:] p, const double[:] q,
                        const unsigned char[:] strict,
                        unsigned char[:] mask, int resolution,
                        double tol) noexcept nogil:
    cdef Py_ssize_t m = p.shape[0]
    cdef int j, prev, e, nxt
    cdef int npass = 0
    cdef double step = 2.0 * M_PI / resolution
    cdef double total = 0.0
    cdef double left, right

    for j in range(resolution):
        mask[j] = _member(j * step, p, q, strict, m)
        if mask[j]:
            npass += 1
    if npass == 0:
        return 0.0
    if npass == resolution:
        return 2.0 * M_PI

    for j in range(resolution):
        prev = j - 1 if j > 0 else resolution - 1
        if mask[j] and not mask[prev]:
            # run starts at sample j; walk to its end
            e = j
            nxt = e + 1 if e + 1 < resolution else 0
            while mask[nxt]:
                e = nxt
                nxt = e + 1 if e + 1 < resolution else 0
            left = _transition((j - 1) * step, j * step, 0, p, q, strict, m, tol)
            right = _transition(e * step, (e + 1) * step, 1, p, q, strict, m, tol)
            if right < left:
                right += 2.0 * M_PI
            total += right - left
    return total


def arc_measure(double[:] p, double[:] q, unsigned char[:] strict,
                int resolution, double tol=1e-6):
    """Arc length of {phi : all_i p_i cos phi + q_i sin phi >(=) 0}."""
    mask = np.empty(resolution, dtype=np.uint8)
    cdef unsigned char[:] mask_view = mask
    cdef double out
    with nogil:
        out = _arc_single(p, q, strict, mask_view, resolution, tol)
    return out


def arc_measure_batch(double[:, :] P, double[:, :] Q, unsigned char[:] strict,
                      int resolution, double tol=1e-6):
    """Vector of arc lengths, one per row of (P, Q)."""
    cdef Py_ssize_t nsamples = P.shape[0]
    out = np.empty(nsamples, dtype=np.float64)
    mask = np.empty(resolution, dtype=np.uint8)
    cdef double[:] out_view = out
    cdef unsigned char[:] mask_view = mask
    cdef Py_ssize_t s
    with nogil:
        for s in range(nsamples):
            out_view[s] = _arc_single(P[s], Q[s], strict, mask_view,
                                      resolution, tol)
    return out

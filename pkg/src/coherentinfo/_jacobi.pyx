# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi eigensolver for small complex Hermitian matrices."""
import numpy as np

from libc.math cimport sqrt, fabs


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef int _sweep_loop(double complex[:, ::1] a, double complex[:, ::1] v,
                     double tol, int max_sweeps) nogil:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, p, q
    cdef int sweep
    cdef double off, scale, mag, tau, t, c, s
    cdef double complex apq, ph, gqp, gqq, xp, xq

    scale = 0.0
    for p in range(n):
        for q in range(n):
            scale += cabs2(a[p, q])
    scale = sqrt(scale)
    if scale < 1.0:
        scale = 1.0

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * cabs2(a[p, q])
        if sqrt(off) <= tol * scale:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = sqrt(cabs2(apq))
                if mag == 0.0:
                    continue
                # phase that makes the pivot real, then a real plane rotation
                ph = (apq / mag).conjugate()
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                gqp = -s * ph
                gqq = c * ph
                for i in range(n):
                    xp = a[i, p]
                    xq = a[i, q]
                    a[i, p] = xp * c + xq * gqp
                    a[i, q] = xp * s + xq * gqq
                for i in range(n):
                    xp = a[p, i]
                    xq = a[q, i]
                    a[p, i] = c * xp + gqp.conjugate() * xq
                    a[q, i] = s * xp + gqq.conjugate() * xq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for i in range(n):
                    xp = v[i, p]
                    xq = v[i, q]
                    v[i, p] = xp * c + xq * gqp
                    v[i, q] = xp * s + xq * gqq
    return -1


def jacobi_eigh(a, double tol=1e-12, int max_sweeps=100):
    """Return ``(values, vectors, sweeps)``; ``sweeps == -1`` if not converged.

    Values come back unsorted, in diagonal order.
    """
    cdef double complex[:, ::1] work = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = work.shape[0]
    vecs = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] vv = vecs
    cdef int sweeps
    with nogil:
        sweeps = _sweep_loop(work, vv, tol, max_sweeps)
    w = np.asarray(work).diagonal().real.copy()
    return w, vecs, sweeps

"""Pure-Python cyclic Jacobi eigensolver; fallback for the compiled kernel.

Same algorithm and return convention as ``_jacobi.pyx``.  The working
matrix lives in nested lists of Python complex numbers, which is faster
than scalar indexing into numpy arrays for n <= 8.
"""
from math import sqrt

import numpy as np


def jacobi_eigh(a, tol=1e-12, max_sweeps=100):
    """Return ``(values, vectors, sweeps)``; ``sweeps == -1`` if not converged."""
    n = len(a)
    w = [[complex(a[i][j]) for j in range(n)] for i in range(n)]
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]

    scale = max(1.0, sqrt(sum(abs(z) ** 2 for row in w for z in row)))
    sweeps = -1
    for sweep in range(max_sweeps + 1):
        off = sum(2.0 * abs(w[p][q]) ** 2 for p in range(n - 1) for q in range(p + 1, n))
        if sqrt(off) <= tol * scale:
            sweeps = sweep
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p][q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                ph = (apq / mag).conjugate()
                tau = (w[q][q].real - w[p][p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                gqp = -s * ph
                gqq = c * ph
                for row in w:
                    xp, xq = row[p], row[q]
                    row[p] = xp * c + xq * gqp
                    row[q] = xp * s + xq * gqq
                rp, rq = w[p], w[q]
                cgqp, cgqq = gqp.conjugate(), gqq.conjugate()
                for i in range(n):
                    xp, xq = rp[i], rq[i]
                    rp[i] = c * xp + cgqp * xq
                    rq[i] = s * xp + cgqq * xq
                rp[q] = 0j
                rq[p] = 0j
                rp[p] = complex(rp[p].real)
                rq[q] = complex(rq[q].real)
                for row in v:
                    xp, xq = row[p], row[q]
                    row[p] = xp * c + xq * gqp
                    row[q] = xp * s + xq * gqq

    values = np.array([w[i][i].real for i in range(n)])
    return values, np.array(v, dtype=np.complex128), sweeps

"""Dense complex linear algebra for the small matrices used throughout.

Matrices are plain 2-D numpy arrays.  Dimensions never exceed ~16, so
everything here is dense and direct.

The Hermitian eigensolver is a cyclic Jacobi iteration.  A compiled
kernel (Cython) is used when it was built; otherwise an equivalent
pure-Python kernel is selected at import.  Set the environment variable
``COHERENTINFO_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os
from typing import Literal, NamedTuple

import numpy as np

from .errors import DimMismatch, NoConvergence, NotHermitian, NotPSD, NotSquare
from . import _jacobi_py

if os.environ.get("COHERENTINFO_PURE_PYTHON", "") not in ("", "0"):
    _kernel = _jacobi_py.jacobi_eigh
    BACKEND = "python"
else:
    try:
        from ._jacobi import jacobi_eigh as _kernel
        BACKEND = "compiled"
    except ImportError:  # extension not built
        _kernel = _jacobi_py.jacobi_eigh
        BACKEND = "python"

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
PSD_TOL = 1e-10


class EigDecomposition(NamedTuple):
    """Eigenvalues in descending order and matching orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray


def _square(m) -> np.ndarray:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise NotSquare(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def hermiticity_deviation(m) -> float:
    a = _square(m)
    return float(np.max(np.abs(a - a.conj().T)))


def hermitian_eig(m, tol: float = PSD_TOL, kernel=None) -> EigDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Square matrix with ``max|m - m^H| <= tol``.
    tol : float
        Hermiticity tolerance.  The matrix is symmetrized before iterating.
    kernel : callable, optional
        Override the selected Jacobi kernel (used by tests and benchmarks).

    Returns
    -------
    EigDecomposition
        ``values`` sorted descending, ``vectors`` with matching columns.
    """
    a = _square(m).astype(np.complex128)
    dev = hermiticity_deviation(a)
    if dev > tol:
        raise NotHermitian(f"Hermiticity deviation {dev:.3e} exceeds {tol:.1e}")
    a = (a + a.conj().T) / 2
    run = kernel or _kernel
    w, v, sweeps = run(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    order = np.argsort(-w, kind="stable")
    return EigDecomposition(np.asarray(w)[order], np.asarray(v)[:, order])


def eigvalsh(m, tol: float = PSD_TOL) -> np.ndarray:
    return hermitian_eig(m, tol).values


def matrix_exp(m) -> np.ndarray:
    """Matrix exponential by scaling and squaring of a truncated Taylor series.

    The zero matrix maps to the identity exactly.
    """
    a = _square(m)
    n = a.shape[0]
    dtype = np.result_type(a.dtype, np.float64)
    eye = np.eye(n, dtype=dtype)
    norm = float(np.abs(a).sum(axis=0).max())
    if norm == 0.0:
        return eye
    # bring the 1-norm below 1/2; 30 terms is then far past double precision
    squarings = max(0, int(np.ceil(np.log2(norm))) + 1)
    b = a.astype(dtype) / 2.0**squarings
    result = eye.copy()
    term = eye
    for k in range(1, 30):
        term = term @ b / k
        result = result + term
        if np.abs(term).max() <= 1e-18 * np.abs(result).max():
            break
    for _ in range(squarings):
        result = result @ result
    return result


def kron(a, b) -> np.ndarray:
    """Kronecker product, row index ``r_a * rows(b) + r_b``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2:
        raise DimMismatch("kron expects two matrices")
    return np.kron(a, b)


def partial_trace(m, dims: tuple[int, int], keep: Literal["first", "second"]) -> np.ndarray:
    """Trace out one factor of a bipartite operator on ``C^d1 (x) C^d2``."""
    a = _square(m)
    d1, d2 = dims
    if a.shape[0] != d1 * d2:
        raise DimMismatch(f"matrix side {a.shape[0]} != {d1}*{d2}")
    t = a.reshape(d1, d2, d1, d2)
    if keep == "first":
        return np.einsum("ikjk->ij", t)
    if keep == "second":
        return np.einsum("kikj->ij", t)
    raise ValueError(f"keep must be 'first' or 'second', not {keep!r}")


def clip_psd_values(values: np.ndarray, tol: float = PSD_TOL) -> np.ndarray:
    """Zero eigenvalues in ``[-tol, 0)``; anything below ``-tol`` is an error."""
    values = np.asarray(values, dtype=float)
    if values.size and values.min() < -tol:
        raise NotPSD(f"eigenvalue {values.min():.3e} below -{tol:.1e}")
    return np.where(values < 0.0, 0.0, values)


def matrix_power_psd(rho, power: float, tol: float = PSD_TOL) -> np.ndarray:
    values, vectors = hermitian_eig(rho, tol)
    values = clip_psd_values(values, tol)
    return (vectors * values**power) @ vectors.conj().T


def matrix_quarter_power(rho, tol: float = PSD_TOL) -> np.ndarray:
    """Hermitian PSD fourth root, rho**(1/4)."""
    return matrix_power_psd(rho, 0.25, tol)

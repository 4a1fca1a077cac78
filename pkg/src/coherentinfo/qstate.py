"""Density matrices, von Neumann entropy and the qubit operator basis.

The qubit operator basis is ordered ``(I, sigma_3, sigma_1, sigma_2)``
everywhere in the package; the Liouvillian of the driven, dephased
two-level atom is written in that order.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import numkit
from .errors import BlochNormExceeded, DimMismatch, NotNormalized

STATE_TOL = 1e-10
ENTROPY_FLOOR = 1e-12

IDENTITY = np.eye(2, dtype=np.complex128)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)
# (I, s3, s1, s2) -- not the textbook (s1, s2, s3) order
QUBIT_OPERATOR_BASIS = (IDENTITY, SIGMA_3, SIGMA_1, SIGMA_2)


class QubitBloch(NamedTuple):
    """Coordinates of ``rho = (I + r1 s3 + r2 s1 + r3 s2) / 2``."""

    r1: float
    r2: float
    r3: float


def validate_density(rho, tol: float = STATE_TOL) -> np.ndarray:
    """Return ``rho`` as a complex array after checking it is a density matrix.

    Raises NotSquare, NotHermitian, NotNormalized or NotPSD.
    """
    a = numkit._square(rho).astype(np.complex128)
    tr = np.trace(a)
    if abs(tr - 1.0) > tol:
        raise NotNormalized(f"trace {tr:.12g} differs from 1")
    values = numkit.eigvalsh(a, tol)
    numkit.clip_psd_values(values, tol)
    return a


def entropy_of_spectrum(values, floor: float = ENTROPY_FLOOR) -> float:
    """``-sum p log2 p`` with eigenvalues below ``floor`` treated as zero."""
    p = np.asarray(values, dtype=float)
    p = p[p > floor]
    return float(-(p * np.log2(p)).sum()) + 0.0


def von_neumann_entropy(rho, tol: float = STATE_TOL) -> float:
    """Von Neumann entropy in bits."""
    a = validate_density(rho, tol)
    values = numkit.clip_psd_values(numkit.eigvalsh(a, tol), tol)
    return entropy_of_spectrum(values)


def bloch_to_density(b: QubitBloch) -> np.ndarray:
    r1, r2, r3 = b
    norm2 = r1 * r1 + r2 * r2 + r3 * r3
    if norm2 > 1.0 + STATE_TOL:
        raise BlochNormExceeded(f"|r|^2 = {norm2:.12g} > 1")
    return (IDENTITY + r1 * SIGMA_3 + r2 * SIGMA_1 + r3 * SIGMA_2) / 2


def density_to_bloch(rho) -> QubitBloch:
    a = np.asarray(rho)
    if a.shape != (2, 2):
        raise DimMismatch(f"Bloch coordinates need a qubit, got shape {a.shape}")
    return QubitBloch(*(float(np.trace(a @ s).real) for s in (SIGMA_3, SIGMA_1, SIGMA_2)))


def conjugate_state(rho) -> np.ndarray:
    """Entrywise complex conjugate in the computational basis."""
    return np.conj(np.asarray(rho, dtype=np.complex128))


def qubit_state(rho11: float, rho12: complex = 0.0) -> np.ndarray:
    """Qubit density matrix ``[[rho11, rho12], [rho12*, 1 - rho11]]``.

    Index 0 is the lower (ground) level throughout the package.
    """
    rho = np.array([[rho11, rho12], [np.conj(rho12), 1.0 - rho11]], dtype=np.complex128)
    return validate_density(rho)


def pure_state(vector) -> np.ndarray:
    psi = np.asarray(vector, dtype=np.complex128)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def maximally_mixed(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128) / dim


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary (QR of a Ginibre matrix with phase fix)."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random density matrix from the induced (Ginibre) measure."""
    k = dim if rank is None else rank
    g = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real

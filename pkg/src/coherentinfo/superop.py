"""Superoperators stored as block families ``s_kl = S(|k><l|)``.

A channel acts as ``S(X) = sum_kl <k|X|l> s_kl`` where ``|k>`` runs over
an orthonormal input basis (the computational basis unless stated).
The block operator ``(s_kl)`` assembled with ``(k, l)`` as block position
is the Choi matrix; complete positivity is its positive semidefiniteness
and trace preservation is ``Tr s_kl = delta_kl``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import numkit, qstate
from .errors import CPViolated, DimMismatch, NotProjector, NotTP, NotUnitary

CHANNEL_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Superoperator:
    """Linear map from operators on ``C^dim_in`` to operators on ``C^dim_out``.

    ``blocks[k, l]`` is the ``dim_out x dim_out`` image of ``|b_k><b_l|``
    where ``b_k`` is column ``k`` of ``basis_in``.
    """

    blocks: np.ndarray
    basis_in: np.ndarray | None = None

    def __post_init__(self):
        b = np.array(self.blocks, dtype=np.complex128)
        if b.ndim != 4 or b.shape[0] != b.shape[1] or b.shape[2] != b.shape[3]:
            raise DimMismatch(f"blocks must have shape (din, din, dout, dout), got {b.shape}")
        b.setflags(write=False)
        object.__setattr__(self, "blocks", b)
        if self.basis_in is not None:
            basis = np.array(self.basis_in, dtype=np.complex128)
            if basis.shape != (b.shape[0], b.shape[0]):
                raise DimMismatch("basis_in must be dim_in x dim_in")
            if not np.allclose(basis.conj().T @ basis, np.eye(b.shape[0]), atol=CHANNEL_TOL):
                raise DimMismatch("basis_in columns are not orthonormal")
            basis.setflags(write=False)
            object.__setattr__(self, "basis_in", basis)

    @property
    def dim_in(self) -> int:
        return self.blocks.shape[0]

    @property
    def dim_out(self) -> int:
        return self.blocks.shape[2]

    def computational_blocks(self) -> np.ndarray:
        """Blocks re-expressed in the computational input basis."""
        if self.basis_in is None:
            return self.blocks
        # |i> = sum_k <b_k|i> |b_k>
        c = self.basis_in.conj()
        return np.einsum("ik,jl,klab->ijab", c, c.conj(), self.blocks)

    def __call__(self, x) -> np.ndarray:
        """Linear action on an arbitrary ``dim_in x dim_in`` operator."""
        x = np.asarray(x, dtype=np.complex128)
        if x.shape != (self.dim_in, self.dim_in):
            raise DimMismatch(f"operator shape {x.shape} does not match dim_in={self.dim_in}")
        if self.basis_in is not None:
            x = self.basis_in.conj().T @ x @ self.basis_in
        return np.einsum("kl,klab->ab", x, self.blocks)

    def choi(self) -> np.ndarray:
        """Block operator ``(s_kl)`` in the computational input basis, unnormalized."""
        b = self.computational_blocks()
        n = self.dim_in * self.dim_out
        return b.transpose(0, 2, 1, 3).reshape(n, n)

    def allclose(self, other: "Superoperator", atol: float = 1e-12) -> bool:
        return (
            self.dim_in == other.dim_in
            and self.dim_out == other.dim_out
            and np.allclose(self.computational_blocks(), other.computational_blocks(), rtol=0, atol=atol)
        )


@dataclass(frozen=True)
class CPTPReport:
    cp: bool
    tp: bool
    min_choi_eig: float
    max_trace_dev: float


def apply(s: Superoperator, rho) -> np.ndarray:
    """Apply a channel to a density matrix."""
    rho = qstate.validate_density(rho)
    if rho.shape[0] != s.dim_in:
        raise DimMismatch(f"state dim {rho.shape[0]} != channel dim_in {s.dim_in}")
    return s(rho)


def compose(s2: Superoperator, s1: Superoperator) -> Superoperator:
    """``s2 o s1``: apply ``s1`` first.  Keeps ``s1``'s input basis."""
    if s1.dim_out != s2.dim_in:
        raise DimMismatch(f"s1.dim_out={s1.dim_out} != s2.dim_in={s2.dim_in}")
    blocks = np.einsum("klab,abcd->klcd", s1.blocks, s2.computational_blocks())
    return Superoperator(blocks, s1.basis_in)


def identity_channel(dim: int) -> Superoperator:
    blocks = np.zeros((dim, dim, dim, dim), dtype=np.complex128)
    for k in range(dim):
        for l in range(dim):
            blocks[k, l, k, l] = 1.0
    return Superoperator(blocks)


def reduction_channel(dim: int) -> Superoperator:
    """Complete dephasing in the computational basis."""
    blocks = np.zeros((dim, dim, dim, dim), dtype=np.complex128)
    for k in range(dim):
        blocks[k, k, k, k] = 1.0
    return Superoperator(blocks)


def trace_functional(dim: int) -> Superoperator:
    """``X -> Tr X`` as a channel into the one-dimensional space."""
    return Superoperator(np.eye(dim, dtype=np.complex128).reshape(dim, dim, 1, 1))


def constant_channel(dim_in: int, sigma) -> Superoperator:
    """``X -> sigma Tr X``."""
    sigma = np.asarray(sigma, dtype=np.complex128)
    blocks = np.einsum("kl,ab->klab", np.eye(dim_in), sigma)
    return Superoperator(blocks)


def transpose_map(dim: int) -> Superoperator:
    """Transposition; positive but not completely positive."""
    blocks = np.zeros((dim, dim, dim, dim), dtype=np.complex128)
    for k in range(dim):
        for l in range(dim):
            blocks[k, l, l, k] = 1.0
    return Superoperator(blocks)


def is_unitary(u, tol: float = CHANNEL_TOL) -> bool:
    u = np.asarray(u)
    return u.ndim == 2 and u.shape[0] == u.shape[1] and bool(
        np.abs(u.conj().T @ u - np.eye(u.shape[0])).max() <= tol
    )


def from_unitary(u) -> Superoperator:
    """``X -> U X U^H``."""
    u = np.asarray(u, dtype=np.complex128)
    if not is_unitary(u):
        raise NotUnitary("matrix is not unitary to 1e-10")
    return Superoperator(np.einsum("ak,bl->klab", u, u.conj()))


def from_bloch_generator(generator, t: float) -> Superoperator:
    """Qubit channel ``exp(L t)`` from a generator in the ``(I, s3, s1, s2)`` basis.

    ``generator`` is the 4x4 matrix acting on Bloch-type coordinates.  The
    propagator ``S = exp(L t)`` is converted to blocks with the
    orthonormalized basis ``e_m = (I, s3, s1, s2) / sqrt(2)``::

        s_kl = sum_mn S_mn <l|e_n|k> e_m
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    lmat = np.asarray(generator)
    if lmat.shape != (4, 4):
        raise DimMismatch("qubit generator must be 4x4")
    prop = numkit.matrix_exp(lmat * t)
    basis = np.array(qstate.QUBIT_OPERATOR_BASIS) / np.sqrt(2)
    # blocks[k, l] = sum_mn prop[m, n] * basis[n][l, k] * basis[m]
    blocks = np.einsum("mn,nlk,mab->klab", prop, basis, basis)
    s = Superoperator(blocks)
    report = check_cp_tp(s, 1e-9)
    if not report.cp:
        raise CPViolated(f"exp(L t) is not CP (min Choi eigenvalue {report.min_choi_eig:.3e})")
    return s


def reduce_joint_channel(
    s12: Superoperator, rho2, traced: Literal["first"] = "first"
) -> Superoperator:
    """Channel ``rho -> Tr_1 S12(rho (x) rho2)`` from system 1 into system 2."""
    if traced != "first":
        raise ValueError("only tracing over the first system is supported")
    rho2 = np.asarray(rho2, dtype=np.complex128)
    d2 = rho2.shape[0]
    if s12.dim_in != s12.dim_out or s12.dim_in % d2:
        raise DimMismatch(f"joint channel dims {s12.dim_in}->{s12.dim_out} incompatible with d2={d2}")
    d1 = s12.dim_in // d2
    b = s12.computational_blocks().reshape(d1, d2, d1, d2, d1, d2, d1, d2)
    # s_kl = sum_{kappa lambda} sum_n <n| s_{k kappa, l lambda} |n> rho2[kappa, lambda]
    blocks = np.einsum("kplqnanb,pq->klab", b, rho2)
    return Superoperator(blocks)


def _is_projector(p, tol: float) -> bool:
    return bool(np.abs(p @ p - p).max() <= tol and np.abs(p - p.conj().T).max() <= tol)


def choice_superoperator(p_a, dim_ext: int) -> Superoperator:
    """``X -> P X P + |0><0| Tr[(1 - P) X (1 - P)]``.

    The output space appends the extra state ``|0>`` as its last basis
    vector, so ``dim_ext`` must be ``dim(H) + 1``.
    """
    p = np.asarray(p_a, dtype=np.complex128)
    d = p.shape[0]
    if p.shape != (d, d) or not _is_projector(p, CHANNEL_TOL):
        raise NotProjector("P_A must be an idempotent Hermitian matrix")
    if dim_ext != d + 1:
        raise DimMismatch(f"dim_ext must be {d + 1}")
    q = np.eye(d) - p
    blocks = np.zeros((d, d, dim_ext, dim_ext), dtype=np.complex128)
    for k in range(d):
        for l in range(d):
            blocks[k, l, :d, :d] = np.outer(p[:, k], p[:, l].conj())
            blocks[k, l, d, d] = q[l, k]
    return Superoperator(blocks)


def check_cp_tp(s: Superoperator, tol: float = CHANNEL_TOL) -> CPTPReport:
    """Report complete positivity and trace preservation; never raises.

    ``min_choi_eig`` is the smallest eigenvalue of the Choi matrix divided
    by ``dim_in`` (unit trace for a trace-preserving map).
    """
    b = s.computational_blocks()
    traces = np.einsum("klaa->kl", b)
    max_trace_dev = float(np.abs(traces - np.eye(s.dim_in)).max())
    choi = s.choi() / s.dim_in
    herm_dev = numkit.hermiticity_deviation(choi)
    values = numkit.eigvalsh(choi, tol=np.inf)
    min_eig = float(values.min())
    return CPTPReport(
        cp=bool(herm_dev <= tol and min_eig >= -tol),
        tp=bool(max_trace_dev <= tol),
        min_choi_eig=min_eig,
        max_trace_dev=max_trace_dev,
    )


def require_cptp(s: Superoperator, tol: float = 1e-9) -> Superoperator:
    report = check_cp_tp(s, tol)
    if not report.tp:
        raise NotTP(f"trace deviation {report.max_trace_dev:.3e}")
    if not report.cp:
        raise CPViolated(f"min Choi eigenvalue {report.min_choi_eig:.3e}")
    return s

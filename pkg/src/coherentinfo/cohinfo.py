"""Joint input-output state, entropy exchange and coherent information."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numkit, qstate
from .errors import DimMismatch, NotTP
from .superop import Superoperator, check_cp_tp

TP_TOL = 1e-9


@dataclass(frozen=True)
class JointState:
    """``rho_alpha`` on ``H_out (x) H_in``, output factor first."""

    rho_alpha: np.ndarray
    dim_out: int
    dim_in: int

    def output_marginal(self) -> np.ndarray:
        return numkit.partial_trace(self.rho_alpha, (self.dim_out, self.dim_in), "first")

    def input_marginal(self) -> np.ndarray:
        return numkit.partial_trace(self.rho_alpha, (self.dim_out, self.dim_in), "second")


@dataclass(frozen=True)
class ChannelReport:
    s_in: float
    s_out: float
    s_e: float
    i_c: float
    raw_ic: float
    eig_out: tuple[float, ...]
    eig_alpha: tuple[float, ...]


def _check_inputs(s: Superoperator, rho_in) -> np.ndarray:
    rho_in = qstate.validate_density(rho_in)
    if rho_in.shape[0] != s.dim_in:
        raise DimMismatch(f"input dim {rho_in.shape[0]} != channel dim_in {s.dim_in}")
    report = check_cp_tp(s, TP_TOL)
    if not report.tp:
        raise NotTP(f"channel trace deviation {report.max_trace_dev:.3e}")
    return rho_in


def joint_state(s: Superoperator, rho_in) -> JointState:
    """Joint input-output density matrix of a channel fed with ``rho_in``.

    With ``rho_in = sum_i p_i |i><i|``::

        rho_alpha = sum_ij sqrt(p_i p_j) S(|i><j|) (x) |i*><j*|

    where ``|i*>`` is the complex conjugate of ``|i>`` in the computational
    basis.  Zero-weight eigenvectors are dropped before assembly.
    """
    rho_in = _check_inputs(s, rho_in)
    p, vecs = numkit.hermitian_eig(rho_in, qstate.STATE_TOL)
    p = numkit.clip_psd_values(p, qstate.STATE_TOL)
    keep = p > 0.0
    p, vecs = p[keep], vecs[:, keep]
    amp = np.sqrt(p)

    n = s.dim_out * s.dim_in
    rho_alpha = np.zeros((n, n), dtype=np.complex128)
    for i in range(p.size):
        for j in range(p.size):
            out = s(np.outer(vecs[:, i], vecs[:, j].conj()))
            ref = np.outer(vecs[:, i].conj(), vecs[:, j])
            rho_alpha += amp[i] * amp[j] * np.kron(out, ref)
    rho_alpha = (rho_alpha + rho_alpha.conj().T) / 2
    return JointState(rho_alpha, s.dim_out, s.dim_in)


def _spectrum(m) -> np.ndarray:
    values = numkit.eigvalsh(m, tol=1e-9)
    return numkit.clip_psd_values(values, 1e-9)


def coherent_information(s: Superoperator, rho_in) -> ChannelReport:
    """Source entropy, output entropy, entropy exchange and coherent information (bits).

    ``raw_ic = S_out - S_e`` may be negative; ``i_c`` clamps it at zero.
    """
    js = joint_state(s, rho_in)
    rho_in = np.asarray(rho_in, dtype=np.complex128)
    eig_in = _spectrum(rho_in)
    eig_out = _spectrum(s(rho_in))
    eig_alpha = _spectrum(js.rho_alpha)
    s_in = qstate.entropy_of_spectrum(eig_in)
    s_out = qstate.entropy_of_spectrum(eig_out)
    s_e = qstate.entropy_of_spectrum(eig_alpha)
    raw = s_out - s_e
    return ChannelReport(
        s_in=s_in,
        s_out=s_out,
        s_e=s_e,
        i_c=max(0.0, raw),
        raw_ic=raw,
        eig_out=tuple(float(v) for v in eig_out),
        eig_alpha=tuple(float(v) for v in eig_alpha),
    )


def one_time_coherent_information(rho_joint, dims: tuple[int, int]) -> float:
    """``max(0, S(rho_2) - S(rho_12))`` for a state on ``H1 (x) H2``."""
    d1, d2 = dims
    rho_joint = qstate.validate_density(rho_joint)
    if rho_joint.shape[0] != d1 * d2:
        raise DimMismatch(f"joint dim {rho_joint.shape[0]} != {d1}*{d2}")
    rho2 = numkit.partial_trace(rho_joint, dims, "second")
    raw = qstate.entropy_of_spectrum(_spectrum(rho2)) - qstate.entropy_of_spectrum(_spectrum(rho_joint))
    return max(0.0, raw)

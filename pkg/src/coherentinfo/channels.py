"""Concrete channels of simple atomic systems, with closed-form references.

Qubit index 0 is the lower level (ground state, field vacuum) and index 1
the upper level (excited state, one photon) unless noted otherwise.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import numkit, qstate
from .errors import DimMismatch, DomainError, NotOrthonormal, NotPOVM, ProjectorsOverlap
from .superop import (
    Superoperator,
    from_bloch_generator,
    from_unitary,
    reduce_joint_channel,
    require_cptp,
)

CATALOG_TOL = 1e-9
_ORTHO_TOL = 1e-10


def _xlog2x(x: float) -> float:
    return 0.0 if x <= 0.0 else x * math.log2(x)


# -- driven two-level atom with pure dephasing ---------------------------------


@dataclass(frozen=True)
class DephasingRabiParams:
    gamma: float
    omega: float
    t: float

    def __post_init__(self):
        if self.gamma < 0 or self.omega < 0 or self.t < 0:
            raise DomainError("gamma, omega and t must be non-negative")


def dephasing_liouvillian(gamma: float, omega: float) -> np.ndarray:
    """Generator in the ``(I, s3, s1, s2)`` basis: dephasing plus resonant drive."""
    return np.array(
        [
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, omega],
            [0.0, 0.0, -gamma, 0.0],
            [0.0, -omega, 0.0, -gamma],
        ]
    )


def dephasing_rabi(p: DephasingRabiParams) -> Superoperator:
    return require_cptp(
        from_bloch_generator(dephasing_liouvillian(p.gamma, p.omega), p.t), CATALOG_TOL
    )


def liouvillian_eigenvalues_closed_form(gamma: float, omega: float) -> np.ndarray:
    root = cmath.sqrt(gamma * gamma - 4 * omega * omega)
    return np.array([0.0, -gamma, -(gamma + root) / 2, -(gamma - root) / 2], dtype=complex)


@dataclass(frozen=True)
class LiouvillianAnalysis:
    eigenvalues: np.ndarray
    k_min_vector: np.ndarray
    trace_component: complex


def _decoupled_blocks(m: np.ndarray) -> list[list[int]]:
    """Index groups of the connected components of the nonzero pattern."""
    n = m.shape[0]
    linked = (m != 0) | (m.T != 0)
    seen: set[int] = set()
    groups = []
    for start in range(n):
        if start in seen:
            continue
        stack, group = [start], []
        seen.add(start)
        while stack:
            i = stack.pop()
            group.append(i)
            for j in np.flatnonzero(linked[i]):
                if j not in seen:
                    seen.add(int(j))
                    stack.append(int(j))
        groups.append(sorted(group))
    return groups


def _small_eigvals(block: np.ndarray) -> list[complex]:
    # 2x2 through the quadratic formula keeps repeated (defective) roots exact
    if block.shape == (1, 1):
        return [complex(block[0, 0])]
    if block.shape == (2, 2):
        tr = block[0, 0] + block[1, 1]
        det = block[0, 0] * block[1, 1] - block[0, 1] * block[1, 0]
        root = cmath.sqrt(tr * tr - 4 * det)
        return [(tr + root) / 2, (tr - root) / 2]
    return list(np.linalg.eigvals(block))


def liouvillian_analysis(gamma: float, omega: float) -> LiouvillianAnalysis:
    """Spectrum of the dephasing/drive generator and its slowest decaying mode.

    ``k_min_vector`` is the eigenvector of the nonzero eigenvalue with the
    smallest ``|Re lambda|`` (ties broken towards ``Im lambda >= 0``),
    scaled so its ``s2`` coordinate is 1.  ``trace_component`` is its ``I``
    coordinate: a zero value means the slow mode carries no trace and no
    admissible input state can be built from it alone.
    """
    if gamma < 0 or omega < 0 or (gamma == 0 and omega == 0):
        raise DomainError("need gamma, omega >= 0, not both zero")
    lmat = dephasing_liouvillian(gamma, omega)
    eigenvalues = []
    for group in _decoupled_blocks(lmat):
        eigenvalues.extend(_small_eigvals(lmat[np.ix_(group, group)]))
    eigenvalues = np.array(eigenvalues, dtype=complex)

    nonzero = [lam for lam in eigenvalues if abs(lam) > 1e-14]
    lam = min(nonzero, key=lambda z: (abs(z.real), -z.imag))
    _, _, vh = np.linalg.svd(lmat - lam * np.eye(4))
    vec = vh[-1].conj()
    pivot = 3 if abs(vec[3]) > 1e-12 else int(np.argmax(np.abs(vec)))
    vec = vec / vec[pivot]
    vec[np.abs(vec) < 1e-14] = 0.0
    return LiouvillianAnalysis(eigenvalues, vec, complex(vec[0]))


# -- Stark-coupled hydrogen 2s/2p --------------------------------------------------


def hydrogen_stark(x: float) -> Superoperator:
    """Forbidden 1s-2s transition into the dipole 1s-2p transition; ``x = sin(w_s t)``.

    Output basis is (1s, 2p, vacuum), the last state collecting everything
    that left the output subspace.
    """
    if abs(x) > 1.0:
        raise DomainError("x = sin(omega_s t) must lie in [-1, 1]")
    b = np.zeros((2, 2, 3, 3), dtype=np.complex128)
    b[0, 0, 0, 0] = 1.0
    b[0, 1, 0, 1] = x
    b[1, 0, 1, 0] = x
    b[1, 1, 1, 1] = x * x
    b[1, 1, 2, 2] = 1.0 - x * x
    return require_cptp(Superoperator(b), CATALOG_TOL)


def hydrogen_ic_analytic(x: float) -> float:
    """``[(1 + x^2) log2(1 + x^2) - x^2 log2(x^2)] / 2`` for the maximally mixed input."""
    x2 = x * x
    return (_xlog2x(1.0 + x2) - _xlog2x(x2)) / 2


# -- two coupled two-level atoms ---------------------------------------------------

_SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=np.complex128)  # |1><0|


def exchange_unitary(theta: float) -> np.ndarray:
    """``exp(-i theta (s+ (x) s- + s- (x) s+))``; a full excitation swap at pi/2."""
    hop = np.kron(_SIGMA_PLUS, _SIGMA_PLUS.T) + np.kron(_SIGMA_PLUS.T, _SIGMA_PLUS)
    return numkit.matrix_exp(-1j * theta * hop)


def coupled_tlas(u, rho2) -> Superoperator:
    """Channel from atom 1 into atom 2 under the joint unitary ``u``."""
    rho2 = qstate.validate_density(rho2)
    if rho2.shape != (2, 2):
        raise DomainError("second atom must be a qubit")
    return require_cptp(reduce_joint_channel(from_unitary(u), rho2), CATALOG_TOL)


# -- measurement-type channels ------------------------------------------------------


def _orthonormal_columns(basis) -> np.ndarray:
    """Square matrix of basis columns; a list of 1-D vectors is stacked as columns."""
    if isinstance(basis, np.ndarray) and basis.ndim == 2:
        v = basis.astype(np.complex128)
    else:
        v = np.column_stack([np.asarray(b, dtype=np.complex128) for b in basis])
    if v.shape[0] != v.shape[1] or np.abs(v.conj().T @ v - np.eye(v.shape[1])).max() > _ORTHO_TOL:
        raise NotOrthonormal("basis vectors are not orthonormal or do not span the space")
    return v


def direct_measurement(basis) -> Superoperator:
    """``X -> sum_k <phi_k|X|phi_k> |phi_k><phi_k|``.

    ``basis`` is a square matrix whose columns are the pointer states.
    """
    v = _orthonormal_columns(basis)
    proj = np.einsum("ak,bk->kab", v, v.conj())
    # s_ij = sum_k <phi_k|i><j|phi_k> P_k
    blocks = np.einsum("ik,jk,kab->ijab", v.conj(), v, proj)
    return require_cptp(Superoperator(blocks), CATALOG_TOL)


def indirect_measurement(povm, projectors=None) -> Superoperator:
    """``X -> sum_q P_q Tr(E_q X) / Tr(P_q)``.

    By default the pointer projectors are the computational basis states of
    a ``len(povm)``-dimensional register.  Higher-rank projectors are
    normalized by their rank so the map stays trace preserving.
    """
    effects = [np.asarray(e, dtype=np.complex128) for e in povm]
    d = effects[0].shape[0]
    total = sum(effects)
    if np.abs(total - np.eye(d)).max() > _ORTHO_TOL:
        raise NotPOVM("effects do not sum to the identity")
    for e in effects:
        if numkit.hermiticity_deviation(e) > _ORTHO_TOL or numkit.eigvalsh(e).min() < -_ORTHO_TOL:
            raise NotPOVM("effect is not positive semidefinite")
    if projectors is None:
        projectors = [np.diag(np.eye(len(effects))[q]).astype(complex) for q in range(len(effects))]
    projectors = [np.asarray(p, dtype=np.complex128) for p in projectors]
    if len(projectors) != len(effects):
        raise DimMismatch("one pointer projector per effect is required")
    for a, pa in enumerate(projectors):
        if np.abs(pa @ pa - pa).max() > _ORTHO_TOL or numkit.hermiticity_deviation(pa) > _ORTHO_TOL:
            raise ProjectorsOverlap("pointer operators must be orthogonal projectors")
        for pb in projectors[a + 1 :]:
            if np.abs(pa @ pb).max() > _ORTHO_TOL:
                raise ProjectorsOverlap("pointer projectors are not mutually orthogonal")
    pointers = [p / np.trace(p).real for p in projectors]
    # s_kl = sum_q <l|E_q|k> P_q
    blocks = np.einsum("qlk,qab->klab", np.array(effects), np.array(pointers))
    return require_cptp(Superoperator(blocks), CATALOG_TOL)


def trine_povm() -> list[np.ndarray]:
    """Three qubit effects ``(2/3)|t_q><t_q|`` at 120 degree Bloch angles."""
    effects = []
    for q in range(3):
        ang = 2 * math.pi * q / 3
        psi = np.array([math.cos(ang / 2), math.sin(ang / 2)], dtype=np.complex128)
        effects.append(2.0 / 3.0 * np.outer(psi, psi.conj()))
    return effects


def random_povm(dim: int, outcomes: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Random POVM: ``S^{-1/2} A_q S^{-1/2}`` with Ginibre ``A_q`` and ``S = sum A_q``."""
    raw = [qstate.random_density(dim, rng) for _ in range(outcomes)]
    inv_sqrt = numkit.matrix_power_psd(sum(raw), -0.5)
    effects = [inv_sqrt @ a @ inv_sqrt for a in raw]
    return [(e + e.conj().T) / 2 for e in effects]


def duplication(basis) -> Superoperator:
    """Coherent copy of the pointer basis: ``|phi_i> -> |phi_i>|phi_i>``.

    Maps ``C^d`` into ``C^d (x) C^d``; an isometric channel.
    """
    v = _orthonormal_columns(basis)
    d = v.shape[0]
    doubled = np.stack([np.kron(v[:, i], v[:, i]) for i in range(d)], axis=1)
    # the channel is X -> W X W^H with the isometry W = sum_i |phi_i phi_i><phi_i|
    w = doubled @ v.conj().T
    blocks = np.einsum("ak,bl->klab", w, w.conj())
    return require_cptp(Superoperator(blocks), CATALOG_TOL)


def rotated_basis(theta: float, phase: float = 0.0) -> np.ndarray:
    """Qubit basis rotated by ``theta`` about the y-like axis with a relative phase."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    e = cmath.exp(1j * phase)
    return np.array([[c, -s * e.conjugate()], [s * e, c]], dtype=np.complex128)


# -- atom coupled to the vacuum field ---------------------------------------------


def _survival(gamma_t: float) -> float:
    if gamma_t < 0:
        raise DomainError("gamma*t must be non-negative")
    return math.exp(-gamma_t)


def atom_field(gamma_t: float) -> Superoperator:
    """Atom-to-photon channel after spontaneous decay for time ``gamma_t``.

    With survival ``x = exp(-gamma t)``: the ground state leaves the field
    in vacuum, the excited state leaves it in vacuum with probability ``x``
    and with one photon otherwise, coherently with amplitude ``sqrt(1 - x)``.
    """
    x = _survival(gamma_t)
    b = np.zeros((2, 2, 2, 2), dtype=np.complex128)
    b[0, 0, 0, 0] = 1.0
    b[0, 1, 0, 1] = math.sqrt(1.0 - x)
    b[1, 0, 1, 0] = math.sqrt(1.0 - x)
    b[1, 1, 0, 0] = x
    b[1, 1, 1, 1] = 1.0 - x
    return require_cptp(Superoperator(b), CATALOG_TOL)


def atom_field_unitary(gamma_t: float) -> np.ndarray:
    """Joint atom (x) field unitary truncated to at most one photon.

    ``|e,0> -> sqrt(x)|e,0> + sqrt(1-x)|g,1>``; ``|g,0>`` is stationary.  The
    remaining columns only complete the unitary and are never populated
    from a vacuum field.
    """
    x = _survival(gamma_t)
    c, s = math.sqrt(x), math.sqrt(1.0 - x)
    g0, g1, e0, e1 = 0, 1, 2, 3
    u = np.zeros((4, 4), dtype=np.complex128)
    u[g0, g0] = 1.0
    u[e0, e0], u[g1, e0] = c, s
    u[e0, g1], u[g1, g1] = -s, c
    u[e1, e1] = 1.0
    return u


def atom_field_joint_state(gamma_t: float, rho_atom) -> np.ndarray:
    """Atom (x) field state at ``gamma_t`` from ``rho_atom (x) |vac><vac|``."""
    u = atom_field_unitary(gamma_t)
    vacuum = np.diag([1.0, 0.0]).astype(complex)
    start = np.kron(qstate.validate_density(rho_atom), vacuum)
    return u @ start @ u.conj().T


def atom_field_ic_analytic(x: float, rho22: float) -> float:
    """Clamped coherent information of the atom-field channel for a diagonal input.

    ``x`` is the survival probability ``exp(-gamma t)`` and ``rho22`` the
    initial excited-state population.
    """
    if not 0.0 <= x <= 1.0 or not 0.0 <= rho22 <= 1.0:
        raise DomainError("x and rho22 must lie in [0, 1]")
    raw = (
        _xlog2x(x * rho22)
        - _xlog2x(1.0 - rho22 + x * rho22)
        + _xlog2x(1.0 - x * rho22)
        - _xlog2x(rho22 - x * rho22)
    )
    return max(0.0, raw)


def binary_entropy(p: float) -> float:
    return -_xlog2x(p) - _xlog2x(1.0 - p)


# -- two atoms coupled through the vacuum field -----------------------------------


@dataclass(frozen=True)
class DickeParams:
    """Two identical atoms, parallel dipoles perpendicular to their axis.

    ``phi = k0 R`` is the dimensionless separation and ``gamma_t`` the time
    in units of the single-atom lifetime.  ``lambda_zero`` switches off the
    dipole-dipole shift while keeping the collective decay rates.
    """

    phi: float
    gamma_t: float
    lambda_zero: bool = False

    def __post_init__(self):
        if not self.phi > 0:
            raise DomainError("phi must be positive")
        if self.gamma_t < 0:
            raise DomainError("gamma*t must be non-negative")

    @property
    def g(self) -> float:
        p = self.phi
        return 1.5 * (math.sin(p) / p + math.cos(p) / p**2 - math.sin(p) / p**3)

    @property
    def gamma_s(self) -> float:
        return 1.0 + self.g

    @property
    def gamma_a(self) -> float:
        return 1.0 - self.g

    @property
    def lambda_shift(self) -> float:
        return 0.0 if self.lambda_zero else 0.75 / self.phi**3


@dataclass(frozen=True)
class DickeAmplitudes:
    f: float
    f_s: complex
    f_a: complex


def dicke_amplitudes(p: DickeParams) -> DickeAmplitudes:
    t = p.gamma_t
    es = cmath.exp(-(p.gamma_s / 2 + 1j * p.lambda_shift) * t)
    ea = cmath.exp(-(p.gamma_a / 2 - 1j * p.lambda_shift) * t)
    f2 = 1.0 - (math.exp(-p.gamma_s * t) + math.exp(-p.gamma_a * t)) / 2
    return DickeAmplitudes(f=math.sqrt(max(0.0, f2)), f_s=(es + ea) / 2, f_a=(es - ea) / 2)


def two_atom_channel(p: DickeParams) -> Superoperator:
    """Channel from atom 1 into atom 2, averaged over atom 1 and the field phase."""
    amp = dicke_amplitudes(p)
    stay = amp.f**2 + abs(amp.f_s) ** 2
    b = np.zeros((2, 2, 2, 2), dtype=np.complex128)
    b[0, 0, 0, 0] = 1.0
    b[0, 1, 0, 1] = amp.f_a.conjugate()
    b[1, 0, 1, 0] = amp.f_a
    b[1, 1, 0, 0] = stay
    b[1, 1, 1, 1] = abs(amp.f_a) ** 2
    return require_cptp(Superoperator(b), CATALOG_TOL)


def two_atom_population(p: DickeParams) -> float:
    """Excited population of atom 2 at ``gamma_t`` when atom 1 starts excited."""
    return abs(dicke_amplitudes(p).f_a) ** 2

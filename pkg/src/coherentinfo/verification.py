"""Built-in verification suite: closed-form and qualitative checks of every channel.

Each check returns a :class:`CheckResult`; ``run_all`` evaluates them in
order.  Random inputs come from fixed seeds so reports are reproducible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
from scipy.optimize import brentq

from . import channels as ch
from . import numkit, qstate, sweep
from .cohinfo import coherent_information, joint_state, one_time_coherent_information
from .superop import Superoperator, check_cp_tp, constant_channel, from_unitary, identity_channel

SEED = 20000315


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: str
    expected: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: measured {self.measured}; expected {self.expected}"


CHECKS: list[Callable[[], CheckResult]] = []


def check(fn: Callable[[], CheckResult]) -> Callable[[], CheckResult]:
    CHECKS.append(fn)
    return fn


def _ic(s: Superoperator, rho) -> float:
    return coherent_information(s, rho).i_c


def _diag_qubit(rho22: float) -> np.ndarray:
    return np.diag([1.0 - rho22, rho22]).astype(complex)


# -- hydrogen ---------------------------------------------------------------------


@check
def hydrogen_oracle() -> CheckResult:
    xs = np.linspace(-1.0, 1.0, 101)
    ics = np.array([_ic(ch.hydrogen_stark(x), qstate.maximally_mixed(2)) for x in xs])
    ref = np.array([ch.hydrogen_ic_analytic(x) for x in xs])
    err = float(np.abs(ics - ref).max())
    end_err = max(abs(ics[0] - 1.0), abs(ics[-1] - 1.0))
    ok = err <= 1e-9 and end_err <= 1e-9 and ics.max() <= 1.0 + 1e-9
    return CheckResult(
        "1 hydrogen numeric I_c vs closed form (101 x)",
        ok,
        f"max|diff|={err:.2e}, I_c(+-1)={ics[0]:.12f},{ics[-1]:.12f}",
        "max|diff|<=1e-9, maximum 1.0 at x=+-1",
    )


@check
def hydrogen_time_average() -> CheckResult:
    angles = np.linspace(0.0, 2 * math.pi, 1000, endpoint=False)
    mean = float(np.mean([_ic(ch.hydrogen_stark(math.sin(a)), qstate.maximally_mixed(2)) for a in angles]))
    return CheckResult(
        "2 hydrogen <I_c> over omega_s*t uniform on [0, 2pi]",
        abs(mean - 0.46) <= 0.01,
        f"{mean:.4f}",
        "0.46 +- 0.01",
    )


@check
def hydrogen_x_average() -> CheckResult:
    # supplementary: the same closed form averaged over x itself
    xs = -1.0 + (np.arange(1000) + 0.5) * (2.0 / 1000)
    mean = float(np.mean([_ic(ch.hydrogen_stark(x), qstate.maximally_mixed(2)) for x in xs]))
    return CheckResult(
        "2s (supplementary) hydrogen <I_c> over x uniform on [-1, 1]",
        abs(mean - 0.46) <= 0.01,
        f"{mean:.4f}",
        "0.46 +- 0.01",
    )


def hydrogen_rho_alpha_reference(x: float) -> np.ndarray:
    """Closed-form joint state of the hydrogen channel for the maximally mixed input."""
    m = np.zeros((6, 6))
    m[0, 0] = 0.5
    m[0, 3] = m[3, 0] = x / 2
    m[3, 3] = x * x / 2
    m[5, 5] = (1 - x * x) / 2
    return m


@check
def hydrogen_joint_structure() -> CheckResult:
    worst_mat = worst_eig = 0.0
    for x in np.linspace(-1.0, 1.0, 21):
        rho_a = joint_state(ch.hydrogen_stark(x), qstate.maximally_mixed(2)).rho_alpha
        worst_mat = max(worst_mat, float(np.abs(rho_a - hydrogen_rho_alpha_reference(x)).max()))
        values = numkit.eigvalsh(rho_a)
        ref = np.array([(1 + x * x) / 2, (1 - x * x) / 2, 0, 0, 0, 0])
        worst_eig = max(worst_eig, float(np.abs(values - ref).max()))
    return CheckResult(
        "3 hydrogen rho_alpha equals closed-form 6x6, eigenvalues (1+-x^2)/2",
        worst_mat <= 1e-10 and worst_eig <= 1e-10,
        f"matrix max|diff|={worst_mat:.2e}, eigen max|diff|={worst_eig:.2e}",
        "<=1e-10 both",
    )


# -- atom and vacuum field ---------------------------------------------------------

_RHO22 = (0.1, 0.5, 0.9)


@check
def atom_field_oracle() -> CheckResult:
    err = 0.0
    for rho22 in _RHO22:
        for gt in np.linspace(0.0, 6.0, 101):
            num = _ic(ch.atom_field(gt), _diag_qubit(rho22))
            err = max(err, abs(num - ch.atom_field_ic_analytic(math.exp(-gt), rho22)))
    return CheckResult(
        "4a atom-field numeric I_c vs closed form (101 gamma*t x 3 rho22)",
        err <= 1e-9,
        f"max|diff|={err:.2e}",
        "<=1e-9",
    )


def atom_field_sign_change(rho22: float) -> float:
    """Survival probability at which the raw coherent information changes sign."""

    def raw(gt: float) -> float:
        return coherent_information(ch.atom_field(gt), _diag_qubit(rho22)).raw_ic

    root = brentq(raw, 0.2, 1.5, xtol=1e-14, rtol=1e-14)
    return math.exp(-root)


@check
def atom_field_critical_point() -> CheckResult:
    roots = [atom_field_sign_change(r) for r in _RHO22]
    err = max(abs(r - 0.5) for r in roots)
    return CheckResult(
        "4b atom-field raw I_c sign change at exp(-gamma t)",
        err <= 1e-6,
        ", ".join(f"{r:.10f}" for r in roots),
        "0.5 +- 1e-6 for rho22 in {0.1, 0.5, 0.9}",
    )


@check
def atom_field_joint_eigenvalues() -> CheckResult:
    err = 0.0
    for rho22 in _RHO22:
        for gt in np.linspace(0.0, 6.0, 101):
            x = math.exp(-gt)
            values = np.array(coherent_information(ch.atom_field(gt), _diag_qubit(rho22)).eig_alpha)
            ref = np.sort([0.0, 0.0, 1 - rho22 * x, rho22 * x])[::-1]
            err = max(err, float(np.abs(values - ref).max()))
    return CheckResult(
        "4c atom-field rho_alpha eigenvalues {0, 0, 1-rho22 x, rho22 x}",
        err <= 1e-10,
        f"max|diff|={err:.2e}",
        "<=1e-10",
    )


@check
def atom_field_one_time() -> CheckResult:
    excited = _diag_qubit(1.0)
    err = 0.0
    for gt in np.linspace(0.01, 6.0, 101):
        x = math.exp(-gt)
        val = one_time_coherent_information(ch.atom_field_joint_state(gt, excited), (2, 2))
        err = max(err, abs(val - ch.binary_entropy(x)))
    at_half = one_time_coherent_information(ch.atom_field_joint_state(math.log(2), excited), (2, 2))
    return CheckResult(
        "5 atom-field one-time I_c = H(x), 1 qubit at x=1/2",
        err <= 1e-9 and abs(at_half - 1.0) <= 1e-9,
        f"max|diff|={err:.2e}, I_c(x=1/2)={at_half:.12f}",
        "<=1e-9, 1.000 +- 1e-9",
    )


# -- measurement, duplication, coupled atoms ---------------------------------------


def random_inputs(dim: int, count: int, rng: np.random.Generator) -> list[np.ndarray]:
    return [qstate.random_density(dim, rng) for _ in range(count)]


@check
def measurement_nullity() -> CheckResult:
    rng = np.random.default_rng(SEED)
    inputs = random_inputs(2, 20, rng)
    direct = [np.eye(2)] + [qstate.random_unitary(2, rng) for _ in range(20)]
    povms = [[np.diag([1.0, 0.0]), np.diag([0.0, 1.0])], ch.trine_povm()]
    povms += [ch.random_povm(2, int(rng.integers(2, 5)), rng) for _ in range(20)]
    worst = 0.0
    for basis in direct:
        s = ch.direct_measurement(basis)
        worst = max(worst, max(_ic(s, rho) for rho in inputs))
    for povm in povms:
        s = ch.indirect_measurement(povm)
        worst = max(worst, max(_ic(s, rho) for rho in inputs))
    return CheckResult(
        "6 measurement channels carry no coherent information",
        worst <= 1e-9,
        f"max i_c={worst:.2e} over {len(direct)} bases and {len(povms)} POVMs x 20 inputs",
        "0 (<=1e-9)",
    )


@check
def duplication_identity() -> CheckResult:
    rng = np.random.default_rng(SEED + 1)
    worst_se = worst_ic = worst_marg = 0.0
    for _ in range(20):
        rho = qstate.random_density(2, rng)
        basis = qstate.random_unitary(2, rng)
        s = ch.duplication(basis)
        rep = coherent_information(s, rho)
        worst_se = max(worst_se, rep.s_e)
        worst_ic = max(worst_ic, abs(rep.i_c - rep.s_in))
        out = s(rho)
        meas = ch.direct_measurement(basis)(rho)
        for keep in ("first", "second"):
            worst_marg = max(worst_marg, float(np.abs(numkit.partial_trace(out, (2, 2), keep) - meas).max()))
    return CheckResult(
        "7 duplication keeps all information, marginals are measurements",
        worst_se <= 1e-9 and worst_ic <= 1e-9 and worst_marg <= 1e-10,
        f"max S_e={worst_se:.2e}, max|I_c-S_in|={worst_ic:.2e}, marginal diff={worst_marg:.2e}",
        "S_e<=1e-9, |I_c-S_in|<=1e-9, marginal<=1e-10",
    )


@check
def coupled_tlas_exchange() -> CheckResult:
    ground = _diag_qubit(0.0)
    ic = _ic(ch.coupled_tlas(ch.exchange_unitary(math.pi / 2), ground), qstate.maximally_mixed(2))
    rng = np.random.default_rng(SEED + 2)
    worst_prod = worst_const = 0.0
    for _ in range(10):
        u1, u2 = qstate.random_unitary(2, rng), qstate.random_unitary(2, rng)
        rho2 = qstate.random_density(2, rng)
        s = ch.coupled_tlas(np.kron(u1, u2), rho2)
        target = constant_channel(2, u2 @ rho2 @ u2.conj().T)
        worst_const = max(worst_const, float(np.abs(s.blocks - target.blocks).max()))
        worst_prod = max(worst_prod, max(_ic(s, r) for r in random_inputs(2, 5, rng)))
    return CheckResult(
        "8a coupled TLAs: swap gives 1 qubit, product unitary gives rho2' Tr",
        abs(ic - 1.0) <= 1e-9 and worst_prod <= 1e-9 and worst_const <= 1e-10,
        f"I_c(swap)={ic:.12f}, product max i_c={worst_prod:.1e}, |S - rho2' Tr|={worst_const:.1e}",
        "1.0 +- 1e-9, 0",
    )


@check
def coupled_tlas_border_maximum() -> CheckResult:
    populations = np.linspace(0.0, 1.0, 11)
    argmaxes = []
    for theta in (math.pi / 3, math.pi / 2, 2 * math.pi / 3):
        ics = [
            _ic(ch.coupled_tlas(ch.exchange_unitary(theta), _diag_qubit(1.0 - p)), qstate.maximally_mixed(2))
            for p in populations
        ]
        argmaxes.append(float(populations[int(np.argmax(ics))]))
    return CheckResult(
        "8b coupled TLAs: I_c maximal at rho11 in {0, 1} (11-point scan)",
        all(a in (0.0, 1.0) for a in argmaxes),
        f"argmax rho11 = {argmaxes} for theta = pi/3, pi/2, 2pi/3",
        "each in {0, 1}",
    )


# -- driven, dephased two-level atom ------------------------------------------------


def _sorted_complex(values) -> np.ndarray:
    v = np.asarray(values, dtype=complex)
    return v[np.lexsort((v.imag.round(12), v.real.round(12)))]


@check
def dephasing_spectrum() -> CheckResult:
    err = 0.0
    for gamma, omega in ((1.0, 0.0), (1.0, 0.5), (1.0, 2.0)):
        got = _sorted_complex(ch.liouvillian_analysis(gamma, omega).eigenvalues)
        ref = _sorted_complex(ch.liouvillian_eigenvalues_closed_form(gamma, omega))
        err = max(err, float(np.abs(got - ref).max()))
    return CheckResult(
        "9a dephasing Liouvillian eigenvalues vs closed form",
        err <= 1e-10,
        f"max|diff|={err:.2e}",
        "<=1e-10 for (G, W) in {(1,0), (1,0.5), (1,2)}",
    )


def dephasing_ic(gamma: float, omega: float, t: float) -> float:
    s = ch.dephasing_rabi(ch.DephasingRabiParams(gamma, omega, t))
    return coherent_information(s, qstate.maximally_mixed(2)).raw_ic


@check
def dephasing_behaviour() -> CheckResult:
    ic0 = dephasing_ic(1.0, 1.0, 0.0)
    violations = 0
    for t in (0.2, 0.5, 1.0):
        row = [dephasing_ic(1.0, w, t) for w in (0.0, 1.0, 2.0, 4.0)]
        violations += sum(b > a + 1e-9 for a, b in zip(row, row[1:]))
    ratios = {}
    for delta in (1e-2, 1e-3):
        ratios[delta] = (dephasing_ic(1.0, 0.0, 0.0) - dephasing_ic(1.0, 0.0, delta)) / delta
    ok = abs(ic0 - 1.0) <= 1e-9 and violations == 0 and ratios[1e-3] > ratios[1e-2]
    return CheckResult(
        "9b dephasing: I_c(0)=1, non-increasing in Omega, slope blows up at t->0",
        ok,
        f"I_c(0)={ic0:.12f}, monotonicity violations={violations}, "
        f"slope(1e-2)={ratios[1e-2]:.3f}, slope(1e-3)={ratios[1e-3]:.3f}",
        "1.0, 0 violations, slope(1e-3) > slope(1e-2)",
    )


# -- two atoms via the vacuum field ---------------------------------------------------


def count_local_maxima(values) -> int:
    v = np.asarray(values)
    return int(np.sum((v[1:-1] > v[:-2]) & (v[1:-1] >= v[2:])))


@check
def two_atoms_no_shift() -> CheckResult:
    worst_ic = worst_n2 = 0.0
    for phi in (0.3, 0.5, 1.0, 2.0, 3.0):
        for gt in np.linspace(0.0, 6.0, 61):
            p = ch.DickeParams(phi, gt, lambda_zero=True)
            s = ch.two_atom_channel(p)
            worst_n2 = max(worst_n2, ch.two_atom_population(p))
            for rho22 in _RHO22:
                worst_ic = max(worst_ic, _ic(s, _diag_qubit(rho22)))
    return CheckResult(
        "10a two atoms with zero dipole shift: no coherent information",
        worst_ic <= 1e-9 and worst_n2 <= 0.25 + 1e-12,
        f"max i_c={worst_ic:.2e}, max n2={worst_n2:.6f}",
        "i_c=0, n2<=1/4",
    )


@check
def two_atoms_physical_shift() -> CheckResult:
    times = np.linspace(0.0, 4.0, 801)[1:]
    ics, n2 = [], []
    for gt in times:
        p = ch.DickeParams(0.5, gt)
        ics.append(_ic(ch.two_atom_channel(p), _diag_qubit(0.5)))
        n2.append(ch.two_atom_population(p))
    peaks = count_local_maxima(n2)
    return CheckResult(
        "10b two atoms at phi=0.5: positive I_c, oscillating n2",
        max(ics) > 0.0 and peaks >= 2,
        f"max i_c={max(ics):.4f}, n2 local maxima={peaks}",
        "max i_c > 0, >= 2 maxima",
    )


# -- structural ---------------------------------------------------------------------


def catalog_samples(rng: np.random.Generator) -> Iterator[tuple[str, Superoperator]]:
    """Every catalog constructor over a parameter grid."""
    for gamma in (0.0, 0.5, 1.0):
        for omega in (0.0, 1.0, 4.0):
            for t in (0.0, 0.3, 1.5):
                yield "dephasing", ch.dephasing_rabi(ch.DephasingRabiParams(gamma, omega, t))
    for x in np.linspace(-1, 1, 21):
        yield "hydrogen", ch.hydrogen_stark(x)
    for theta in np.linspace(0, math.pi, 7):
        for p in (0.0, 0.3, 1.0):
            yield "coupled-tlas", ch.coupled_tlas(ch.exchange_unitary(theta), _diag_qubit(p))
    for _ in range(5):
        yield "direct-measurement", ch.direct_measurement(qstate.random_unitary(2, rng))
        yield "indirect-measurement", ch.indirect_measurement(ch.random_povm(2, 3, rng))
        yield "duplication", ch.duplication(qstate.random_unitary(2, rng))
    yield "indirect-measurement", ch.indirect_measurement(ch.trine_povm())
    for gt in np.linspace(0, 6, 25):
        yield "atom-field", ch.atom_field(gt)
    for phi in (0.3, 0.5, 1.0, 3.0):
        for gt in np.linspace(0, 4, 9):
            yield "two-atoms", ch.two_atom_channel(ch.DickeParams(phi, gt))
            yield "two-atoms", ch.two_atom_channel(ch.DickeParams(phi, gt, lambda_zero=True))
    yield "identity", identity_channel(3)
    yield "unitary", from_unitary(qstate.random_unitary(3, rng))


@check
def structural_suite() -> CheckResult:
    rng = np.random.default_rng(SEED + 3)
    failures, count, worst_marg = [], 0, 0.0
    for name, s in catalog_samples(rng):
        count += 1
        rep = check_cp_tp(s, 1e-9)
        if not (rep.cp and rep.tp):
            failures.append(name)
        for rho in random_inputs(s.dim_in, 3, rng):
            js = joint_state(s, rho)
            worst_marg = max(
                worst_marg,
                float(np.abs(js.output_marginal() - s(rho)).max()),
                float(np.abs(js.input_marginal() - qstate.conjugate_state(rho)).max()),
            )
    return CheckResult(
        "11a catalog CP/TP and joint-state marginals",
        not failures and worst_marg <= 1e-9,
        f"{count} channels, CP/TP failures={sorted(set(failures)) or 'none'}, marginal diff={worst_marg:.2e}",
        "no failures, marginals <=1e-9",
    )


@check
def csv_determinism() -> CheckResult:
    mismatched, out_of_range = [], 0
    for name in sweep.SCENARIOS:
        spec = sweep.build_spec(name, {}, steps=5)
        first = sweep.run_scenario(spec, jobs=1)
        if first != sweep.run_scenario(spec, jobs=1) or first != sweep.run_scenario(spec, jobs=4):
            mismatched.append(name)
        for row in sweep.run_rows(spec):
            if not 0.0 <= row["i_c"] <= 2.0 + 1e-9:  # largest catalog output is 4-dimensional
                out_of_range += 1
    return CheckResult(
        "11b CSV byte-identical across runs and parallelism",
        not mismatched and out_of_range == 0,
        f"mismatched scenarios={mismatched or 'none'}, i_c out of range={out_of_range}",
        "none",
    )


def run_all() -> list[CheckResult]:
    return [fn() for fn in CHECKS]

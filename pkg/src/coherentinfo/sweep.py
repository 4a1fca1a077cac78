"""Parameter sweeps over the channel catalog, written as CSV."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import channels as ch
from . import qstate
from .cohinfo import ChannelReport, coherent_information
from .errors import DomainError

DEFAULT_STEPS = 64
METRICS = ("s_in", "s_out", "s_e", "i_c", "raw_ic")


class SweepSpecError(ValueError):
    """Malformed sweep definition (a usage error, not a physics one)."""


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise SweepSpecError(f"axis {self.name}: count must be >= 2")
        if not self.lo < self.hi:
            raise SweepSpecError(f"axis {self.name}: min must be < max")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class SweepSpec:
    scenario: str
    axes: tuple[Axis, ...] = ()
    fixed: dict[str, float] = field(default_factory=dict)
    options: dict[str, str] = field(default_factory=dict)
    out: str | None = None

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise SweepSpecError(f"unknown scenario {self.scenario!r}")
        if len(self.axes) > 2:
            raise SweepSpecError("at most two axes per sweep")
        names = [a.name for a in self.axes] + list(self.fixed)
        if len(set(names)) != len(names):
            raise SweepSpecError("a parameter is both fixed and swept")
        known = SCENARIOS[self.scenario].param_names
        for name in names:
            if name not in known:
                raise SweepSpecError(f"scenario {self.scenario} has no parameter {name!r}")


@dataclass(frozen=True)
class Param:
    name: str
    default: float | tuple[float, float]  # a tuple is a default axis range
    help: str


@dataclass(frozen=True)
class Scenario:
    name: str
    params: tuple[Param, ...]
    evaluate: Callable[[dict[str, float], dict[str, str]], dict[str, float]]
    options: dict[str, tuple[str, ...]] = field(default_factory=dict)
    extra_columns: tuple[str, ...] = ()

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)


def _metrics(report: ChannelReport) -> dict[str, float]:
    return {name: getattr(report, name) for name in METRICS}


def _qubit_input(p) -> np.ndarray:
    return qstate.qubit_state(p["rho11"], p["rho12"])


def _eval_dephasing(p, _opts):
    s = ch.dephasing_rabi(ch.DephasingRabiParams(p["gamma"], p["omega"], p["t"]))
    return _metrics(coherent_information(s, _qubit_input(p)))


def _eval_hydrogen(p, _opts):
    return _metrics(coherent_information(ch.hydrogen_stark(p["x"]), qstate.maximally_mixed(2)))


def _eval_coupled(p, _opts):
    if not 0.0 <= p["rho11"] <= 1.0:
        raise DomainError("rho11 must lie in [0, 1]")
    rho2 = np.diag([p["rho11"], 1.0 - p["rho11"]]).astype(complex)
    s = ch.coupled_tlas(ch.exchange_unitary(p["theta"]), rho2)
    return _metrics(coherent_information(s, qstate.maximally_mixed(2)))


def _eval_measurement(p, opts):
    rot = ch.rotated_basis(p["theta"])
    if opts.get("povm", "projective") == "trine":
        s = ch.indirect_measurement([rot @ e @ rot.conj().T for e in ch.trine_povm()])
    else:
        s = ch.direct_measurement(rot)
    return _metrics(coherent_information(s, _qubit_input(p)))


def _eval_duplication(p, _opts):
    s = ch.duplication(ch.rotated_basis(p["theta"]))
    return _metrics(coherent_information(s, _qubit_input(p)))


def _eval_atom_field(p, _opts):
    return _metrics(coherent_information(ch.atom_field(p["gamma_t"]), _qubit_input(p)))


def _eval_two_atoms(p, opts):
    params = ch.DickeParams(p["phi"], p["gamma_t"], lambda_zero=opts.get("lambda", "physical") == "zero")
    rho22 = p["rho22"]
    if not 0.0 <= rho22 <= 1.0:
        raise DomainError("rho22 must lie in [0, 1]")
    rho = np.diag([1.0 - rho22, rho22]).astype(complex)
    row = _metrics(coherent_information(ch.two_atom_channel(params), rho))
    row["n2"] = ch.two_atom_population(params)
    return row


_RHO = (Param("rho11", 0.5, "input ground-state population"), Param("rho12", 0.0, "input real coherence"))

SCENARIOS: dict[str, Scenario] = {
    s.name: s
    for s in (
        Scenario(
            "dephasing",
            (
                Param("gamma", 1.0, "pure dephasing rate"),
                Param("omega", (0.0, 4.0), "Rabi frequency"),
                Param("t", (0.0, 1.5), "time"),
                *_RHO,
            ),
            _eval_dephasing,
        ),
        Scenario("hydrogen", (Param("x", (-1.0, 1.0), "sin of the Stark precession angle"),), _eval_hydrogen),
        Scenario(
            "coupled-tlas",
            (
                Param("theta", (0.0, math.pi), "exchange coupling angle"),
                Param("rho11", (0.0, 1.0), "ground population of the second atom"),
            ),
            _eval_coupled,
        ),
        Scenario(
            "measurement",
            (Param("theta", (0.0, math.pi), "pointer basis rotation angle"), *_RHO),
            _eval_measurement,
            options={"povm": ("projective", "trine")},
        ),
        Scenario(
            "duplication",
            (
                Param("theta", (0.0, math.pi), "pointer basis rotation angle"),
                Param("rho11", (0.0, 1.0), "input ground-state population"),
                Param("rho12", 0.0, "input real coherence"),
            ),
            _eval_duplication,
        ),
        Scenario(
            "atom-field",
            (
                Param("gamma_t", (0.0, 5.0), "dimensionless time"),
                Param("rho11", (0.0, 1.0), "input ground-state population"),
                Param("rho12", 0.0, "input real coherence"),
            ),
            _eval_atom_field,
        ),
        Scenario(
            "two-atoms",
            (
                Param("phi", (0.3, 3.0), "dimensionless separation k0*R"),
                Param("gamma_t", (0.0, 4.0), "dimensionless time"),
                Param("rho22", 0.5, "input excited-state population"),
            ),
            _eval_two_atoms,
            options={"lambda": ("physical", "zero")},
            extra_columns=("n2",),
        ),
    )
}


def grid_points(spec: SweepSpec) -> list[dict[str, float]]:
    """Row-major expansion: the last axis varies fastest."""
    sc = SCENARIOS[spec.scenario]
    grids = [a.values() for a in spec.axes]
    points = []
    for idx in np.ndindex(*(len(g) for g in grids)):
        values = dict(spec.fixed)
        values.update({a.name: float(g[i]) for a, g, i in zip(spec.axes, grids, idx)})
        points.append({name: values[name] for name in sc.param_names})
    return points


def column_names(spec: SweepSpec) -> list[str]:
    sc = SCENARIOS[spec.scenario]
    axis_names = [a.name for a in spec.axes]
    rest = [n for n in sc.param_names if n not in axis_names]
    return axis_names + rest + list(METRICS) + list(sc.extra_columns)


def evaluate_point(spec: SweepSpec, point: dict[str, float]) -> dict[str, float]:
    sc = SCENARIOS[spec.scenario]
    for name, allowed in sc.options.items():
        if spec.options.get(name, allowed[0]) not in allowed:
            raise SweepSpecError(f"option {name} must be one of {allowed}")
    row = dict(point)
    row.update(sc.evaluate(point, spec.options))
    return row


def run_rows(spec: SweepSpec, jobs: int = 1) -> list[dict[str, float]]:
    points = grid_points(spec)
    if jobs <= 1:
        return [evaluate_point(spec, p) for p in points]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda p: evaluate_point(spec, p), points))


NOISE_FLOOR = 1e-12  # entropies are not resolved below this; print such residues as 0


def format_number(v: float, snap: bool = False) -> str:
    v = float(v)
    if snap and abs(v) < NOISE_FLOOR:
        v = 0.0
    return f"{v + 0.0:.12g}"


def render_csv(spec: SweepSpec, rows: list[dict[str, float]]) -> str:
    cols = column_names(spec)
    measured = set(METRICS) | set(SCENARIOS[spec.scenario].extra_columns)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([format_number(row[c], c in measured) for c in cols])
    return buf.getvalue()


def run_scenario(spec: SweepSpec, jobs: int = 1) -> str:
    """Evaluate every grid point of ``spec`` and return the CSV text."""
    return render_csv(spec, run_rows(spec, jobs))


def parse_value(name: str, text: str, steps: int) -> float | Axis:
    """``1.5`` is a fixed value, ``lo:hi`` or ``lo:hi:count`` an axis."""
    parts = text.split(":")
    try:
        nums = [float(x) for x in parts]
    except ValueError:
        raise SweepSpecError(f"bad value for {name}: {text!r}") from None
    if len(nums) == 1:
        return nums[0]
    if len(nums) == 2:
        return Axis(name, nums[0], nums[1], steps)
    if len(nums) == 3 and nums[2].is_integer():
        return Axis(name, nums[0], nums[1], int(nums[2]))
    raise SweepSpecError(f"bad value for {name}: {text!r}")


def build_spec(
    scenario: str,
    values: dict[str, str],
    options: dict[str, str] | None = None,
    steps: int = DEFAULT_STEPS,
    out: str | None = None,
) -> SweepSpec:
    """Spec from textual parameter values; unspecified parameters take defaults."""
    if scenario not in SCENARIOS:
        raise SweepSpecError(f"unknown scenario {scenario!r}")
    sc = SCENARIOS[scenario]
    axes, fixed = [], {}
    for p in sc.params:
        if p.name in values:
            v = parse_value(p.name, values[p.name], steps)
        elif isinstance(p.default, tuple):
            v = Axis(p.name, p.default[0], p.default[1], steps)
        else:
            v = p.default
        if isinstance(v, Axis):
            axes.append(v)
        else:
            fixed[p.name] = v
    unknown = set(values) - set(sc.param_names)
    if unknown:
        raise SweepSpecError(f"scenario {scenario} has no parameter(s) {sorted(unknown)}")
    opts = dict(options or {})
    for name, value in opts.items():
        if name not in sc.options or value not in sc.options[name]:
            raise SweepSpecError(f"invalid option {name}={value!r} for {scenario}")
    return SweepSpec(scenario, tuple(axes), fixed, opts, out)


def parse_spec_file(text: str) -> tuple[str, dict[str, str], dict[str, str], int, str | None]:
    """Read ``key = value`` lines; ``#`` starts a comment.

    Recognized keys: ``scenario``, ``steps``, ``out``, the scenario's
    parameters and its options.
    """
    entries: dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SweepSpecError(f"spec line {number}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        entries[key.replace("-", "_")] = value
    scenario = entries.pop("scenario", None)
    if scenario is None:
        raise SweepSpecError("spec file lacks 'scenario'")
    try:
        steps = int(entries.pop("steps", DEFAULT_STEPS))
    except ValueError:
        raise SweepSpecError("spec 'steps' must be an integer") from None
    out = entries.pop("out", None)
    sc = SCENARIOS.get(scenario)
    if sc is None:
        raise SweepSpecError(f"unknown scenario {scenario!r}")
    options = {k: entries.pop(k) for k in list(entries) if k in sc.options}
    return scenario, entries, options, steps, out


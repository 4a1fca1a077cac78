"""``cohctl``: run scenario sweeps, check channel files, run the verification suite.

Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
3 domain or invariant violation, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import chanfile, sweep
from .cohinfo import coherent_information
from .errors import ChannelFileError, CoherentInfoError
from .superop import check_cp_tp

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep the message short
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cohctl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="sweep a scenario and emit CSV")
    scen = run.add_subparsers(dest="scenario", required=True, parser_class=_Parser)
    for sc in sweep.SCENARIOS.values():
        sp = scen.add_parser(sc.name, help=f"{sc.name} scenario")
        for p in sc.params:
            default = f"{p.default[0]}:{p.default[1]}" if isinstance(p.default, tuple) else p.default
            sp.add_argument(
                _flag(p.name),
                dest=p.name,
                metavar="V|LO:HI[:N]",
                help=f"{p.help} (default {default})",
            )
        for name, choices in sc.options.items():
            sp.add_argument(_flag(name), dest=f"opt_{name}", choices=choices, help=f"default {choices[0]}")
        sp.add_argument("--out", help="output CSV path (default stdout)")
        sp.add_argument("--steps", type=int, help=f"points per axis (default {sweep.DEFAULT_STEPS})")
        sp.add_argument("--jobs", type=int, default=1, help="worker threads (output is identical)")
        sp.add_argument("--spec", help="file of key = value lines; flags override it")

    sub.add_parser("verify", help="run the built-in verification suite")

    chk = sub.add_parser("check", help="validate a channel file")
    chk.add_argument("file")
    chk.add_argument("--input", help="density-matrix file to evaluate the channel on")
    return parser


def _run(args) -> int:
    sc = sweep.SCENARIOS[args.scenario]
    values: dict[str, str] = {}
    options: dict[str, str] = {}
    steps, out = sweep.DEFAULT_STEPS, None
    if args.spec:
        scenario, values, options, steps, out = sweep.parse_spec_file(Path(args.spec).read_text())
        if scenario != sc.name:
            raise sweep.SweepSpecError(f"spec file is for {scenario!r}, not {sc.name!r}")
    for p in sc.params:
        if getattr(args, p.name) is not None:
            values[p.name] = getattr(args, p.name)
    for name in sc.options:
        if getattr(args, f"opt_{name}") is not None:
            options[name] = getattr(args, f"opt_{name}")
    if args.steps is not None:
        steps = args.steps
    if args.out is not None:
        out = args.out
    if args.jobs < 1:
        raise sweep.SweepSpecError("--jobs must be >= 1")

    spec = sweep.build_spec(sc.name, values, options, steps, out)
    text = sweep.run_scenario(spec, jobs=args.jobs)
    if spec.out:
        Path(spec.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _verify() -> int:
    from .verification import run_all

    results = run_all()
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def _check(args) -> int:
    s = chanfile.read_channel(args.file)
    rep = check_cp_tp(s, 1e-9)
    print(f"dim_in={s.dim_in} dim_out={s.dim_out}")
    print(f"cp={str(rep.cp).lower()} min_choi_eig={rep.min_choi_eig:.6g}")
    print(f"tp={str(rep.tp).lower()} max_trace_dev={rep.max_trace_dev:.3g}")
    if not (rep.cp and rep.tp):
        return EXIT_DOMAIN
    if args.input:
        report = coherent_information(s, chanfile.read_density(args.input))
        for name in sweep.METRICS:
            print(f"{name}={sweep.format_number(getattr(report, name), snap=True)}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _run(args)
        if args.command == "verify":
            return _verify()
        return _check(args)
    except ChannelFileError as exc:
        print(f"cohctl: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except sweep.SweepSpecError as exc:
        print(f"cohctl: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CoherentInfoError as exc:
        print(f"cohctl: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"cohctl: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

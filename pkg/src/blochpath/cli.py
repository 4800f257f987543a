"""Command line interface.

Exit codes: 0 on success, 2 for configuration problems (bad flags, bad
config files, out-of-domain parameters), 3 for numerical failures detected
during a run, 4 for any other library error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import scenarios
from .errors import BlochPathError, ConfigError, NumericalError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_ERROR = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blochpath",
        description="Efficiency and curvature diagnostics for single-qubit "
                    "Hamiltonian evolutions on the Bloch sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("example", help="run one of the four built-in scenarios")
    ex.add_argument("number", type=int, choices=(1, 2, 3, 4),
                    help="scenario number")
    ex.add_argument("--t-end", type=float, default=1.0,
                    help="end of the time interval (default 1.0)")
    ex.add_argument("--steps", type=int, default=None,
                    help="RK4 steps (default 2000 per unit time)")
    ex.add_argument("--out", default=".", help="artifact directory")

    sa = sub.add_parser("sweep-alpha",
                        help="closed-form sweep of the stationary family")
    sa.add_argument("--theta-ab", type=float, required=True,
                    help="endpoint separation in (0, pi)")
    sa.add_argument("--points", type=int, required=True, help="alpha grid size")
    sa.add_argument("--energy", type=float, default=1.0, help="field strength E")
    sa.add_argument("--out", default=None,
                    help="CSV path (default: print to stdout)")

    pp = sub.add_parser("phase-profiles",
                        help="speed efficiency under a time-dependent phase")
    pp.add_argument("--profile", required=True, choices=("log", "linear", "exp"))
    pp.add_argument("--phi0", type=float, required=True)
    pp.add_argument("--phidot0", type=float, required=True)
    pp.add_argument("--omega0", type=float, required=True)
    pp.add_argument("--t-end", type=float, default=5.0)
    pp.add_argument("--points", type=int, default=501)
    pp.add_argument("--out", default=None,
                    help="CSV path (default: print to stdout)")

    rp = sub.add_parser("report", help="run a scenario from a JSON config")
    rp.add_argument("--config", required=True, help="JSON config file")
    rp.add_argument("--out", default=".", help="artifact directory")

    t2 = sub.add_parser("table2",
                        help="run all four scenarios and print the summary table")
    t2.add_argument("--steps", type=int, default=None)
    t2.add_argument("--out", default=None,
                    help="also write per-scenario artifacts here")
    return parser


def _emit_table(columns: dict, out) -> None:
    if out is None:
        writer = csv.writer(sys.stdout)
        names = list(columns)
        writer.writerow(names)
        for row in zip(*(columns[n] for n in names)):
            writer.writerow([f"{float(x):.15g}" for x in row])
    else:
        scenarios.write_csv(out, columns)


def _print_row(row) -> None:
    print(f"{row.scenario}: eta_ge_bar={row.eta_ge_bar:.6f} "
          f"eta_se_bar={row.eta_se_bar:.6f} eta_he={row.eta_he:.6f} "
          f"{row.classification}")


def _run(args) -> int:
    if args.command == "example":
        config = scenarios.ScenarioConfig(
            scenario=f"example{args.number}",
            t_span=(0.0, args.t_end),
            n_steps=args.steps,
        )
        _print_row(scenarios.run_report(config, out_dir=args.out))
    elif args.command == "sweep-alpha":
        table = scenarios.sweep_alpha(args.theta_ab, args.points, args.energy)
        _emit_table(table, args.out)
    elif args.command == "phase-profiles":
        table = scenarios.sweep_phase_profiles(
            args.profile, args.phi0, args.phidot0, args.omega0,
            t_end=args.t_end, n_points=args.points,
        )
        _emit_table(table, args.out)
    elif args.command == "report":
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc
        config = scenarios.ScenarioConfig.from_dict(data)
        _print_row(scenarios.run_report(config, out_dir=args.out))
    elif args.command == "table2":
        rows = scenarios.table_rows(out_dir=args.out, n_steps=args.steps)
        header = f"{'scenario':<12} {'eta_ge_bar':>10} {'eta_se_bar':>10} " \
                 f"{'eta_he':>10}  classification"
        print(header)
        for row in rows:
            print(f"{row.scenario:<12} {row.eta_ge_bar:>10.6f} "
                  f"{row.eta_se_bar:>10.6f} {row.eta_he:>10.6f}  "
                  f"{row.classification}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except BlochPathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

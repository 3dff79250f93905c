"""Command-line harness.

Subcommands:

    fracsinc solve    --config cfg.txt --out solution.csv [--threads K]
    fracsinc converge --config cfg.txt --out rows.csv [--threads K] [--no-timings]
    fracsinc verify   --config cfg.txt

Exit codes: 0 success, 1 config error, 2 numeric failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, FracsincError
from .harness import (
    emit_report,
    emit_solution,
    load_config,
    run_convergence_study,
    run_residual_suite,
)
from .homogeneous import solve_homogeneous
from .inhomogeneous import InhomogeneousConfig, order_to_q, solve_inhomogeneous

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2
EXIT_IO = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracsinc")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("solve", "converge", "verify"):
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=True, help="experiment config file")
        cmd.add_argument("--threads", type=int, default=1)
        if name in ("solve", "converge"):
            cmd.add_argument("--out", required=True, help="output CSV path")
        if name == "converge":
            cmd.add_argument("--no-timings", action="store_true",
                             help="zero the wall_time_ms column for reproducible bytes")
    return parser


def _run_solve(args) -> int:
    cfg = load_config(args.config)
    n = max(cfg.N_list)
    u0 = cfg.initial_data()
    if cfg.problem == "homogeneous":
        report = solve_homogeneous(cfg.operator, u0, cfg.alpha, cfg.t, n, gamma=cfg.gamma)
    else:
        q = order_to_q(cfg.alpha)
        report = solve_inhomogeneous(cfg.operator, u0, cfg.forcing,
                                     InhomogeneousConfig(q_order=q, N=n, t=cfg.t))
    emit_solution(report.value, args.out)
    print(f"solved {cfg.problem} problem at t={cfg.t:g} with N={n} "
          f"({report.nodes_used} nodes); wrote {args.out}")
    return EXIT_OK


def _run_converge(args) -> int:
    cfg = load_config(args.config)
    rows = run_convergence_study(cfg, threads=args.threads)
    emit_report(rows, args.out, include_timings=not args.no_timings)
    for row in rows:
        print(f"N={row.N:<6d} error={row.error:.6e} decay_factor={row.decay_factor:.6e}")
    print(f"wrote {args.out}")
    return EXIT_OK


def _run_verify(args) -> int:
    cfg = load_config(args.config)
    lines = run_residual_suite(cfg)
    worst = 0.0
    for line in lines:
        status = "pass" if line.passed else "FAIL"
        worst = max(worst, line.ode_residual, line.integral_eq_residual)
        print(f"lambda={line.eigenvalue:<12g} ode_residual={line.ode_residual:.3e} "
              f"integral_eq_residual={line.integral_eq_residual:.3e} [{status}]")
    if all(line.passed for line in lines):
        print(f"verify: pass (max residual {worst:.3e})")
        return EXIT_OK
    print(f"verify: FAIL (max residual {worst:.3e})")
    return EXIT_NUMERIC


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return _run_solve(args)
        if args.command == "converge":
            return _run_converge(args)
        return _run_verify(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except FracsincError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

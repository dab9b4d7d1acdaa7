"""Command-line entry point: ``trustdyn <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 invalid configuration,
3 numerical failure.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import equilibrium, stability
from .exceptions import ConfigError, TrustDynError, ValidationError
from .experiments import (
    PRESETS,
    ScanConfig,
    check,
    load_config,
    preset,
    sensitivity_scan,
    topology_compare,
    write_trajectory,
)
from .simulate import run
from .svg import emit_svg

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_range(text):
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"--range expects LO:HI[:COUNT], got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2]) if len(parts) == 3 else None
    except ValueError:
        raise UsageError(f"--range expects numbers, got {text!r}") from None
    return lo, hi, count


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON experiment config")
    common.add_argument("--preset", choices=sorted(PRESETS), help="start from a built-in config")
    common.add_argument("--seed", type=int, help="override the config seed")
    common.add_argument("--steps", type=int, help="override run.max_steps")
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--param", choices=stability.PARAMETERS, help="parameter to scan")
    common.add_argument("--range", metavar="LO:HI:COUNT", help="scan or search range")

    parser = _Parser(prog="trustdyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in [
        ("simulate", "run the dynamics and write the trajectory"),
        ("equilibrium", "print the closed-form equilibrium"),
        ("stability", "print the Jacobian spectrum"),
        ("scan", "sensitivity scan of one parameter"),
        ("boundary", "locate the stability boundary in one parameter"),
        ("topology", "compare random, echo-chamber and star networks"),
        ("validate", "check a config"),
    ]:
        sub.add_parser(name, parents=[common], help=text)
    return parser


def _config(args):
    if args.config and args.preset:
        raise UsageError("--config and --preset are mutually exclusive")
    if args.config:
        cfg = load_config(args.config)
    elif args.preset:
        cfg = preset(args.preset)
    elif args.command in ("scan", "boundary") and args.param:
        cfg = preset(f"{args.param}-scan")
    elif args.command == "topology":
        cfg = preset("topology")
    else:
        cfg = preset("default")
    if args.seed is not None:
        cfg.seed = args.seed
    if args.steps is not None:
        cfg.run.max_steps = args.steps
    if args.out is not None:
        cfg.output.directory = args.out
    problems = cfg.problems()
    if problems:
        raise ValidationError(problems)
    return cfg


def _complex(z):
    return f"{z.real:+.10f}{z.imag:+.10f}j"


def _cmd_simulate(cfg, args):
    params, net, init, _ = cfg.build()
    traj = run(init, params, net, cfg.run.max_steps, cfg.run.conv_tol, cfg.run.div_threshold)
    out = Path(cfg.output.directory)
    path = write_trajectory(out / "trajectory.csv", traj)
    if "svg" in cfg.output.formats:
        emit_svg({f"T{i}": (traj.times, traj.T[:, i]) for i in range(net.n)},
                 "trust trajectories", out / "trajectory_trust.svg", clip=cfg.run.div_threshold)
        emit_svg({f"S{i}": (traj.times, traj.S[:, i]) for i in range(net.n)},
                 "event intensity", out / "trajectory_events.svg", clip=cfg.run.div_threshold)
    print(f"verdict: {traj.verdict}")
    print(f"steps: {len(traj) - 1}")
    if traj.converged_at is not None:
        print(f"converged_at: {traj.converged_at}")
    print(f"wrote {path}")


def _cmd_equilibrium(cfg, args):
    params, net, init, _ = cfg.build()
    sol = equilibrium.solve(params, net, init.T1)
    np.set_printoptions(precision=10)
    print(f"T*: {sol.T_star}")
    print(f"S*: {sol.S_star}")
    print(f"residual: {sol.fixed_point_residual:.3e}")
    print(f"cond(I-AW): {sol.cond_IAW:.3e}  cond(uI-vY): {sol.cond_uv:.3e}")
    print(f"valid: {sol.valid}")


def _cmd_stability(cfg, args):
    params, net, _, _ = cfg.build()
    report = stability.spectrum(params, net)
    for z in sorted(report.eigenvalues, key=lambda z: (-abs(z), z.real, z.imag)):
        print(f"  {_complex(z)}  |lambda|={abs(z):.10f}")
    print(f"rho: {report.rho:.10f}")
    verdict = "critical" if report.critical else ("stable" if report.stable else "unstable")
    print(f"verdict: {verdict}")


def _cmd_scan(cfg, args):
    if args.param or args.range:
        scan = cfg.scan or ScanConfig()
        if args.param:
            scan.param = args.param
        if args.range:
            lo, hi, count = _parse_range(args.range)
            scan.lo, scan.hi = lo, hi
            if count is not None:
                scan.count = count
        cfg.scan = scan
    if cfg.scan is None:
        raise UsageError("scan needs --param or a config with a scan block")
    problems = cfg.problems()
    if problems:
        raise ValidationError(problems)
    rows, path = sensitivity_scan(cfg)
    unstable = [r.param_value for r in rows if not r.stable]
    print(f"rows: {len(rows)}")
    if unstable:
        print(f"first unstable {cfg.scan.param}: {unstable[0]:.6g}")
    print(f"wrote {path}")


def _cmd_boundary(cfg, args):
    name = args.param or (cfg.scan.param if cfg.scan else None)
    if name is None:
        raise UsageError("boundary needs --param")
    lo, hi, count = _parse_range(args.range) if args.range else (0.0, 1.0, None)
    params, net, _, _ = cfg.build()
    kwargs = {"grid": count} if count else {}
    result = stability.find_boundary(name, params, net, (lo, hi), **kwargs)
    print(f"{name}*: {result.critical_value:.10f}")
    print(f"rho at critical: {result.rho_at_critical:.10f}")
    print(f"bracket: [{result.bracket[0]:.10f}, {result.bracket[1]:.10f}]")
    print(f"iterations: {result.iterations}")


def _cmd_topology(cfg, args):
    report = topology_compare(cfg)
    for kind, o in report.items():
        if o.error:
            print(f"{kind.value}: failed ({o.error})")
            continue
        b = o.boundaries
        print(f"{kind.value}: rho={o.rho:.6f} verdict={o.trajectory.verdict} "
              f"beta*={b['beta']:.6f} gamma*={b['gamma']:.6f} alpha*={b['alpha']:.6f}")
    print(f"wrote {Path(cfg.output.directory) / 'topology_summary.csv'}")


def _cmd_validate(cfg, args):
    report = check(cfg)
    for message in report.warnings:
        print(f"warning: {message}")
    if len(report):
        for message in report.violations:
            print(f"violation: {message}", file=sys.stderr)
        return EXIT_INVALID
    print("ok")


COMMANDS = {
    "simulate": _cmd_simulate,
    "equilibrium": _cmd_equilibrium,
    "stability": _cmd_stability,
    "scan": _cmd_scan,
    "boundary": _cmd_boundary,
    "topology": _cmd_topology,
    "validate": _cmd_validate,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        return COMMANDS[args.command](cfg, args) or EXIT_OK
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TrustDynError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""
CLI Runner Module
Command-line entry point: family runs, report emission and the acceptance suite

Usage:
    python src/cli_runner.py hypersurface --d 4
    python src/cli_runner.py veronese --g 2 --json out/vero.json
    python src/cli_runner.py accept --quick
"""

import argparse
import os
import sys
import time

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from acceptance import run_acceptance
from errors import (
    FieldModeError,
    InvariantViolation,
    NormalReductionError,
    ParameterRangeError,
    UnsupportedVariantError,
)
from report_writer import Report, ReportWriter
from run_config import RunConfig, build_config
from sweeps import (
    run_blowup,
    run_ci_bound,
    run_graph,
    run_hyperelliptic,
    run_hypersurface,
    run_star,
    run_veronese,
)

EXIT_OK = 0
EXIT_ACCEPTANCE = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3

USAGE_ERRORS = (FieldModeError, ParameterRangeError, UnsupportedVariantError)


def _require(config: RunConfig, *names):
    missing = [name for name in names if getattr(config, name) is None]
    if missing:
        raise ParameterRangeError(f"{config.command} needs --{', --'.join(missing)}")


def cmd_hypersurface(config: RunConfig) -> Report:
    _require(config, 'd')
    report = run_hypersurface(config.d, config.field, config.seed, config.n_max, config.window)
    return Report(config.command, config.echo(), qseq=[report])


def cmd_blowup(config: RunConfig) -> Report:
    _require(config, 'd', 'r')
    report = run_blowup(config.d, config.r, config.field, config.seed, config.n_max, config.window)
    return Report(config.command, config.echo(), qseq=[report])


def cmd_veronese(config: RunConfig) -> Report:
    _require(config, 'g')
    report = run_veronese(config.g, config.field, config.window,
                          inject_fault=config.inject_fault == 'closure', u_max=config.u_max)
    return Report(config.command, config.echo(), qseq=[report])


def cmd_hyperelliptic(config: RunConfig) -> Report:
    _require(config, 'g')
    report, bound, values = run_hyperelliptic(config.g, config.b or 1)
    return Report(config.command, config.echo(), qseq=[report] if report else [], bounds=[bound], values=values)


def cmd_ci_bound(config: RunConfig) -> Report:
    _require(config, 'degrees')
    bound, values = run_ci_bound(config.degrees)
    return Report(config.command, config.echo(), bounds=[bound], values=values)


def cmd_graph(config: RunConfig) -> Report:
    _require(config, 'graph_file')
    _, checks, values = run_graph(config.graph_file)
    return Report(config.command, config.echo(), checks=checks, values=values)


def cmd_star(config: RunConfig) -> Report:
    _require(config, 'd', 'r')
    _, checks, values = run_star(config.d, config.r)
    return Report(config.command, config.echo(), checks=checks, values=values)


COMMANDS = {
    'hypersurface': cmd_hypersurface,
    'blowup-family': cmd_blowup,
    'veronese': cmd_veronese,
    'hyperelliptic': cmd_hyperelliptic,
    'ci-bound': cmd_ci_bound,
    'graph': cmd_graph,
    'star': cmd_star,
}


def run(config: RunConfig) -> Report:
    """Dispatch to the subcommand and emit the report"""
    report = COMMANDS[config.command](config)
    writer = ReportWriter()
    writer.print_report(report)
    if config.json_path:
        writer.save_json(report, config.json_path)
    if config.csv_path:
        writer.save_csv(report, config.csv_path)
    return report


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--field', type=str, default=None, help="rationals or fp:<p>")
    common.add_argument('--nmax', dest='n_max', type=int, default=None)
    common.add_argument('--umax', dest='u_max', type=int, default=None)
    common.add_argument('--window', type=int, default=None)
    common.add_argument('--seed', type=int, default=None)
    common.add_argument('--jobs', type=int, default=None)
    common.add_argument('--json', dest='json_path', type=str, default=None)
    common.add_argument('--csv', dest='csv_path', type=str, default=None)
    common.add_argument('--config', dest='config_path', type=str, default=None)
    common.add_argument('--timing', action='store_true', default=None)
    common.add_argument('--inject-fault', dest='inject_fault', type=str, default=None, help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(description="Normal reduction numbers, q(nI) sequences and resolution cycles")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('hypersurface', parents=[common], help="I = m on a plane-curve cone")
    p.add_argument('--d', type=int)
    p = sub.add_parser('blowup-family', parents=[common], help="I = (L) + m^(r+1)")
    p.add_argument('--d', type=int)
    p.add_argument('--r', type=int)
    p = sub.add_parser('veronese', parents=[common], help="the Veronese example with nr < br")
    p.add_argument('--g', type=int)
    p = sub.add_parser('hyperelliptic', parents=[common], help="closed forms for hyperelliptic cones")
    p.add_argument('--g', type=int)
    p.add_argument('--b', type=int)
    p = sub.add_parser('ci-bound', parents=[common], help="br bound for complete-intersection cones")
    p.add_argument('--degrees', type=int, nargs='+')
    p = sub.add_parser('graph', parents=[common], help="cycle checks for a dual graph file")
    p.add_argument('--file', dest='graph_file', type=str)
    p = sub.add_parser('star', parents=[common], help="star graph of the blowup family")
    p.add_argument('--d', type=int)
    p.add_argument('--r', type=int)
    p = sub.add_parser('accept', parents=[common], help="run the acceptance suite")
    p.add_argument('--quick', action='store_true', default=None)
    return parser


def main(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    command = args.pop('command')
    config_path = args.pop('config_path')
    started = time.perf_counter()
    try:
        config = build_config(command, args, config_path)
        if command == 'accept':
            status = EXIT_ACCEPTANCE if run_acceptance(config) else EXIT_OK
        else:
            report = run(config)
            status = EXIT_OK if report.passed else EXIT_INVARIANT
    except USAGE_ERRORS as e:
        # messages to stderr, exit code to the shell
        print(f"✗ usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as e:
        print(f"✗ invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except NormalReductionError as e:
        print(f"✗ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    # timing on stderr only
    if config.timing:
        print(f"elapsed {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return status


if __name__ == '__main__':
    sys.exit(main())

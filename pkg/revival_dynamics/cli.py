"""Command line: run a scenario, print its time scales or validate its config."""
import argparse
import json
import sys

from loguru import logger

from revival_dynamics.errors import ConfigError, RevivalError
from revival_dynamics.runner.config import load_config
from revival_dynamics.runner.scenario import get_runner, write_report, write_series


def _setup_parser():
    parser = argparse.ArgumentParser(prog="revival-dynamics", add_help=False)
    parser.add_argument("--help", "-h", action="help")
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, required=True)
    common.add_argument("--quiet", action="store_true", help="hide the progress bar")
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")

    run = subparsers.add_parser("run", parents=[common], help="sweep and write series + report")
    run.add_argument("--out-series", type=str, default=None)
    run.add_argument("--out-report", type=str, default=None)
    run.add_argument("--threads", type=int, default=0, help="worker processes, 0 = auto")

    subparsers.add_parser("timescales", parents=[common], help="print T_cl, T_rev and n_bar")
    subparsers.add_parser("validate", parents=[common], help="print the normalized config")
    return parser


def _configure_logging(args):
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if args.verbose else "INFO")


def run_command(args, config):
    if args.threads < 0:
        raise ConfigError("--threads must be nonnegative")
    result = get_runner(config).run(threads=args.threads, quiet=args.quiet)
    write_series(result.series, args.out_series or config.outputs.series)
    write_report(result.report, args.out_report or config.outputs.report)


def timescales_command(args, config):
    runner = get_runner(config)
    coeffs = runner.expand()
    _, both = runner.timescales(coeffs)
    summary = {
        "n_bar": coeffs.central_level(),
        "closed_form": {
            "t_classical": both["closed_form"].t_classical,
            "t_revival": both["closed_form"].t_revival,
        },
        "spectrum": {
            "t_classical": both["spectrum"].t_classical,
            "t_revival": both["spectrum"].t_revival,
        },
    }
    print(json.dumps(summary, indent=2, sort_keys=True))


def validate_command(args, config):
    print(config.model_dump_json(indent=2))
    print("digest {}".format(config.digest()))


COMMANDS = {
    "run": run_command,
    "timescales": timescales_command,
    "validate": validate_command,
}


def main(argv=None):
    """
    Run one subcommand and return its exit code.
    Sample command:
    ```
    python simulations/run_scenario.py run --config simulations/configs/bouncer_z0_100.json
    ```
    """
    parser = _setup_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)
    try:
        config = load_config(args.config)
        COMMANDS[args.command](args, config)
    except RevivalError as err:
        logger.error("{}: {}", type(err).__name__, err)
        return err.exit_code
    return 0

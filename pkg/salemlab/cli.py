"""Command line front end: ``salemlab <command> [--config PATH] [--seed N] ...``."""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from .commands import COMMANDS, build_coordinator
from .core.config import settings
from .core.exceptions import EXIT_CONFIG, EXIT_OK, SalemLabError
from .core.logging_config import configure_logging
from .schemas.run_schemas import CommandTask
from .services.storage import load_run_config

logger = logging.getLogger(__name__)

MEASURE_COMMANDS = ("fourier-scan", "dim", "verify", "export")
PRODUCT_COMMANDS = ("fourier-scan", "dim")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML or JSON run configuration")
    common.add_argument("--seed", type=int, help="override the configured seed")
    common.add_argument("--threads", type=int, help="worker threads for scans (default: all cores)")
    common.add_argument("--out", help="output directory")
    common.add_argument("--log-level", default=None, help="logging level (default from settings)")

    parser = _Parser(prog="salemlab", description="Random Cantor measures and Fourier dimension desk checks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for command_cls in COMMANDS:
        cmd = sub.add_parser(command_cls.name, parents=[common], help=(command_cls.__doc__ or "").strip())
        if command_cls.name in MEASURE_COMMANDS:
            cmd.add_argument("--measure", help="construction record JSON")
        if command_cls.name in PRODUCT_COMMANDS:
            cmd.add_argument("--product", help="set description (YAML/JSON) of the measure nu")
    return parser


def _task_config(args: argparse.Namespace) -> Dict[str, Any]:
    config = load_run_config(args.config) if args.config else {}
    if args.seed is not None:
        config["seed"] = args.seed
    if args.out is not None:
        config["out_dir"] = args.out
    if getattr(args, "measure", None):
        config["measure"] = args.measure
    if getattr(args, "product", None):
        config["product"] = load_run_config(args.product)
    return config


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        Exit code: 0 ok, 1 usage or configuration, 2 construction failure,
        3 numerical nonconvergence
    """
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as e:
        print(f"salemlab: {e}", file=sys.stderr)
        return EXIT_CONFIG

    configure_logging(args.log_level)
    if args.threads is not None:
        if args.threads < 1:
            logger.error("--threads must be at least 1")
            return EXIT_CONFIG
        settings.THREADS = args.threads

    try:
        task = CommandTask(command=args.command, config=_task_config(args))
        result = build_coordinator(args.out).route_task(task)
    except SalemLabError as e:
        logger.error(f"{args.command}: {e}")
        return e.exit_code
    except ValidationError as e:
        logger.error(f"{args.command}: invalid configuration: {e}")
        return EXIT_CONFIG

    print(json.dumps(result.model_dump(mode="json"), sort_keys=True, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

# main.py - Batch front-end (degrees, kunneth, rate, mix, validate-catalog)
import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional

from rich.console import Console

from actions.degrees import cmd_degrees
from actions.kunneth import cmd_kunneth
from actions.mix import PAIRS, cmd_mix
from actions.rate import cmd_rate
from actions.validate import cmd_validate_catalog
from util.config import RunConfig, config_path, resolve_config
from util.errors import LabError

logger = logging.getLogger(__name__)
console = Console(stderr=True)

COMMANDS: Dict[str, Callable[[RunConfig], dict]] = {
    "degrees": cmd_degrees,
    "kunneth": cmd_kunneth,
    "rate": cmd_rate,
    "mix": cmd_mix,
    "validate-catalog": cmd_validate_catalog,
}

# argparse dest -> RunConfig field
DEST_TO_FIELD = {"catalog": "catalog_path", "out": "output_dir", "blocks": "mc_blocks"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="YAML config (default: $KAHLERMIX_CONFIG, then config.yaml)")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR")
    common.add_argument("--catalog", default=None, help="catalog JSON file")
    common.add_argument("--instance", default=None, help="catalog label")
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--margin-delta0", type=float, default=None)
    common.add_argument("--n-max", type=int, default=None)
    common.add_argument("--samples", type=int, default=None, help="Monte Carlo sample count (0 skips)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--blocks", type=int, default=None, help="Monte Carlo block count")
    common.add_argument("--delta", type=float, default=None)
    common.add_argument("--beta", type=float, default=None)
    common.add_argument("--beta-prime", type=float, default=None)
    common.add_argument("--radius", type=int, default=None)
    common.add_argument("--pair", choices=PAIRS, default=None)
    common.add_argument("--svg", action="store_true", default=None)
    common.add_argument("--complete", action="store_true", default=None,
                        help="all Kunneth summands of H^{k,k}(X x X)")
    common.add_argument("--refined", action="store_true", default=None,
                        help="accept delta from the refined interval")

    parser = argparse.ArgumentParser(
        prog="kahlermix",
        description="Dynamical degrees, spectral gaps and mixing checks for Kahler automorphisms",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def cli_values(args: argparse.Namespace) -> dict:
    values = {}
    for dest, value in vars(args).items():
        if dest in ("command", "config"):
            continue
        values[DEST_TO_FIELD.get(dest, dest)] = value
    return values


def run(argv: Optional[List[str]] = None) -> int:
    """Parse, run one command, and map failures to exit codes (0, 1, 2)."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 1 if e.code else 0

    level = (args.log_level or "INFO").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s [%(levelname)s] %(message)s",
    )
    try:
        cfg = resolve_config(cli_values(args), config_path(args.config))
        logging.getLogger().setLevel(getattr(logging, cfg.log_level.upper(), logging.INFO))
        COMMANDS[args.command](cfg)
    except LabError as e:
        logger.error("%s: %s", args.command, e)
        console.print(f"[bold red]{type(e).__name__}:[/bold red] {e}")
        return e.exit_code
    except (OSError, json.JSONDecodeError, ValueError) as e:
        logger.error("%s: %s", args.command, e)
        console.print(f"[bold red]Input error:[/bold red] {e}")
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

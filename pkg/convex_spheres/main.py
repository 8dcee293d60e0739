#!/usr/bin/env python3
"""convex-spheres command-line entry point."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import logzero
from logzero import logger

from . import __version__
from .commands import COMMAND_TABLE, CommandResult
from .config import COMMANDS, ConfigManager, RunConfig
from .errors import ConfigError, ConvexSpheresError, GeometryError, ParseError, ResourceLimit
from .exports import to_json, write_text

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_LIMIT = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convex-spheres",
        description="Closed-set lattices, reflected spheres and enriched counts of convex geometries.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", required=True, type=Path, help="geometry JSON document")
    parser.add_argument("--out", type=Path, help="directory for the report and exports (default: stdout)")
    parser.add_argument("--m-max", type=int, help="largest m for the enriched counts")
    parser.add_argument("--emit", help="comma-separated export formats: json,dot,off")
    parser.add_argument("--max-facets", type=int, help="facet cap for complexes")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    return parser


def emit(result: CommandResult, out: Optional[Path]) -> None:
    report = to_json(result.document())
    if out is None:
        sys.stdout.write(report)
        if result.files:
            logger.warning("no --out directory, skipped exports: %s", ", ".join(sorted(result.files)))
        return
    path = write_text(out, f"{result.command}.json", report)
    logger.info("wrote %s", path)
    for name, text in sorted(result.files.items()):
        logger.info("wrote %s", write_text(out, name, text))


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig.merged(
            ConfigManager().config,
            command=args.command,
            input=args.input,
            out=args.out,
            m_max=args.m_max,
            max_facets=args.max_facets,
            emit=args.emit.split(",") if args.emit else None,
            verbose=args.verbose,
        )
        logzero.loglevel(getattr(logging, config.log_level.upper(), logging.INFO))
        result = COMMAND_TABLE[config.command](config)
        emit(result, config.out)
    except OSError as e:
        logger.error("cannot write output: %s", e)
        return EXIT_INPUT_ERROR
    except ResourceLimit as e:
        logger.error("resource limit: %s", e)
        return EXIT_RESOURCE_LIMIT
    except (ParseError, ConfigError, GeometryError) as e:
        logger.error("input error: %s", e)
        return EXIT_INPUT_ERROR
    except ConvexSpheresError as e:
        logger.error("%s", e)
        return EXIT_INPUT_ERROR
    if not result.passed:
        failed = [c.name for c in result.checks if not c.passed]
        logger.warning("failed checks: %s", ", ".join(failed))
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main():
    """Main entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Shared utilities for CLI commands."""

import logging

import click
from msr import CodeParams
from rich.logging import RichHandler

from ..config import MSRConfig, load_config
from ..output import err_console


def resolve_params(n: int, k: int, p: int | None, cfg: MSRConfig | None = None) -> CodeParams:
    """Build code parameters from CLI options, falling back to the configured modulus.

    Args:
        n: Code length
        k: Number of data nodes
        p: Optional prime modulus from --p
        cfg: Loaded configuration (loaded on demand when omitted)

    Returns:
        Validated CodeParams
    """
    if p is None:
        cfg = cfg or load_config()
        p = cfg.modulus
    return CodeParams.create(n, k, p=p)


def parse_helpers(ctx: click.Context, param: click.Parameter, value: str | None) -> list[int] | None:
    """Click callback turning "1,2,3" into [1, 2, 3]."""
    if value is None:
        return None
    try:
        helpers = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter("helpers must be comma-separated node indices, e.g. 1,2,3")
    if len(set(helpers)) != len(helpers):
        raise click.BadParameter("helpers must not repeat a node")
    return helpers


def configure_logging(verbosity: int, cfg: MSRConfig | None) -> None:
    """Route the library's loggers to a rich handler on stderr.

    -v selects INFO, -vv DEBUG; otherwise the configured log level applies.
    """
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.getLevelName(cfg.log_level if cfg else "WARNING")
    logger = logging.getLogger("msr")
    logger.handlers.clear()
    logger.addHandler(RichHandler(console=err_console, show_path=False, rich_tracebacks=False))
    logger.setLevel(level)


__all__ = ["configure_logging", "parse_helpers", "resolve_params"]

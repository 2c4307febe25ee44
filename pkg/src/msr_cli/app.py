"""Main CLI application."""

import click

from . import __version__
from .commands import coding, config_cmd, configure_logging, params, repair, verify
from .config import load_config
from .exceptions import ConfigError


@click.group()
@click.version_option(version=__version__, prog_name="msr")
@click.option("--verbose", "-v", count=True, help="Log progress (-v) or debug detail (-vv)")
def cli(verbose: int):
    """MSR CLI - explicit MSR array codes: encode, decode, repair and verify."""
    try:
        cfg = load_config()
    except ConfigError:
        cfg = None
    configure_logging(verbose, cfg)


# Register commands
cli.add_command(params.params)
cli.add_command(coding.encode)
cli.add_command(coding.decode)
cli.add_command(repair.repair)
cli.add_command(verify.verify)
cli.add_command(verify.bench)
cli.add_command(config_cmd.config)


if __name__ == "__main__":
    cli()

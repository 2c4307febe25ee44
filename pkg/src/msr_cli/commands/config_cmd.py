"""Configuration commands."""

import click
from pydantic import ValidationError

from ..config import CONFIG_KEYS, MSRConfig, get_config_file, load_config, save_config
from ..output import print_error, print_info, print_success


@click.group(name="config")
def config():
    """Manage MSR CLI configuration."""
    pass


@config.command(name="init")
def init():
    """Initialize configuration interactively."""
    print_info("MSR CLI Configuration Setup")
    print_info(f"Configuration will be saved to: {get_config_file()}")
    print_info("")

    modulus = click.prompt(
        "Default prime modulus (0 for automatic)",
        type=int,
        default=0,
        show_default=True,
    )
    output_format = click.prompt(
        "Default output format",
        type=click.Choice(["table", "json"]),
        default="table",
        show_default=True,
    )
    max_sweep_n = click.prompt(
        "Largest n for exhaustive verification",
        type=int,
        default=12,
        show_default=True,
    )
    seed = click.prompt("Random seed", type=int, default=0, show_default=True)
    log_level = click.prompt(
        "Log level",
        type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]),
        default="WARNING",
        show_default=True,
    )

    try:
        save_config(
            modulus=modulus or None,
            output_format=output_format,
            max_sweep_n=max_sweep_n,
            seed=seed,
            log_level=log_level,
        )
        print_success(f"Configuration saved to {get_config_file()}")
    except Exception as e:
        print_error(f"Failed to save configuration: {e}")
        raise click.Abort()


@config.command(name="show")
def show():
    """Show current configuration."""
    try:
        cfg = load_config()

        print_info("Current Configuration:")
        print_info("")
        print_info(f"  Modulus: {cfg.modulus or '(automatic)'}")
        print_info(f"  Default Output Format: {cfg.output_format}")
        print_info(f"  Max Sweep n: {cfg.max_sweep_n}")
        print_info(f"  Seed: {cfg.seed}")
        print_info(f"  Log Level: {cfg.log_level}")
        print_info("")
        print_info(f"Config file: {get_config_file()}")

    except Exception as e:
        print_error(f"Failed to load configuration: {e}")
        raise click.Abort()


@config.command(name="set")
@click.argument("key")
@click.argument("value")
def set_value(key: str, value: str):
    """Set a configuration value.

    Examples:
        msr config set modulus 263
        msr config set output_format json
        msr config set log_level INFO
    """
    if key not in CONFIG_KEYS:
        print_error(f"Invalid configuration key: {key}")
        print_info(f"Valid keys: {', '.join(CONFIG_KEYS)}")
        raise click.Abort()

    try:
        # Validate through the settings model before touching the file
        checked = MSRConfig.model_validate({key: value})
        save_config(**{key: getattr(checked, key)})
        print_success(f"Configuration updated: {key} = {getattr(checked, key)}")

    except ValidationError as e:
        print_error(f"Invalid value for {key}: {e.errors()[0]['msg']}")
        raise click.Abort()
    except Exception as e:
        print_error(f"Failed to update configuration: {e}")
        raise click.Abort()

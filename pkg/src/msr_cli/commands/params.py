"""Code parameter commands."""

from pathlib import Path

import click
from msr.exceptions import MSRError
from msr.models.storage import Manifest
from msr.repair import cut_set_bound
from msr.storage import check_file_mode

from . import resolve_params
from ..config import load_config
from ..output import output_params, print_error, print_success


@click.command(name="params")
@click.option("--n", "n", type=int, required=True, help="Code length (multiple of 3)")
@click.option("--k", "k", type=int, required=True, help="Number of data nodes")
@click.option("--p", "p", type=int, help="Prime modulus (default: smallest prime >= max(2n+1, 257))")
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write a manifest template for this instance",
)
@click.option(
    "--output",
    "-o",
    type=click.Choice(["table", "json"]),
    help="Output format",
)
def params(n: int, k: int, p: int | None, out: Path | None, output: str | None):
    """Show the parameters of an (n, k) instance.

    Examples:
        msr params --n 9 --k 5
        msr params --n 3 --k 1 --p 263
        msr params --n 9 --k 5 --out manifest.toml --output json
    """
    try:
        cfg = load_config()
        output_format = output or cfg.output_format
        code = resolve_params(n, k, p, cfg)
        check_file_mode(code)

        data = {
            "n": code.n,
            "k": code.k,
            "r": code.r,
            "d": code.d,
            "ell": code.ell,
            "p": code.p,
            "lambdas": list(code.lambdas),
            "repair_symbols": code.d * code.ell // 2,
            "cut_set_bound": cut_set_bound(code),
        }
        output_params(data, output_format)

        if out is not None:
            Manifest(n=code.n, k=code.k, p=code.p, lambdas=list(code.lambdas)).save(out)
            print_success(f"Manifest written to {out}")

    except MSRError as e:
        print_error(str(e))
        raise click.Abort()
    except Exception as e:
        print_error(f"Unexpected error: {e}")
        raise click.Abort()

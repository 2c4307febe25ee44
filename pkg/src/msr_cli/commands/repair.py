"""Node repair command."""

from pathlib import Path

import click
from msr.exceptions import MSRError
from msr.storage import repair_chunk

from . import parse_helpers
from ..config import load_config
from ..output import output_repair, print_error, print_success, print_warning


@click.command(name="repair")
@click.argument("manifest", type=click.Path(exists=True, path_type=Path))
@click.option("--failed", type=int, required=True, help="Index of the lost node")
@click.option(
    "--helpers",
    callback=parse_helpers,
    required=True,
    help="Comma-separated indices of the k+1 helper nodes",
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Where to write the regenerated chunk (default: its manifest location)",
)
@click.option(
    "--output",
    "-o",
    type=click.Choice(["table", "json"]),
    help="Output format",
)
def repair(manifest: Path, failed: int, helpers: list[int], out: Path | None, output: str | None):
    """Regenerate one lost chunk from k+1 helper chunks.

    Each helper contributes half of its symbols, so the download meets the
    cut-set bound.

    Examples:
        msr repair chunks/ --failed 0 --helpers 1,2,3,4,5,6
        msr repair chunks/ --failed 8 --helpers 0,1,2,3,4,5 --out node-008.chunk
    """
    try:
        cfg = load_config()
        output_format = output or cfg.output_format
        transcript = repair_chunk(manifest, failed, helpers, out)

        data = transcript.model_dump()
        data["symbols_per_stripe"] = transcript.symbols_per_stripe
        data["optimal"] = transcript.optimal
        output_repair(data, output_format)

        if output_format == "table":
            if transcript.optimal:
                print_success(
                    f"optimal: yes ({transcript.symbols_per_stripe} symbols per stripe "
                    f"= cut-set bound {transcript.cut_set_bound})"
                )
            else:
                print_warning(f"optimal: no (cut-set bound {transcript.cut_set_bound})")

    except MSRError as e:
        print_error(str(e))
        raise click.Abort()
    except Exception as e:
        print_error(f"Unexpected error: {e}")
        raise click.Abort()

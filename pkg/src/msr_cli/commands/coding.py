"""File encode and decode commands."""

from pathlib import Path

import click
from msr.exceptions import MSRError
from msr.storage import available_nodes, decode_file, encode_file

from . import resolve_params
from ..config import load_config
from ..output import output_detail, print_error, print_info, print_success


@click.command(name="encode")
@click.argument("source", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--n", "n", type=int, required=True, help="Code length (multiple of 3)")
@click.option("--k", "k", type=int, required=True, help="Number of data nodes")
@click.option("--p", "p", type=int, help="Prime modulus, at least 257")
@click.option(
    "--out",
    type=click.Path(file_okay=False, path_type=Path),
    required=True,
    help="Directory receiving the chunks and manifest.toml",
)
@click.option(
    "--output",
    "-o",
    type=click.Choice(["table", "json"]),
    help="Output format",
)
def encode(source: Path, n: int, k: int, p: int | None, out: Path, output: str | None):
    """Encode a file into n chunk files.

    Examples:
        msr encode data.bin --n 9 --k 5 --out chunks/
        msr encode data.bin --n 6 --k 4 --p 263 --out chunks/
    """
    try:
        cfg = load_config()
        output_format = output or cfg.output_format
        params = resolve_params(n, k, p, cfg)
        manifest = encode_file(source, out, params)

        output_detail(
            manifest.model_dump(exclude={"lambdas"}),
            [("Length", "length"), ("Stripes", "stripes"), ("Chunks", "chunks")],
            "Encoded",
            output_format,
        )
        print_success(f"Wrote {len(manifest.chunks)} chunks to {out}")

    except MSRError as e:
        print_error(str(e))
        raise click.Abort()
    except Exception as e:
        print_error(f"Unexpected error: {e}")
        raise click.Abort()


@click.command(name="decode")
@click.argument("manifest", type=click.Path(exists=True, path_type=Path))
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="Path of the restored file",
)
def decode(manifest: Path, out: Path):
    """Restore the original file from any k chunks.

    MANIFEST is a manifest.toml or the directory holding it.

    Examples:
        msr decode chunks/ --out restored.bin
        msr decode chunks/manifest.toml --out restored.bin
    """
    try:
        info, present = available_nodes(manifest)
        missing = [node for node in range(info.n) if node not in present]
        if missing:
            print_info(f"Chunks missing for nodes {', '.join(map(str, missing))}; decoding")
        decode_file(manifest, out)
        print_success(f"Restored {info.length} bytes to {out}")

    except MSRError as e:
        print_error(str(e))
        raise click.Abort()
    except Exception as e:
        print_error(f"Unexpected error: {e}")
        raise click.Abort()

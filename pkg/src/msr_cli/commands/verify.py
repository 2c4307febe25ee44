"""Verification sweep and benchmark commands."""

from pathlib import Path

import click
from msr.exceptions import MSRError
from msr.verify import bench as run_bench
from msr.verify import sweep_mds, sweep_repair, sweep_types

from . import resolve_params
from ..config import load_config
from ..output import (
    format_fraction,
    output_bench,
    output_sweep_summary,
    print_error,
    print_info,
    print_success,
)


@click.command(name="verify")
@click.option("--n", "n", type=int, required=True, help="Code length (multiple of 3)")
@click.option("--k", "k", type=int, required=True, help="Number of data nodes")
@click.option("--p", "p", type=int, help="Prime modulus")
@click.option("--seed", type=int, help="Seed of the random codeword (default: config seed)")
@click.option("--types/--no-types", default=True, help="Also check det(M) for every type vector")
@click.option(
    "--report",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write one 'kind pattern result bandwidth' line per case",
)
@click.option(
    "--output",
    "-o",
    type=click.Choice(["table", "json"]),
    help="Output format",
)
def verify(
    n: int,
    k: int,
    p: int | None,
    seed: int | None,
    types: bool,
    report: Path | None,
    output: str | None,
):
    """Exhaustively check decoding and repair of an instance.

    Every r-subset of nodes is erased and decoded, and every node is
    repaired from every helper set of size k+1.

    Examples:
        msr verify --n 9 --k 5
        msr verify --n 6 --k 4 --report sweep.txt
        msr verify --n 9 --k 5 --no-types --output json
    """
    try:
        cfg = load_config()
        output_format = output or cfg.output_format
        params = resolve_params(n, k, p, cfg)
        seed = cfg.seed if seed is None else seed

        parts = [
            sweep_mds(params, seed, cfg.max_sweep_n),
            sweep_repair(params, seed, cfg.max_sweep_n),
        ]
        if types:
            parts.append(sweep_types(params, cfg.max_sweep_n))
        records = [rec for part in parts for rec in part.records]
        combined = parts[0].model_copy(update={"records": records})

        rows = [
            {
                "kind": kind,
                "passed": combined.passed(kind),
                "total": combined.total(kind),
                "ok": combined.passed(kind) == combined.total(kind),
            }
            for kind in ("mds", "repair", "type")
            if combined.total(kind)
        ]
        output_sweep_summary(rows, output_format)

        if report is not None:
            report.write_text("\n".join(combined.to_lines()) + "\n")
            print_info(f"Report written to {report}")

        lines = [combined.summary(("mds", "repair"))]
        if types:
            lines.append(combined.summary(("type",)))
        if not combined.ok:
            for line in lines:
                print_error(line)
            raise click.Abort()
        for line in lines:
            print_success(line)

    except click.Abort:
        raise
    except MSRError as e:
        print_error(str(e))
        raise click.Abort()
    except Exception as e:
        print_error(f"Unexpected error: {e}")
        raise click.Abort()


@click.command(name="bench")
@click.option("--n", "n", type=int, required=True, help="Code length (multiple of 3)")
@click.option("--k", "k", type=int, required=True, help="Number of data nodes")
@click.option("--p", "p", type=int, help="Prime modulus")
@click.option("--trials", type=click.IntRange(min=1), default=100, show_default=True, help="Stripes per measurement")
@click.option(
    "--output",
    "-o",
    type=click.Choice(["table", "json"]),
    help="Output format",
)
def bench(n: int, k: int, p: int | None, trials: int, output: str | None):
    """Time encode, decode and repair and compare repair to naive download.

    Examples:
        msr bench --n 9 --k 5
        msr bench --n 6 --k 2 --trials 1000 --output json
    """
    try:
        cfg = load_config()
        output_format = output or cfg.output_format
        params = resolve_params(n, k, p, cfg)
        result = run_bench(params, trials, cfg.seed)

        data = result.model_dump()
        data["ratio"] = result.ratio
        if output_format == "json":
            data["ratio"] = f"{result.ratio.numerator}/{result.ratio.denominator}"
        output_bench(data, output_format)
        if output_format == "table":
            print_info(f"repair/naive = {format_fraction(result.ratio)}")

    except MSRError as e:
        print_error(str(e))
        raise click.Abort()
    except Exception as e:
        print_error(f"Unexpected error: {e}")
        raise click.Abort()

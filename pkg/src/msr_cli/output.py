"""Output formatting utilities."""

import json
from fractions import Fraction
from typing import Any

from rich.console import Console
from rich.json import JSON
from rich.table import Table

console = Console()
err_console = Console(stderr=True)


def format_fraction(value: Fraction) -> str:
    """Render an exact ratio as "a/b (decimal)"."""
    return f"{value.numerator}/{value.denominator} ({float(value):.4g})"


def format_value(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "✓ Yes" if value else "✗ No"
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, (list, tuple)):
        return ", ".join(str(v) for v in value)
    return str(value)


def output_json(data: Any) -> None:
    """Output data as formatted JSON.

    Args:
        data: Data to output
    """
    if isinstance(data, str):
        console.print(data)
    else:
        json_str = json.dumps(data, indent=2, ensure_ascii=False, default=str)
        console.print(JSON(json_str))


def output_table(
    data: list[dict[str, Any]],
    columns: list[tuple[str, str]],
    title: str | None = None,
) -> None:
    """Output data as a table.

    Args:
        data: List of data items
        columns: List of (header, key) tuples defining table columns
        title: Optional table title
    """
    if not data:
        console.print("[dim]No data to display[/dim]")
        return

    table = Table(title=title, show_header=True, header_style="bold cyan")
    for header, _ in columns:
        table.add_column(header)
    for item in data:
        table.add_row(*(format_value(item.get(key)) for _, key in columns))

    console.print(table)


def output_detail(
    data: dict[str, Any],
    fields: list[tuple[str, str]],
    title: str,
    output_format: str = "table",
) -> None:
    """Output one record as a two-column property table, or as JSON.

    Args:
        data: Record to show
        fields: (label, key) pairs selecting what the table shows
        title: Table title
        output_format: Output format ("table" or "json")
    """
    if output_format == "json":
        output_json(data)
        return

    table = Table(show_header=False, title=title)
    table.add_column("Property", style="bold cyan")
    table.add_column("Value")
    for label, key in fields:
        if key in data:
            table.add_row(label, format_value(data[key]))
    console.print(table)


def output_params(params: dict[str, Any], output_format: str = "table") -> None:
    fields = [
        ("n", "n"),
        ("k", "k"),
        ("r = n-k", "r"),
        ("d = k+1", "d"),
        ("ell = 2^(n/3)", "ell"),
        ("p", "p"),
        ("Lambdas", "lambdas"),
        ("Repair download", "repair_symbols"),
        ("Cut-set bound", "cut_set_bound"),
    ]
    output_detail(params, fields, "Code Parameters", output_format)


def output_repair(transcript: dict[str, Any], output_format: str = "table") -> None:
    fields = [
        ("Failed node", "failed"),
        ("Helpers", "helpers"),
        ("Stripes", "stripes"),
        ("Symbols downloaded", "symbols_downloaded"),
        ("Symbols per stripe", "symbols_per_stripe"),
        ("Cut-set bound", "cut_set_bound"),
        ("Optimal", "optimal"),
    ]
    output_detail(transcript, fields, "Repair", output_format)


def output_sweep_summary(rows: list[dict[str, Any]], output_format: str = "table") -> None:
    if output_format == "json":
        output_json(rows)
        return
    columns = [("Check", "kind"), ("Passed", "passed"), ("Total", "total"), ("Result", "ok")]
    output_table(rows, columns, title="Verification")


def output_bench(result: dict[str, Any], output_format: str = "table") -> None:
    fields = [
        ("n", "n"),
        ("k", "k"),
        ("p", "p"),
        ("ell", "ell"),
        ("Trials", "trials"),
        ("Encode (s/stripe)", "encode_seconds"),
        ("Decode (s/stripe)", "decode_seconds"),
        ("Repair (s/stripe)", "repair_seconds"),
        ("Repair download", "repair_symbols"),
        ("Naive download", "naive_symbols"),
        ("Cut-set bound", "cut_set_bound"),
        ("Ratio", "ratio"),
    ]
    output_detail(result, fields, "Benchmark", output_format)


def print_success(message: str) -> None:
    """Print success message.

    Args:
        message: Success message
    """
    console.print(f"[green]✓[/green] {message}")


def print_error(message: str) -> None:
    """Print error message.

    Args:
        message: Error message
    """
    console.print(f"[red]✗[/red] {message}")


def print_warning(message: str) -> None:
    """Print warning message."""
    console.print(f"[yellow]⚠[/yellow] {message}")


def print_info(message: str) -> None:
    """Print info message."""
    console.print(f"[blue]ℹ[/blue] {message}")

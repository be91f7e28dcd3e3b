"""Command-line front end: generate, analyze, sample, distinguish, sweep.

Exit codes: 0 success, 2 usage or input error, 3 internal invariant
violation.  All commands are deterministic given the same seed and flags.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import sys

import click

from .channel import read_trace_file, sample_batch, write_trace_file
from .construct import (
    alternating_pair,
    analyze_pair,
    hard_pair,
    read_pair_file,
    write_pair_file,
)
from .distinguish import mean_based_distinguish, potential_distinguish
from .errors import InvariantViolation
from .polynomial import (
    CircleParams,
    circle_supremum,
    multiplicity_at_one,
    string_difference,
)
from .channel import exact_mean_profile
from .strings import BitString

__all__ = ["main"]


def _trap_internal_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InvariantViolation as exc:
            click.echo(f"internal invariant violation: {exc}", err=True)
            sys.exit(3)

    return wrapper


def _parse_params(text: str) -> CircleParams:
    try:
        return CircleParams.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"bad probability {text!r}: {exc}")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="ascii") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)


def _render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    lines = [f"{key}: {value}" for key, value in sorted(payload.items())]
    return "\n".join(lines) + "\n"


@click.group()
def main() -> None:
    """Toolkit for distinguishing bit strings from deletion-channel traces."""


@main.command()
@click.option("--k", type=int, required=True, help="Odd construction order.")
@click.option("--prefix", default="", help="Explicit shared prefix bits.")
@click.option(
    "--prefix-random",
    type=int,
    default=None,
    help="Generate a random prefix of this length from --seed.",
)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_trap_internal_errors
def generate(k, prefix, prefix_random, seed, out) -> None:
    """Write a hard pair file for order --k."""
    if k < 1 or k % 2 == 0:
        raise click.UsageError("k must be an odd positive integer")
    if prefix_random is not None:
        if prefix:
            raise click.UsageError("--prefix and --prefix-random are exclusive")
        prefix = BitString.random(prefix_random, seed).bits
    try:
        spec = hard_pair(k, prefix)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    meta = {"family": "hard", "k": k, "prefix_len": len(spec.prefix), "p": None}
    info = (
        f"n={spec.n} length={len(spec.x)} "
        f"predicted_multiplicity={k + 2}"
    )
    if out:
        write_pair_file(out, spec.x, spec.y, meta)
        click.echo(info)
    else:
        payload = {"x": spec.x.bits, "y": spec.y.bits, "meta": meta}
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
        click.echo(info, err=True)


@main.command()
@click.option("--pair", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--p", default="1/2", show_default=True)
@click.option("--grid", type=int, default=1 << 16, show_default=True)
@click.option("--refine", type=int, default=6, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "text"]),
    default="json",
    show_default=True,
)
@_trap_internal_errors
def analyze(pair, p, grid, refine, out, fmt) -> None:
    """Full analysis of a pair file: distances, multiplicity, certified sup."""
    params = _parse_params(p)
    x, y, _ = read_pair_file(pair)
    if x == y:
        raise click.UsageError("strings must differ")
    try:
        analysis = analyze_pair(x, y, params, grid=grid, refine_rounds=refine)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(_render(analysis.to_json(), fmt), out)


@main.command()
@click.option("--string", "source", required=True, help="Source bit string.")
@click.option("--p", default="1/2", show_default=True)
@click.option("--num", "-T", "num", type=int, required=True, help="Trace count.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_trap_internal_errors
def sample(source, p, num, seed, out) -> None:
    """Draw reproducible traces of --string through the deletion channel."""
    params = _parse_params(p)
    if num < 1:
        raise click.UsageError("--num must be positive")
    try:
        x = BitString(source)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    batch = sample_batch(x, params, seed, num)
    if out:
        write_trace_file(out, batch)
    else:
        click.echo(f"# n={batch.source_length} p={params.p_text()} seed={seed}")
        for trace in batch.traces:
            click.echo(trace.bits)


@main.command()
@click.option("--pair", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--traces", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option(
    "--method",
    type=click.Choice(["mean", "potential"]),
    default="mean",
    show_default=True,
)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "text"]),
    default="json",
    show_default=True,
)
@_trap_internal_errors
def distinguish(pair, traces, method, out, fmt) -> None:
    """Run a mean-based distinguisher on a trace file against a pair file."""
    x, y, _ = read_pair_file(pair)
    try:
        batch = read_trace_file(traces)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    try:
        if method == "potential":
            decision = potential_distinguish(batch, x, y, batch.params)
        else:
            decision = mean_based_distinguish(batch, x, y, batch.params)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(_render(decision.to_json(), fmt), out)


@main.command()
@click.option(
    "--family",
    type=click.Choice(["hard", "intro"]),
    default="hard",
    show_default=True,
    help="hard: generated pairs by order k; intro: alternating probe pairs by j.",
)
@click.option("--k", "k_list", default="1,3,5", show_default=True)
@click.option("--p", default="1/2", show_default=True)
@click.option("--grid", type=int, default=1 << 16, show_default=True)
@click.option("--refine", type=int, default=6, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_trap_internal_errors
def sweep(family, k_list, p, grid, refine, out) -> None:
    """Emit one CSV row per swept parameter value, sorted ascending."""
    params = _parse_params(p)
    try:
        values = sorted({int(v) for v in k_list.split(",") if v.strip()})
    except ValueError:
        raise click.UsageError(f"bad --k list {k_list!r}")
    if not values:
        raise click.UsageError("--k must list at least one value")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        [
            "family",
            "k",
            "n",
            "sup_lo",
            "sup_hi",
            "multiplicity",
            "pte_degree",
            "l1_separation",
        ]
    )
    for value in values:
        if family == "hard":
            try:
                spec = hard_pair(value)
            except ValueError as exc:
                raise click.UsageError(str(exc))
            x, y = spec.x, spec.y
        else:
            if value < 0:
                raise click.UsageError("intro indices must be nonnegative")
            x, y = alternating_pair(value)
        gap = string_difference(x, y)
        cert = circle_supremum(gap, params, grid, refine)
        multiplicity, _ = multiplicity_at_one(gap)
        separation = float(
            exact_mean_profile(x, params).l1_distance(exact_mean_profile(y, params))
        )
        writer.writerow(
            [
                family,
                value,
                len(x),
                repr(cert.lower),
                repr(cert.upper),
                multiplicity,
                multiplicity - 1,
                repr(separation),
            ]
        )
    _emit(buffer.getvalue(), out)

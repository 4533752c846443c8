"""carmlab command line: enumeration, constants, formulas, search, tables.

Every subcommand emits either CSV (default) or JSON via --format. The cache
directory comes from --cache-dir, falling back to the CARMLAB_CACHE
environment variable, falling back to no caching at all.
"""
from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field
from typing import Optional

import click

from . import asymptotics, constants, opqbt
from .carmichael import (
    SIEVE_CAP,
    enumerate_carmichael_kprime,
    enumerate_carmichael_sieve,
)
from .core_arith import DEFAULT_SEGMENT_SIZE
from .pseudoprime import ENUMERATION_CAP, count_psp
from .reports import MODES, emit_table
from .tables import CountTable
from .verify import all_passed, format_report, run_all


@dataclass
class RunConfig:
    """Caps, cutoffs, and plumbing shared across subcommands."""

    enumeration_cap: int = ENUMERATION_CAP
    sieve_cap: int = SIEVE_CAP
    segment_size: int = DEFAULT_SEGMENT_SIZE
    o1: float = 0.0
    output_format: str = "csv"
    cache_dir: Optional[str] = None
    threads: int = 1

    def __post_init__(self) -> None:
        if self.enumeration_cap > ENUMERATION_CAP or self.sieve_cap > SIEVE_CAP:
            raise ValueError("caps cannot exceed the compiled maxima")
        if self.segment_size < 1 << 10:
            raise ValueError("segment size too small to be useful")
        if self.output_format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


def _emit(table: CountTable, cfg: RunConfig) -> None:
    if cfg.output_format == "json":
        click.echo(table.to_json())
    else:
        click.echo(table.to_csv(), nl=False)


@click.group()
@click.option("--format", "output_format", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--cache-dir", default=None, help="cache directory; env CARMLAB_CACHE is the fallback")
@click.option("--threads", type=int, default=1)
@click.pass_context
def main(ctx: click.Context, output_format: str, cache_dir: Optional[str], threads: int) -> None:
    if cache_dir is None:
        cache_dir = os.environ.get("CARMLAB_CACHE") or None
    ctx.obj = RunConfig(output_format=output_format, cache_dir=cache_dir, threads=threads)


@main.group()
def carmichael() -> None:
    """Carmichael number enumeration."""


@carmichael.command("enumerate")
@click.option("--bound", type=int, required=True)
@click.option("--k", type=int, default=None, help="restrict to exactly k prime factors")
@click.option("--method", type=click.Choice(["sieve", "construct"]), default="sieve")
@click.pass_obj
def carmichael_enumerate(cfg: RunConfig, bound: int, k: Optional[int], method: str) -> None:
    if method == "construct":
        if k is None:
            raise click.UsageError("--method construct requires --k")
        records = enumerate_carmichael_kprime(bound, k)
    else:
        records = enumerate_carmichael_sieve(
            bound, threads=cfg.threads, cache_dir=cfg.cache_dir
        )
        if k is not None:
            records = [r for r in records if r.k == k]
    table = CountTable(name="carmichael", columns=["n", "k", "factors", "g", "primitive"])
    for rec in records:
        table.add_row(
            [rec.n, rec.k, "*".join(str(p) for p in rec.factors), rec.g, rec.primitive]
        )
    _emit(table, cfg)


@main.group()
def psp() -> None:
    """Fermat pseudoprime counting."""


@psp.command("count")
@click.option("--bound", type=int, required=True)
@click.option("--base", type=int, default=2)
@click.option("--omega", type=int, default=None, help="also report this omega class only")
@click.pass_obj
def psp_count(cfg: RunConfig, bound: int, base: int, omega: Optional[int]) -> None:
    counts = count_psp(
        bound, base, segment_size=cfg.segment_size,
        threads=cfg.threads, cache_dir=cfg.cache_dir,
    )
    ks = sorted(counts.by_omega) if omega is None else [omega]
    table = CountTable(
        name="psp_count",
        columns=["bound", "base", "total"] + [f"omega{k}" for k in ks],
    )
    table.add_row([bound, base, counts.total] + [counts.by_omega.get(k, 0) for k in ks])
    _emit(table, cfg)


@main.command("constants")
@click.option("--name", type=click.Choice(["T", "C", "lambda", "kappa3", "tau3"]), required=True)
@click.option("--cutoff", type=int, default=10**6, help="prime or series cutoff")
@click.option("--rs-cutoff", type=int, default=10**6, help="C only: cap on the product rs")
@click.pass_obj
def constants_eval(cfg: RunConfig, name: str, cutoff: int, rs_cutoff: int) -> None:
    if name == "T":
        est = constants.T_const(cutoff)
    elif name == "C":
        est = constants.C_const(rs_cutoff, cutoff)
    elif name == "lambda":
        est = constants.lambda_const(cutoff)
    elif name == "kappa3":
        est = constants.kappa3_partial(min(cutoff, 10**4), 10**5)
    else:
        kappa = constants.kappa3_partial(min(cutoff, 10**4), 10**5)
        lam = constants.lambda_const(10**7)
        value = constants.tau3(kappa.value, lam.value)
        table = CountTable(name="tau3", columns=["name", "value", "note"])
        table.add_row(["tau3", f"{value:.4f}", "from partial kappa_3; converges slowly"])
        _emit(table, cfg)
        return
    table = CountTable(
        name=name, columns=["name", "value", "terms", "prime_cutoff", "target"]
    )
    table.add_row([name, f"{est.value:.6f}", est.terms_used, est.prime_cutoff, est.target])
    _emit(table, cfg)


@main.group()
def asy() -> None:
    """Closed-form bounds and conjectural formulas."""


@asy.command("eval")
@click.option("--formula", required=True,
              help="one of the named bounds, or L|h|beta|a|heuristic-N")
@click.option("--x", type=float, required=True)
@click.option("--o1", type=float, default=0.0)
@click.option("--count", type=int, default=None, help="observed count, for h and beta")
@click.pass_obj
def asy_eval(cfg: RunConfig, formula: str, x: float, o1: float, count: Optional[int]) -> None:
    table = CountTable(name="asy_eval", columns=["formula", "x", "value"])
    if formula == "L":
        value = asymptotics.L_fn(x)
    elif formula in ("h", "beta"):
        if count is None:
            raise click.UsageError(f"--formula {formula} requires --count")
        fn = asymptotics.h_of if formula == "h" else asymptotics.beta_of
        value = fn(x, count)
    elif formula == "a":
        value = asymptotics.a_of(x, o1)
    elif formula == "heuristic-N":
        value = asymptotics.heuristic_N(x, o1)
    else:
        values, omitted = asymptotics.bound_formulas(x, o1)
        if formula in omitted:
            raise click.ClickException(f"{formula} undefined here: {omitted[formula]}")
        if formula not in values:
            raise click.UsageError(
                f"unknown formula {formula}; bounds: {sorted(values)}"
            )
        value = values[formula].value
    table.add_row([formula, x, f"{value:.6g}"])
    _emit(table, cfg)


@asy.command("table")
@click.option("--name", type=click.Choice(["h", "beta", "table3", "table8"]), required=True)
@click.option("--mode", type=click.Choice(list(MODES)), default="paper")
@click.option("--bound", type=int, default=10**6, help="computed-mode enumeration bound")
@click.pass_obj
def asy_table(cfg: RunConfig, name: str, mode: str, bound: int) -> None:
    index = {"h": 2, "beta": 5, "table3": 3, "table8": 8}[name]
    table = emit_table(index, mode=mode, bound=bound,
                       threads=cfg.threads, cache_dir=cfg.cache_dir)
    _emit(table, cfg)


@main.group()
def opqbt_group() -> None:
    """Quadratic-ring probable prime test."""


main.add_command(opqbt_group, name="opqbt")


@opqbt_group.command("search")
@click.option("--limit", type=int, required=True)
@click.option("--policy", default="default", help="default, or all-u:U for exhaustive u < U")
@click.pass_obj
def opqbt_search(cfg: RunConfig, limit: int, policy: str) -> None:
    if policy == "default":
        pol = opqbt.UPolicy()
    elif policy.startswith("all-u:"):
        pol = opqbt.UPolicy(mode="all-u", u_max=int(policy.split(":", 1)[1]))
    else:
        raise click.UsageError("policy must be 'default' or 'all-u:U'")
    summary = opqbt.search_counterexamples(limit, pol)
    table = CountTable(name="opqbt_hits", columns=["n", "u", "epsilon", "basic", "strong"])
    for v in summary.hits:
        table.add_row([v.n, v.u, v.epsilon, v.passes_basic, v.passes_strong])
    _emit(table, cfg)
    click.echo("scanned,hits,bound")
    click.echo(f"{summary.scanned},{len(summary.hits)},{summary.limit}")


@main.command("table")
@click.option("--name", type=click.IntRange(1, 8), required=True)
@click.option("--mode", type=click.Choice(list(MODES)), default="paper")
@click.option("--bound", type=int, default=10**6, help="computed-mode enumeration bound")
@click.pass_obj
def table_cmd(cfg: RunConfig, name: int, mode: str, bound: int) -> None:
    table = emit_table(name, mode=mode, bound=bound,
                       threads=cfg.threads, cache_dir=cfg.cache_dir)
    _emit(table, cfg)


@main.command("verify")
@click.option("--level", type=click.Choice(["quick", "full"]), default="quick")
def verify_cmd(level: str) -> None:
    results = run_all(level)
    click.echo(format_report(results))
    if not all_passed(results):
        sys.exit(1)


if __name__ == "__main__":
    main()

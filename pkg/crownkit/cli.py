#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

import os
from contextlib import contextmanager

import click

from crownkit import (
    EXIT_CAP,
    EXIT_INPUT,
    EXIT_VIOLATION,
    CapExceeded,
    CrownkitError,
    __version__,
    fatal_error,
)
from crownkit.blocks import (
    NotAPartition,
    NotTransitive,
    all_block_systems,
    maximal_block_systems,
)
from crownkit.catalog import (
    CatalogError,
    build_entry,
    load_catalog,
    read_catalog_file,
)
from crownkit.crowns import FrattiniFactorError, compute_crown, delta_count
from crownkit.lattice import (
    chief_series,
    generated_subgroup,
    maximal_overgroups,
)
from crownkit.permcore import (
    NotASubgroup,
    NotInGroup,
    Permutation,
    PermutationError,
)
from crownkit.settings import config, configure_logging, logger
from crownkit.verify import SUITES, run_suite, write_report

INPUT_ERRORS = (
    CatalogError,
    PermutationError,
    NotInGroup,
    NotASubgroup,
    NotTransitive,
    NotAPartition,
)


@contextmanager
def exit_codes():
    try:
        yield
    except CapExceeded as e:
        fatal_error(e, EXIT_CAP)
    except INPUT_ERRORS as e:
        fatal_error(e, EXIT_INPUT)
    except CrownkitError as e:
        fatal_error(e, EXIT_VIOLATION)


def load_group(spec: str):
    if os.path.isfile(spec):
        entries = read_catalog_file(spec)
        if len(entries) != 1:
            raise CatalogError(
                "{} holds {} groups, expected one".format(spec, len(entries))
            )
        entry = entries[0]
    else:
        entry = build_entry(spec)
    return entry.group()


def parse_generators(text: str, degree: int):
    return [
        Permutation.from_cycles(part, degree)
        for part in text.split(";")
        if part.strip()
    ]


@click.group()
@click.version_option(__version__, prog_name="crownkit")
@click.option("--log-level", default=None, help="Overrides LOG_LEVEL.")
def main(log_level):
    """Maximal subgroups, block systems and crowns of permutation groups."""
    if log_level:
        config["LOG_LEVEL"] = log_level.upper()
    configure_logging()


@main.command()
@click.option("--group", "group_spec", required=True)
@click.option("--point", default=1, show_default=True, help="1-based.")
@click.option("--all/--maximal", "show_all", default=False)
@click.option("--exclude-trivial", is_flag=True)
def blocks(group_spec, point, show_all, exclude_trivial):
    """Print the (maximal) block systems of a transitive group."""
    with exit_codes():
        G = load_group(group_spec)
        if not 1 <= point <= G.degree:
            raise PermutationError(
                "point {} outside degree {}".format(point, G.degree)
            )
        if show_all:
            systems = all_block_systems(G, point - 1)
            if exclude_trivial:
                systems = [P for P in systems if not P.is_trivial()]
        else:
            systems = maximal_block_systems(
                G, point - 1, exclude_trivial=exclude_trivial
            )
        for P in systems:
            click.echo(str(P))


@main.command()
@click.option("--group", "group_spec", required=True)
@click.option(
    "--subgroup",
    "subgroup_spec",
    default="",
    help='Generators in cycle notation separated by ";".',
)
def maxsub(group_spec, subgroup_spec):
    """Print max(H,G) and the maximal subgroups of G containing H."""
    with exit_codes():
        G = load_group(group_spec)
        H = generated_subgroup(G, parse_generators(subgroup_spec, G.degree))
        maximals = [] if H.is_whole() else maximal_overgroups(G, H)
        click.echo("index\t{}".format(H.index))
        click.echo("max\t{}".format(len(maximals)))
        for M in maximals:
            click.echo("{}\t{}".format(M.order, M.describe()))


@main.command()
@click.option("--group", "group_spec", required=True)
@click.option("--seed", default=0, show_default=True)
def crowns(group_spec, seed):
    """Print a chief series, delta per factor and the crowns."""
    with exit_codes():
        G = load_group(group_spec)
        series = chief_series(G, seed)
        for i, F in enumerate(series.factors, start=1):
            flags = []
            if F.is_abelian:
                flags.append("abelian")
            if F.is_frattini:
                flags.append("frattini")
            click.echo(
                "factor {}\t{}\t|{}|\t{}".format(
                    i, F.describe(), F.order, ",".join(flags) or "-"
                )
            )
        for i, F in enumerate(series.factors, start=1):
            try:
                crown = compute_crown(G, F)
            except FrattiniFactorError:
                click.echo(
                    "factor {}\tdelta={}\tfrattini".format(
                        i, delta_count(G, F, seed)
                    )
                )
                continue
            click.echo(
                "factor {}\tdelta={}\tR={}\tI={}\tL_A=order {}".format(
                    i,
                    crown.delta,
                    crown.R.describe(),
                    crown.I.describe(),
                    crown.L_A.order,
                )
            )


@main.command()
@click.option(
    "--catalog", "catalog_spec", default="builtin", show_default=True
)
@click.option(
    "--suite",
    type=click.Choice(SUITES + ("all",)),
    default="all",
    show_default=True,
)
@click.option("--max-order", type=int, default=None)
@click.option("--jobs", type=int, default=None)
@click.option("--baseline", type=click.Path(dir_okay=False), default=None)
@click.option(
    "--out",
    required=True,
    type=click.Path(dir_okay=False, writable=True),
)
def verify(catalog_spec, suite, max_order, jobs, baseline, out):
    """Run a verification suite over a catalog and write the report."""
    with exit_codes():
        entries = load_catalog(catalog_spec)
        result = run_suite(
            entries,
            suite=suite,
            jobs=jobs,
            max_order=max_order,
            baseline=baseline,
        )
        write_report(result, out)
        logger.info("cli: report written to {}".format(out))
        click.echo(
            "{} rows, {} failures".format(
                len(result.rows), len(result.failures)
            )
        )
        if result.failures:
            raise CrownkitError(
                "{} checks failed, first: {} {} {}".format(
                    len(result.failures),
                    result.failures[0].check,
                    result.failures[0].group_name,
                    result.failures[0].H_descriptor,
                )
            )


if __name__ == "__main__":
    main()

"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource
cap refusal.  Data goes to stdout or --output; diagnostics go to stderr.
Counts are printed as decimal strings, never floats.
"""

from __future__ import annotations

import csv
import io
import json
import sys
import time

import click

from .asymptotics import Table2Row, correction_log, spa_alpha12, verify_lemmas
from .criteria import exact_criterion, grid_heatmap
from .enumeration import count_a1, count_a2, count_a12
from .margins import MarginError, load_spec, make_spec, semiregular

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def _emit(text: str, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _rows_to_csv(fieldnames, rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames)
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _spec_from_options(spec_file, n, p, a, phi0, phi1):
    if spec_file is not None:
        with open(spec_file) as fh:
            return load_spec(fh.read())
    if n is None or p is None or a is None:
        raise MarginError("provide --spec-file or all of --N, --P, --a")
    try:
        a_vals = [int(v) for v in str(a).split(",")]
        phi0_vals = [int(v) for v in str(phi0).split(",")] if phi0 is not None else [0]
        phi1_vals = [int(v) for v in str(phi1).split(",")] if phi1 is not None else [0]
    except ValueError as exc:
        raise MarginError(f"margins must be comma-separated integers: {exc}") from exc
    if len(a_vals) == 1 and len(phi0_vals) == 1 and len(phi1_vals) == 1:
        return semiregular(n, p, a_vals[0], phi0_vals[0], phi1_vals[0])
    if len(phi0_vals) == 1 and phi0 is None:
        phi0_vals = [0] * p
    if len(phi1_vals) == 1 and phi1 is None:
        phi1_vals = [0] * p
    return make_spec(n, p, a_vals, phi0_vals, phi1_vals)


spec_options = [
    click.option("--spec-file", type=click.Path(exists=True, dir_okay=False), default=None),
    click.option("--semiregular", "semiregular_flag", is_flag=True, default=False,
                 help="Scalar margins broadcast to constant vectors."),
    click.option("--N", "n", type=int, default=None),
    click.option("--P", "p", type=int, default=None),
    click.option("--a", default=None, help="Row tally (scalar or comma list)."),
    click.option("--phi0", default=None, help="Ancestry-0 dosage (scalar or comma list)."),
    click.option("--phi1", default=None, help="Ancestry-1 dosage (scalar or comma list)."),
]


def add_spec_options(fn):
    for opt in reversed(spec_options):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Exact and asymptotic enumeration of constrained admixed arrays."""


@main.command("count")
@click.option("--family", type=click.Choice(["a1", "a2", "a12"]), required=True)
@add_spec_options
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def cmd_count(family, spec_file, semiregular_flag, n, p, a, phi0, phi1, workers, fmt, output):
    """Count one constrained family exactly."""
    try:
        spec = _spec_from_options(spec_file, n, p, a, phi0, phi1)
        if workers < 1:
            raise MarginError("--workers must be >= 1")
    except (MarginError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    counter = {"a1": count_a1, "a2": count_a2, "a12": count_a12}[family]
    count = counter(spec, workers=workers) if family == "a12" else counter(spec)
    record = {
        "family": family,
        "N": spec.N,
        "P": spec.P,
        "count": str(count),
        "log2_count": count.log2(),
    }
    if fmt == "json":
        _emit(json.dumps(record) + "\n", output)
    else:
        _emit(_rows_to_csv(list(record), [record]), output)


@main.command("criterion")
@add_spec_options
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def cmd_criterion(spec_file, semiregular_flag, n, p, a, phi0, phi1, fmt, output):
    """Exact and entropy-based comparison of the two single-constraint counts."""
    try:
        spec = _spec_from_options(spec_file, n, p, a, phi0, phi1)
    except (MarginError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    report = exact_criterion(spec)
    record = {
        "exactDecision": report.exact_decision,
        "approxDecision": report.approx_decision,
        "agree": report.agree,
        "score": report.score,
    }
    if fmt == "json":
        _emit(json.dumps(record) + "\n", output)
    else:
        _emit(_rows_to_csv(list(record), [record]), output)


@main.command("table2")
@click.option("--max-exact", type=int, default=5, show_default=True)
@click.option("--large", default="", help='Comma list of large n, e.g. "100,1000,10000".')
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--budget-seconds", type=float, default=None,
              help="Soft cap on total exact-row time; exceeding it exits 3.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="csv")
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def cmd_table2(max_exact, large, workers, budget_seconds, fmt, output):
    """Exact versus approximate log2 counts for N = P = n."""
    if max_exact < 2:
        click.echo("error: --max-exact must be >= 2", err=True)
        sys.exit(EXIT_INPUT)
    try:
        large_ns = [int(v) for v in large.split(",") if v.strip()]
    except ValueError as exc:
        click.echo(f"error: bad --large list: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    rows = []
    start = time.monotonic()
    for n in range(2, max_exact + 1):
        if budget_seconds is not None and time.monotonic() - start > budget_seconds:
            click.echo(
                f"error: budget of {budget_seconds}s exhausted before exact row n={n}",
                err=True,
            )
            sys.exit(EXIT_RESOURCE)
        exact = count_a12(semiregular(n, n, n, n, n), workers=workers).log2()
        rows.append(
            Table2Row(
                n=n,
                alpha12_exact=exact,
                spa=spa_alpha12(n, n),
                diff_vs_indep=correction_log(n, n),
            )
        )
    for n in large_ns:
        rows.append(
            Table2Row(
                n=n,
                alpha12_exact=None,
                spa=spa_alpha12(n, n),
                diff_vs_indep=correction_log(n, n),
            )
        )
    records = [
        {
            "n": r.n,
            "alpha12_exact": "" if r.alpha12_exact is None else f"{r.alpha12_exact:.6f}",
            "spa": f"{r.spa:.6f}",
            "diff_vs_indep": f"{r.diff_vs_indep:.6f}",
        }
        for r in rows
    ]
    if fmt == "csv":
        _emit(_rows_to_csv(["n", "alpha12_exact", "spa", "diff_vs_indep"], records), output)
    else:
        _emit(json.dumps(records) + "\n", output)


@main.command("fig2")
@click.option("--N", "n", type=int, required=True)
@click.option("--P", "p", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="csv")
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def cmd_fig2(n, p, fmt, output):
    """Agreement heat map over the semi-regular margin grid."""
    if n < 2 or p < 2:
        click.echo("error: --N and --P must be >= 2", err=True)
        sys.exit(EXIT_INPUT)
    fraction, bins = grid_heatmap(n, p)
    records = [
        {
            "abar_bin_lo": f"{b.abar_lo:.6f}",
            "f_bin_lo": f"{b.f_lo:.6f}",
            "fraction_a1_larger": f"{b.fraction_a1_larger:.6f}",
            "approx_pred": f"{b.approx_pred:.6f}",
            "exact_frac": f"{b.exact_frac:.6f}",
            "disagree_frac": f"{b.disagree_frac:.6f}",
        }
        for b in bins
    ]
    click.echo(f"agreement fraction: {fraction:.6f}", err=True)
    if fmt == "csv":
        _emit(
            _rows_to_csv(
                [
                    "abar_bin_lo",
                    "f_bin_lo",
                    "fraction_a1_larger",
                    "approx_pred",
                    "exact_frac",
                    "disagree_frac",
                ],
                records,
            ),
            output,
        )
    else:
        _emit(json.dumps({"fraction": fraction, "bins": records}) + "\n", output)


@main.command("verify")
@click.option("--max-dim", type=int, default=6, show_default=True)
@click.option("--samples", type=int, default=10**6, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def cmd_verify(max_dim, samples, seed):
    """Numerically verify the auxiliary identities; exit 1 on any failure."""
    if max_dim < 2:
        click.echo("error: --max-dim must be >= 2", err=True)
        sys.exit(EXIT_INPUT)
    report = verify_lemmas(max_dim=max_dim, mc_samples=samples, seed=seed)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        click.echo(f"{status} {check.name}: {check.detail}")
    if not report.all_passed:
        sys.exit(EXIT_VERIFY_FAIL)


if __name__ == "__main__":
    main()

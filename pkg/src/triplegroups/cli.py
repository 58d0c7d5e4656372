"""Command-line entry point.  Every subcommand prints a JSON report.

Exit status is 0 when every check passes, 1 when any check fails or is
left unknown, and 2 on a usage error.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

from . import automorphisms as au
from .errors import TripleGroupsError
from .presentations import KINDS, DEFAULT_KBOUND, Presentation, presentation_of, verify
from .report import Report
from .rewriting import equal_modulo
from .rootsys import catalog_ids, load_catalog
from .suite import DEFAULT_SEED, full_suite
from .weyl import group_for
from .words import Word

type_option = click.option("--type", "type_id", default="A2~1", show_default=True, help="Catalog identifier, e.g. A4~2.")
out_option = click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the report here instead of stdout.")
seed_option = click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Seed for random samples.")


def _emit(report: Report, out: Path | None, timing: bool = True) -> None:
    text = report.dumps(timing)
    if out:
        out.write_text(text + "\n")
    else:
        click.echo(text)
    click.echo(report.summary_line(), err=True)
    sys.exit(0 if report.passed else 1)


def _data(type_id: str):
    try:
        return load_catalog(type_id)
    except TripleGroupsError as exc:
        raise click.BadParameter(str(exc), param_hint="--type") from None


def _word(text: str) -> Word:
    try:
        return Word.parse(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--word") from None


@click.group()
def main() -> None:
    """Double affine Weyl groups, triple groups and their presentations."""


@main.command()
@click.option("--include-gated", is_flag=True, help="Also list the gated B~2 types.")
@out_option
def catalog(include_gated: bool, out: Path | None) -> None:
    """List the shipped types with marks, comarks, l0 and lattice mode."""
    report = Report("catalog")
    types = []
    for type_id in catalog_ids(include_gated):
        data = load_catalog(type_id)
        try:
            data.check()
            ok, why = True, None
        except ValueError as exc:
            ok, why = False, str(exc)
        report.add(f"kernel:{type_id}", "marks and comarks span the kernels", ok, why)
        types.append({
            "type": type_id,
            "rank": data.n,
            "marks": list(data.marks),
            "comarks": list(data.comarks),
            "l0": data.l0,
            "alpha": data.alpha_index,
            "latticeMode": data.lattice_mode.value,
        })
    report.data["types"] = types
    _emit(report, out)


@main.command("eval")
@type_option
@click.option("--word", default="", help='Word in s01 s02 s03 s1..sn tau, e.g. "s01 s1^-1".')
@out_option
def eval_cmd(type_id: str, word: str, out: Path | None) -> None:
    """Normal form and reflection matrix of a word."""
    G = group_for(_data(type_id))
    w = _word(word)
    try:
        g = G.word_eval(w)
    except TripleGroupsError as exc:
        raise click.BadParameter(str(exc), param_hint="--word") from None
    m = G.rho_word(w)
    report = Report(f"eval:{type_id}")
    report.add("rho-decodes", "matrix decodes to the normal form", G.decode(m) == g)
    report.data.update({
        "word": str(w),
        "normalForm": g.to_json(),
        "describe": g.describe(),
        "isIdentity": g.is_identity(),
        "rho": [[str(x) for x in row] for row in m.rows()],
    })
    _emit(report, out)


def _kind_options(f):
    f = click.option("--kbound", type=click.IntRange(min=0), default=DEFAULT_KBOUND, show_default=True,
                     help="Truncation of the single-lace family.")(f)
    f = click.option("--kind", type=click.Choice(KINDS), default="daw", show_default=True)(f)
    return f


@main.command("verify")
@type_option
@_kind_options
@click.option("--mode", type=click.Choice(["both", "normal", "matrix"]), default="both", show_default=True)
@out_option
def verify_cmd(type_id: str, kind: str, kbound: int, mode: str, out: Path | None) -> None:
    """Check every relation under the canonical Weyl-level assignment."""
    P = presentation_of(kind, _data(type_id), kbound)
    _emit(verify(P, mode=mode), out)


@main.command()
@type_option
@_kind_options
@click.option("--json", "as_json", is_flag=True, help="Write the JSON form instead of text.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path))
def present(type_id: str, kind: str, kbound: int, as_json: bool, out: Path | None) -> None:
    """Print a presentation in text (or JSON) form."""
    P = presentation_of(kind, _data(type_id), kbound)
    text = json.dumps(P.to_json(), indent=2) + "\n" if as_json or (out and out.suffix == ".json") else P.to_text()
    if out:
        out.write_text(text)
    else:
        click.echo(text, nl=False)


def _load_presentation(path: Path) -> Presentation:
    text = path.read_text()
    try:
        return Presentation.from_json(json.loads(text)) if path.suffix == ".json" else Presentation.from_text(text)
    except (ValueError, KeyError, TripleGroupsError) as exc:
        raise click.BadParameter(f"{path}: {exc}", param_hint="--presentation") from None


@main.command()
@click.option("--presentation", "pres_file", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--lhs", required=True)
@click.option("--rhs", required=True)
@click.option("--max-nodes", type=click.IntRange(min=1), default=10**6, show_default=True)
@click.option("--max-len", type=click.IntRange(min=1), default=None, help="Longest intermediate word (default: longest end + 8).")
@click.option("--trace-out", type=click.Path(dir_okay=False, path_type=Path), help="Write the derivation as JSON lines.")
@out_option
def prove(pres_file: Path, lhs: str, rhs: str, max_nodes: int, max_len: int | None, trace_out: Path | None,
          out: Path | None) -> None:
    """Search for a derivation of lhs = rhs.  A failed search is 'unknown', not a disproof."""
    P = _load_presentation(pres_file)
    w1, w2 = _word(lhs), _word(rhs)
    try:
        res = equal_modulo(P, w1, w2, max_len=max_len, max_nodes=max_nodes)
    except TripleGroupsError as exc:
        raise click.BadParameter(str(exc)) from None
    report = Report(f"prove:{P.kind}:{P.type_id}")
    report.add("equal", "derivation found by rewriting search", True if res.proved else None,
               None if res.proved else res.stats)
    report.data["stats"] = res.stats
    if res.proved:
        report.data["steps"] = [s.to_json(i) for i, s in enumerate(res.trace.steps)]
        if trace_out:
            trace_out.write_text(res.trace.to_jsonl({"presentation": P.to_json()}))
    _emit(report, out)


@main.command()
@type_option
@click.option("--b3-word", default="a", show_default=True, help="Word in a b A B (A, B inverses) and e.")
@click.option("--check", "which", type=click.Choice(["descent", "center", "dual", "braid", "all"]), default="descent",
              show_default=True)
@seed_option
@out_option
def auto(type_id: str, b3_word: str, which: str, seed: int, out: Path | None) -> None:
    """Braid group and modular group actions at the Weyl level."""
    data = _data(type_id)
    try:
        word = au.parse_b3(b3_word)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--b3-word") from None
    if which == "descent":
        report = au.check_descent_diagram(data, word)
    elif which == "center":
        report = au.center_action_check(data)
    elif which == "dual":
        report = au.duality_involution_check(data)
    elif which == "braid":
        report = au.braid_relation_check(data)
    else:
        report = au.sl2z_suite(data, seed=seed)
    report.seed = seed
    if "e" not in word:
        report.data["pi"] = [list(r) for r in au.pi(word)]
    _emit(report, out)


@main.command("paper-suite")
@type_option
@seed_option
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes.")
@out_option
def suite_cmd(type_id: str, seed: int, jobs: int, out: Path | None) -> None:
    """Run every shipped fixture and invariant for one type."""
    _data(type_id)
    start = time.perf_counter()
    report = full_suite(type_id, seed=seed, jobs=jobs)
    report.timing["total"] = time.perf_counter() - start
    _emit(report, out)


if __name__ == "__main__":
    main()

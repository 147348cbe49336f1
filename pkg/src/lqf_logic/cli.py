"""
Command-line interface for LQF Logic.

Every subcommand prints either rich tables (human format) or a single JSON
object carrying ``"schema": "lqf/1"`` with sorted keys. Exit codes: 0 for an
affirmative verdict, 1 for a negative verdict with a witness, 2 for usage or
input errors.
"""

import functools
import json
import logging
import random
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar, cast

import click
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.table import Table

from .calculus import check_proof, expand_macros, load_proof, proof_to_document
from .catalog import catalog, resolve_lattice, resolve_structure, scope
from .conditions import alignment, check_iii_conditions, check_lqf_axioms, random_structure
from .core import center, is_directly_indecomposable
from .exceptions import LQFError, LQFFileError, PreconditionError
from .filters import classify_filter, enumerate_lqf_filters, enumerate_oml_filters, generate_filter
from .lattice import FiniteOml, read_json, verify_oml
from .matrix import (
    borchers_fails,
    coordinate_projectors,
    dimension_audit,
    is_partial_isometry,
    load_matrix,
    mvn_equivalent,
    partial_isometry_suite,
    rank_dimension,
    unitary_vs_perspective_demo,
)
from .models import SCHEMA_VERSION, LQFSettings, OutputFormat, RunConfig
from .search import countermodel, decide2, refute_finite_lqf, w0_uniqueness
from .terms import (
    eval_term,
    find_counter_valuation,
    named_valuation,
    parse,
    parse_equation,
    resolve_valuation,
    uses_w,
)

console = Console()
err_console = Console(stderr=True)

CommandT = TypeVar("CommandT", bound=Callable[..., Any])


def reports_errors(func: CommandT) -> CommandT:
    """Map library and validation errors to exit code 2."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except LQFError as e:
            err_console.print(f"[red]Error: {e}[/red]")
            sys.exit(2)
        except ValidationError as e:
            err_console.print(f"[red]Invalid input: {e.errors()[0]['msg']}[/red]")
            sys.exit(2)

    return cast(CommandT, wrapper)


def _run_config(
    ctx: click.Context, subcommand: str, inputs: Sequence[str] = (), **kw: Any
) -> RunConfig:
    return RunConfig(
        subcommand=subcommand,
        inputs=list(inputs),
        output_format=ctx.obj["format"],
        seed=ctx.obj["seed"],
        **kw,
    )


def _dump(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, list):
        return [_dump(v) for v in value]
    if isinstance(value, dict):
        return {k: _dump(v) for k, v in value.items()}
    return value


def _emit(
    config: RunConfig,
    payload: Dict[str, Any],
    code: int,
    rows: Optional[List[Tuple[str, str]]] = None,
    table: Optional[Table] = None,
) -> None:
    """Print the report and exit with the verdict's code."""
    if config.output_format == OutputFormat.JSON.value:
        document = {"schema": SCHEMA_VERSION, "command": config.subcommand, "exit_code": code}
        document.update(_dump(payload))
        click.echo(json.dumps(document, sort_keys=True, indent=2))
    else:
        if rows is not None:
            summary = Table(title=config.subcommand)
            summary.add_column("Property", style="cyan")
            summary.add_column("Value", style="green")
            for key, value in rows:
                summary.add_row(key, value)
            console.print(summary)
        if table is not None:
            console.print(table)
    sys.exit(code)


def _valuation_text(valuation: Dict[str, str]) -> str:
    return ", ".join(f"{k}={v}" for k, v in valuation.items()) or "-"


@click.group()
@click.option(
    "--format",
    "output_format",
    type=click.Choice([f.value for f in OutputFormat]),
    default=None,
    help="Report format (default from LQF_OUTPUT_FORMAT)",
)
@click.option("--seed", type=int, default=None, help="Seed for randomized suites")
@click.option("--max-size", type=int, default=None, help="Largest catalog lattice in default scope")
@click.option("--env-file", type=click.Path(dir_okay=False), help="Settings .env file")
@click.option("--verbose", "-v", is_flag=True, help="Enable debug logging")
@click.pass_context
def cli(
    ctx: click.Context,
    output_format: Optional[str],
    seed: Optional[int],
    max_size: Optional[int],
    env_file: Optional[str],
    verbose: bool,
) -> None:
    """LQF Logic - orthomodular lattices, the LQF equations and their calculus"""
    try:
        settings = LQFSettings.from_env(env_file)
        if seed is not None:
            settings.seed = seed
        if max_size is not None:
            settings.catalog_max_size = max_size
    except LQFError as e:
        err_console.print(f"[red]Error: {e}[/red]")
        sys.exit(2)
    except ValidationError as e:
        err_console.print(f"[red]Invalid option: {e.errors()[0]['msg']}[/red]")
        sys.exit(2)

    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, settings.log_level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    ctx.ensure_object(dict)
    ctx.obj["settings"] = settings
    ctx.obj["format"] = output_format or settings.output_format
    ctx.obj["seed"] = settings.seed
    ctx.obj["max_size"] = settings.catalog_max_size


# ---------------------------------------------------------------------------
# Catalog and lattices
# ---------------------------------------------------------------------------


@cli.group(name="catalog")
def catalog_group() -> None:
    """Browse the lattice catalog"""


@catalog_group.command(name="list")
@click.pass_context
@reports_errors
def catalog_list(ctx: click.Context) -> None:
    """List catalog lattices"""
    config = _run_config(ctx, "catalog list")
    entries = [
        {
            "name": L.name,
            "size": L.size,
            "center": len(center(L)),
            "indecomposable": is_directly_indecomposable(L),
        }
        for L in catalog(ctx.obj["max_size"])
    ]
    table = Table(title="Lattice catalog")
    table.add_column("Name", style="cyan")
    table.add_column("Size", justify="right")
    table.add_column("|Z(L)|", justify="right")
    table.add_column("Indecomposable")
    for entry in entries:
        table.add_row(
            entry["name"], str(entry["size"]), str(entry["center"]), str(entry["indecomposable"])
        )
    _emit(config, {"lattices": entries}, 0, table=table)


@catalog_group.command(name="show")
@click.argument("name")
@reports_errors
def catalog_show(name: str) -> None:
    """Dump a lattice as JSON"""
    L = resolve_lattice(name)
    click.echo(json.dumps(L.to_document().model_dump(exclude_none=True), sort_keys=True, indent=2))


@cli.command()
@click.argument("lattice")
@click.pass_context
@reports_errors
def check(ctx: click.Context, lattice: str) -> None:
    """Validate lattice tables against the orthomodular laws"""
    config = _run_config(ctx, "check", [lattice])
    if lattice.endswith(".json"):
        data = read_json(lattice)
        if not isinstance(data, dict):
            raise LQFFileError("a lattice document must be a JSON object", lattice)
        report = verify_oml(data)
    else:
        report = verify_oml(resolve_lattice(lattice))
    rows = [("Lattice", lattice), ("Orthomodular", str(report.ok))]
    if not report.ok:
        rows += [("Failing law", str(report.law)), ("Witness", ", ".join(report.witness))]
    _emit(config, {"report": report}, 0 if report.ok else 1, rows=rows)


@cli.command(name="eval")
@click.argument("term")
@click.argument("lattice")
@click.option("--val", "assignments", multiple=True, help="Variable binding name=element")
@click.pass_context
@reports_errors
def eval_command(ctx: click.Context, term: str, lattice: str, assignments: Tuple[str, ...]) -> None:
    """Evaluate a term under a valuation"""
    config = _run_config(ctx, "eval", [term, lattice])
    t = parse(term)
    S = resolve_structure(lattice) if uses_w(t) else resolve_lattice(lattice)
    bindings: Dict[str, str] = {}
    for item in assignments:
        name, sep, element = item.partition("=")
        if not sep:
            raise click.BadParameter(f"expected name=element, got {item!r}", param_hint="--val")
        bindings[name.strip()] = element.strip()
    valuation = resolve_valuation(S, bindings)
    value = eval_term(t, S, valuation)
    L = S if isinstance(S, FiniteOml) else S.base
    rows = [("Term", term), ("Valuation", _valuation_text(bindings)), ("Value", L.name_of(value))]
    _emit(config, {"term": term, "value": L.name_of(value)}, 0, rows=rows)


@cli.command()
@click.argument("equation")
@click.argument("lattice")
@click.pass_context
@reports_errors
def holds(ctx: click.Context, equation: str, lattice: str) -> None:
    """Check an equation under every valuation"""
    config = _run_config(ctx, "holds", [equation, lattice])
    eq = parse_equation(equation)
    S = resolve_structure(lattice) if uses_w(eq) else resolve_lattice(lattice)
    counter = find_counter_valuation(S, eq)
    witness = named_valuation(S, counter) if counter is not None else {}
    rows = [("Equation", equation), ("Holds", str(counter is None))]
    if counter is not None:
        rows.append(("Countervaluation", _valuation_text(witness)))
    _emit(config, {"holds": counter is None, "witness": witness}, 0 if counter is None else 1, rows)


@cli.command(name="countermodel")
@click.argument("equation")
@click.option("--scope", "scope_names", multiple=True, help="Lattices to search (default: catalog)")
@click.pass_context
@reports_errors
def countermodel_command(ctx: click.Context, equation: str, scope_names: Tuple[str, ...]) -> None:
    """Search the catalog for a lattice falsifying an equation"""
    config = _run_config(ctx, "countermodel", [equation], scope=list(scope_names))
    result = countermodel(equation, scope(scope_names, ctx.obj["max_size"]))
    rows = [("Equation", equation), ("Found", str(result.found))]
    if result.found:
        rows += [("Lattice", str(result.lattice)), ("Valuation", _valuation_text(result.valuation))]
    else:
        rows.append(("Lattices searched", str(len(result.scope))))
    _emit(config, {"result": result}, 1 if result.found else 0, rows=rows)


@cli.command(name="decide2")
@click.argument("equation")
@click.pass_context
@reports_errors
def decide2_command(ctx: click.Context, equation: str) -> None:
    """Decide a two-variable orthomodular equation"""
    config = _run_config(ctx, "decide2", [equation])
    result = decide2(equation)
    rows = [
        ("Equation", equation),
        ("Valid", str(result.valid)),
        ("Free algebra size", str(result.free_algebra_size)),
    ]
    if not result.valid:
        rows.append(("Countervaluation", _valuation_text(result.countervaluation)))
    _emit(config, {"result": result}, 0 if result.valid else 1, rows=rows)


@cli.command()
@click.argument("lattice")
@click.pass_context
@reports_errors
def refute(ctx: click.Context, lattice: str) -> None:
    """Show that a finite lattice carries no LQF-algebra"""
    config = _run_config(ctx, "refute", [lattice])
    trace = refute_finite_lqf(resolve_lattice(lattice))
    table = Table(title=f"Refutation on {trace.lattice}")
    table.add_column("Step", justify="right")
    table.add_column("Claim")
    table.add_column("Cites", style="cyan")
    for entry in trace.entries:
        claim = f"[red]{entry.claim}[/red]" if entry.contradiction else entry.claim
        table.add_row(str(entry.step), claim, ", ".join(entry.cites))
    _emit(config, {"trace": trace}, 0, table=table)


def _condition_command(ctx: click.Context, name: str, structure: str, iii: bool) -> None:
    config = _run_config(ctx, name, [structure])
    S = resolve_structure(structure)
    report = check_iii_conditions(S) if iii else check_lqf_axioms(S)
    rows = [("Structure", S.name), ("Passes", str(report.ok))]
    if not report.ok:
        rows += [
            ("First failure", f"{report.failed} (part {report.part})"),
            ("Witness", _valuation_text(report.witness)),
        ]
    for extra in report.supplementary:
        rows.append(("Supplementary", "pass" if extra.ok else f"{extra.failed} fails"))
    _emit(config, {"report": report}, 0 if report.ok else 1, rows=rows)


@cli.command(name="check-lqf")
@click.argument("structure")
@click.pass_context
@reports_errors
def check_lqf(ctx: click.Context, structure: str) -> None:
    """Check LQF1-LQF12 on an expanded structure"""
    _condition_command(ctx, "check-lqf", structure, iii=False)


@cli.command(name="check-iii")
@click.argument("structure")
@click.pass_context
@reports_errors
def check_iii(ctx: click.Context, structure: str) -> None:
    """Check the type III conditions on an expanded structure"""
    _condition_command(ctx, "check-iii", structure, iii=True)


@cli.command()
@click.option("--scope", "scope_names", multiple=True, help="Base lattices (default: catalog)")
@click.option("--samples", default=100, help="Number of random structures")
@click.pass_context
@reports_errors
def align(ctx: click.Context, scope_names: Tuple[str, ...], samples: int) -> None:
    """Compare LQF and III first failures on seeded random structures"""
    config = _run_config(ctx, "align", scope=list(scope_names))
    bases = [L for L in scope(scope_names, ctx.obj["max_size"]) if L.size <= 12]
    if not bases:
        raise PreconditionError("no base lattice with at most 12 elements in scope", "align")
    rng = random.Random(config.seed)
    disagreements: List[Dict[str, Any]] = []
    for k in range(samples):
        S = random_structure(bases[k % len(bases)], rng)
        report = alignment(S)
        if not report.agree or report.lqf.ok != report.iii.ok:
            disagreements.append({"sample": k, "base": S.name, "report": report})
    rows = [("Samples", str(samples)), ("Disagreements", str(len(disagreements)))]
    payload = {"samples": samples, "disagreements": disagreements}
    _emit(config, payload, 0 if not disagreements else 1, rows=rows)


@cli.command(name="w0-unique")
@click.argument("lattice")
@click.pass_context
@reports_errors
def w0_unique(ctx: click.Context, lattice: str) -> None:
    """Count w0 tables on a directly indecomposable lattice"""
    config = _run_config(ctx, "w0-unique", [lattice])
    report = w0_uniqueness(resolve_lattice(lattice))
    rows = [
        ("Lattice", report.lattice),
        ("Mode", report.mode),
        ("Tables checked", str(report.tables_checked)),
        ("Satisfying", str(report.satisfying)),
        ("Indicator", str(report.is_indicator)),
    ]
    unique = report.satisfying == 1 and report.is_indicator
    _emit(config, {"report": report}, 0 if unique else 1, rows=rows)


# ---------------------------------------------------------------------------
# Proofs
# ---------------------------------------------------------------------------


@cli.group()
def proof() -> None:
    """Check and expand calculus proofs"""


@proof.command(name="check")
@click.argument("proof_file")
@click.option("--strict/--lax", default=True, help="Reject DT steps (strict) or audit them (lax)")
@click.pass_context
@reports_errors
def proof_check(ctx: click.Context, proof_file: str, strict: bool) -> None:
    """Check a proof file"""
    config = _run_config(ctx, "proof check", [proof_file], strict=strict)
    verdict = check_proof(load_proof(proof_file), strict=strict)
    rows = [("Proof", proof_file), ("Mode", "strict" if strict else "lax"), ("OK", str(verdict.ok))]
    if verdict.ok:
        rows.append(("Conclusion", str(verdict.conclusion)))
    elif verdict.first_bad_step is not None:
        bad = verdict.first_bad_step
        rows += [("First bad step", str(bad.index)), ("Reason", f"{bad.reason} {bad.detail}")]
    _emit(config, {"verdict": verdict}, 0 if verdict.ok else 1, rows=rows)


@proof.command(name="expand")
@click.argument("proof_file")
@reports_errors
def proof_expand(proof_file: str) -> None:
    """Inline derived-rule steps and print the primitive proof"""
    expanded = expand_macros(load_proof(proof_file))
    document = proof_to_document(expanded).model_dump(mode="json", exclude_none=True)
    click.echo(json.dumps(document, sort_keys=True, indent=2))


# ---------------------------------------------------------------------------
# Filters
# ---------------------------------------------------------------------------


@cli.command()
@click.argument("lattice")
@click.option("--enumerate", "mode", flag_value="enumerate", default=True, help="List filters")
@click.option("--generate", "mode", flag_value="generate", help="Filter generated by -e elements")
@click.option("--classify", "mode", flag_value="classify", help="Classify the -e subset")
@click.option("--element", "-e", "elements", multiple=True, help="Element name (repeatable)")
@click.pass_context
@reports_errors
def filters(ctx: click.Context, lattice: str, mode: str, elements: Tuple[str, ...]) -> None:
    """Enumerate, generate or classify filters"""
    config = _run_config(ctx, "filters", [lattice, *elements])
    L = resolve_lattice(lattice)
    if mode == "enumerate":
        lqf_filters = enumerate_lqf_filters(L)
        oml = [F.names for F in enumerate_oml_filters(L)]
        table = Table(title=f"LQF-filters of {L.name}")
        table.add_column("Least element", style="cyan")
        table.add_column("Members")
        for F in lqf_filters:
            table.add_row(L.name_of(F.generator), ", ".join(F.names))
        lqf = [F.names for F in lqf_filters]
        _emit(config, {"lqf_filters": lqf, "oml_filters": oml}, 0, table=table)
    elif mode == "generate":
        F = generate_filter(L, list(elements))
        rows = [("Generators", ", ".join(elements) or "-"), ("Filter", ", ".join(F.names))]
        rows.append(("Proper", str(F.is_proper)))
        _emit(config, {"filter": F.names, "proper": F.is_proper}, 0, rows=rows)
    else:
        report = classify_filter(L, list(elements))
        rows = [(k, str(v)) for k, v in report.model_dump().items() if k != "members"]
        _emit(config, {"classification": report}, 0 if report.is_lqf_filter else 1, rows=rows)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


def _matrix_text(rows: List[List[str]]) -> str:
    return "[" + "; ".join(" ".join(r) for r in rows) + "]"


@cli.group()
def matrix() -> None:
    """Exact rational projector and partial isometry checks"""


@matrix.command(name="partial-isometry")
@click.argument("matrix_file")
@click.pass_context
@reports_errors
def matrix_partial_isometry(ctx: click.Context, matrix_file: str) -> None:
    """Check the partial isometry characterizations"""
    config = _run_config(ctx, "matrix partial-isometry", [matrix_file])
    report = is_partial_isometry(load_matrix(matrix_file))
    rows = [(k, str(v)) for k, v in report.model_dump().items()]
    _emit(config, {"report": report}, 0 if report.is_partial_isometry else 1, rows=rows)


@matrix.command(name="mvn")
@click.argument("p_file")
@click.argument("q_file")
@click.pass_context
@reports_errors
def matrix_mvn(ctx: click.Context, p_file: str, q_file: str) -> None:
    """Murray-von Neumann equivalence of two projectors"""
    config = _run_config(ctx, "matrix mvn", [p_file, q_file])
    verdict = mvn_equivalent(load_matrix(p_file), load_matrix(q_file))
    rows = [
        ("Equivalent", str(verdict.equivalent)),
        ("rank P", str(verdict.rank_p)),
        ("rank Q", str(verdict.rank_q)),
    ]
    if verdict.witness is not None:
        rows.append(("Witness", _matrix_text(verdict.witness)))
    _emit(config, {"verdict": verdict}, 0 if verdict.equivalent else 1, rows=rows)


@matrix.command(name="rank")
@click.argument("matrix_file")
@click.pass_context
@reports_errors
def matrix_rank(ctx: click.Context, matrix_file: str) -> None:
    """Rank dimension of a projector"""
    config = _run_config(ctx, "matrix rank", [matrix_file])
    dimension = rank_dimension(load_matrix(matrix_file))
    _emit(config, {"dimension": dimension}, 0, rows=[("D(P)", str(dimension))])


@matrix.command(name="audit")
@click.argument("n", type=click.IntRange(1, 6))
@click.pass_context
@reports_errors
def matrix_audit(ctx: click.Context, n: int) -> None:
    """Dimension function audit on the coordinate projectors of Q^n"""
    config = _run_config(ctx, "matrix audit", [str(n)])
    audit = dimension_audit(coordinate_projectors(n))
    rows = [(k, str(v)) for k, v in audit.model_dump().items()]
    ok = audit.faithful and audit.equivalence and audit.additive
    _emit(config, {"audit": audit}, 0 if ok else 1, rows=rows)


@matrix.command(name="borchers")
@click.argument("n", type=int)
@click.pass_context
@reports_errors
def matrix_borchers(ctx: click.Context, n: int) -> None:
    """Certificate that M_n fails the Borchers condition"""
    config = _run_config(ctx, "matrix borchers", [str(n)])
    certificate = borchers_fails(n)
    rows = [
        ("n", str(certificate.n)),
        ("Vacuous", str(certificate.vacuous)),
        ("Excluded ranks", ", ".join(map(str, certificate.excluded_ranks)) or "-"),
    ]
    _emit(config, {"certificate": certificate}, 0, rows=rows)


@matrix.command(name="suite")
@click.option("--samples", default=200, help="Number of random matrices")
@click.pass_context
@reports_errors
def matrix_suite(ctx: click.Context, samples: int) -> None:
    """Seeded agreement suite for the partial isometry characterizations"""
    config = _run_config(ctx, "matrix suite")
    checked, constructed, positives = partial_isometry_suite(samples, seed=config.seed)
    rows = [
        ("Random matrices", str(checked)),
        ("Partial permutations", str(constructed)),
        ("Partial isometries", str(positives)),
    ]
    payload = {
        "samples": checked,
        "partial_permutations": constructed,
        "partial_isometries": positives,
    }
    _emit(config, payload, 0, rows=rows)


@matrix.command(name="demo")
@click.argument("lines", nargs=-1, required=True)
@click.pass_context
@reports_errors
def matrix_demo(ctx: click.Context, lines: Tuple[str, ...]) -> None:
    """Perspectivity versus unitary equivalence for lines of Q^2 given as a,b"""
    config = _run_config(ctx, "matrix demo", list(lines))
    vectors = [[part.strip() for part in line.split(",")] for line in lines]
    report = unitary_vs_perspective_demo(vectors)
    table = Table(title="Lines of Q^2: " + ", ".join(report.elements))
    table.add_column("First", style="cyan")
    table.add_column("Second", style="cyan")
    table.add_column("Common complement")
    table.add_column("Rotation")
    table.add_column("MvN")
    for pair in report.pairs:
        table.add_row(
            pair.first,
            pair.second,
            pair.common_complement or "-",
            _matrix_text(pair.unitary_witness) if pair.unitary_witness else "-",
            str(pair.mvn_equivalent),
        )
    if config.output_format == OutputFormat.HUMAN.value:
        console.print(f"[dim]{report.note}[/dim]")
    _emit(config, {"report": report}, 0, table=table)


def main() -> None:
    """Main entry point for the CLI"""
    try:
        cli(obj={})
    except KeyboardInterrupt:
        err_console.print("\n[yellow]Operation cancelled by user[/yellow]")
        sys.exit(1)


if __name__ == "__main__":
    main()

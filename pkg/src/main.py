"""
main.py

This is the entry point for LeafSpace, a command-line workbench for Lie algebras with
left-invariant semi-Riemannian metrics and their codimension-two foliations. Each command reads
an algebra document or a named preset, runs its checks and prints a versioned report as JSON or
as a table.

Key Features:
- `check`: Jacobi validation, Killing form, semisimplicity, metric signature, Cartan involution.
- `foliation`: Adapted frame, coefficients, classification, structural checks and theorem harness.
- `curvature`: Milnor and direct sectional curvatures, optionally the leaf-space curvature.
- `berger`: One Berger algebra (optionally written out as a document) or a seeded sweep.
- `preset`: Runs the checks on a catalog entry.
- `verify`: The reference acceptance suite.

Exit codes: 0 when every check passes, 1 when a check fails or a contradiction is flagged,
2 for input errors.

Functions:
- run: Invokes the application with an argument list and returns the exit code.
"""

import functools
import itertools
import json
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

import click
import typer
from pydantic import ValidationError

from cli.documents import DocumentError, emit_document, load_document, to_algebra, to_metric, to_theta
from cli.reports import FAIL, NOT_APPLICABLE, PASS, Report, digest, render, status_of
from cli.suite import SUITES, berger_sweep, evaluate_berger, run_reference_suite, summarize_sweep
from geometry.catalog import PRESET_NAMES, Preset, berger_algebra, berger_params, preset as catalog_preset
from geometry.curvature import framed_algebra, oneill_leaf_curvature, sectional_direct, sectional_milnor
from geometry.errors import DegenerateMetricError, GeometryError
from geometry.foliation import (
    adapted_frame,
    classify,
    coefficients,
    reconstruct,
    structural_checks,
    trace_identity,
    verify_theorem_minimal,
    verify_theorem_totally_geodesic,
)
from geometry.lie_core import is_semisimple, killing_form, subalgebra, validate
from geometry.semi_metric import check_involution, signature
from utils.config import load_sampling_config, load_settings
from utils.threading import shutdown_executor

settings = load_settings()

# Initialize logging; records go to stderr so that reports on stdout stay clean
logging.basicConfig(level=settings.log_level.upper(), format='%(asctime)s - %(levelname)s - %(message)s')

app = typer.Typer(add_completion=False, help="Lie algebra, metric and foliation workbench.")

TolOption = typer.Option(settings.tol, "--tol", help="Numerical tolerance.")
FormatOption = typer.Option("json", "--format", help="Output format: json or text.")
TimingsOption = typer.Option(False, "--timings", help="Add wall-clock timings to the report.")
PresetOption = typer.Option(None, "--preset", help=f"Catalog entry: {', '.join(PRESET_NAMES)}.")
FileArgument = typer.Argument(None, help="Algebra document (JSON).")


class Target:
    """An algebra, metric, vertical set and optional Cartan involution taken from a document or a preset."""

    def __init__(self, name, algebra, metric, vertical=None, theta=None, metric_defaulted=False):
        self.name = name
        self.algebra = algebra
        self.metric = metric
        self.vertical = tuple(vertical) if vertical is not None else None
        self.theta = theta
        self.metric_defaulted = metric_defaulted

    @classmethod
    def from_preset(cls, entry: Preset):
        return cls(entry.name, entry.algebra, entry.metric, entry.vertical, entry.theta)


def _parse_indices(text, option):
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise DocumentError(f"{option} expects comma-separated integers, got '{text}'.")


def _parse_factors(text):
    return [_parse_indices(block, "--factors") for block in text.split(";") if block.strip()]


def _load_targets(report: Report, file: Optional[Path], preset: Optional[str]) -> List[Target]:
    if (file is None) == (preset is None):
        raise DocumentError("Give exactly one of a document path or --preset.")
    if preset is not None:
        report.input_digest = digest(f"preset:{preset}")
        report.arguments["preset"] = preset
        return [Target.from_preset(entry) for entry in catalog_preset(preset)]

    document = load_document(file)
    report.input_digest = digest(Path(file).read_text())
    report.arguments["file"] = Path(file).name
    if document.metric_defaulted:
        report.notes.append("metric omitted; identity assumed")
    return [
        Target(
            Path(file).stem,
            to_algebra(document),
            to_metric(document),
            document.vertical,
            to_theta(document),
            document.metric_defaulted,
        )
    ]


def _emit(report: Report, output_format, timings, started):
    if timings:
        report.timings = {"total": time.perf_counter() - started}
    else:
        report.timings = None
    typer.echo(render(report, output_format))
    if report.failed:
        logging.info(f"{len(report.failed)} check(s) failed: {[check.name for check in report.failed]}.")
    raise typer.Exit(report.exit_code)


def handles_input_errors(func):
    """Maps input errors to exit code 2 with a one-line message on stderr."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (GeometryError, ValidationError) as e:
            logging.debug(f"Input error in '{func.__name__}': {e}", exc_info=True)
            typer.echo(f"error: {e}", err=True)
            raise typer.Exit(2)

    return wrapper


def _check_format(output_format):
    if output_format not in ("json", "text"):
        raise DocumentError(f"--format must be json or text, got '{output_format}'.")


def _algebra_checks(report: Report, target: Target, tol):
    prefix = f"{target.name}: "
    validation = validate(target.algebra, tol)
    report.add(
        prefix + "jacobi",
        validation.passed,
        residual=validation.jacobi_residual,
        worst_triple=list(validation.witness) if validation.witness else [],
        tolerance=validation.tolerance,
        antisymmetry_violations=validation.antisymmetry_violations,
    )
    semisimple = is_semisimple(target.algebra, tol)
    report.add(
        prefix + "killing form",
        PASS,
        matrix=killing_form(target.algebra).matrix,
        semisimple=semisimple.semisimple,
        smallest_singular_value=semisimple.smallest_singular_value,
        largest_singular_value=semisimple.largest_singular_value,
    )
    try:
        p, q = signature(target.metric, tol)
        report.add(prefix + "metric signature", PASS, positive=p, negative=q)
    except DegenerateMetricError as e:
        report.add(prefix + "metric signature", FAIL, error=str(e))
    if target.theta is not None:
        studied = subalgebra(target.algebra, target.vertical, tol) if target.vertical else target.algebra
        involution = check_involution(studied, target.theta, tol)
        report.add(
            prefix + "cartan involution",
            involution.passed,
            involution_residual=involution.involution_residual,
            automorphism_residual=involution.automorphism_residual,
            smallest_eigenvalue=involution.smallest_eigenvalue,
        )


def _theorem_witness(theorem):
    return {
        "outcome": theorem.outcome,
        "premises": {item.name: {"holds": item.holds, "witness": item.witness} for item in theorem.premises},
        "conclusions": {item.name: {"holds": item.holds, "witness": item.witness} for item in theorem.conclusions},
        "notes": theorem.notes,
    }


def _foliation_checks(report: Report, target: Target, vertical, tol, factors=None):
    prefix = f"{target.name}: "
    setup = adapted_frame(target.algebra, target.metric, vertical, tol)
    report.add(prefix + "vertical closure", setup.closed, defect=setup.closure_defect, causalities=setup.causalities)
    if not setup.closed:
        report.notes.append(f"{target.name}: vertical span is not a subalgebra; foliation claims skipped")
        return

    coeffs = coefficients(setup)
    rebuilt = reconstruct(setup, coeffs)
    report.add(
        prefix + "coefficients",
        PASS,
        x=coeffs.x,
        y=coeffs.y,
        rho=coeffs.rho,
        theta=coeffs.theta,
        x_leakage=coeffs.x_leakage,
        y_leakage=coeffs.y_leakage,
        reconstruction_residual=float(abs(rebuilt.constants - setup.frame_constants).max()),
    )

    classification = classify(setup, tol)
    report.add(
        prefix + "classification",
        classification.cross_checks_agree,
        conformal=classification.conformal,
        semi_riemannian=classification.semi_riemannian,
        minimal=classification.minimal,
        totally_geodesic=classification.totally_geodesic,
        residuals=classification.witnesses,
    )

    structure = structural_checks(setup, tol, factors)
    report.add(prefix + "derived brackets vertical", structure.derived_brackets_vertical, leak=structure.derived_bracket_leak)
    if structure.factors_decoupled is not None:
        report.add(prefix + "factors decoupled", structure.factors_decoupled, leak=structure.cross_factor_leak)
    if structure.semisimple_conformal_is_riemannian is not None:
        report.add(prefix + "semisimple conformal is riemannian", structure.semisimple_conformal_is_riemannian)

    identity = trace_identity(setup)
    report.add(prefix + "trace identity", identity.residual <= tol * setup.scale * (setup.n + 2), residual=identity.residual)

    for theorem in (
        verify_theorem_minimal(target.algebra, target.metric, vertical, tol),
        verify_theorem_totally_geodesic(target.algebra, target.metric, vertical, tol, target.theta),
    ):
        report.add(prefix + theorem.theorem, status_of(theorem.outcome), **_theorem_witness(theorem))
        for variant in theorem.variants:
            report.add(prefix + variant.theorem, status_of(variant.outcome), **_theorem_witness(variant))


@app.command()
@handles_input_errors
def check(
    file: Optional[Path] = FileArgument,
    preset: Optional[str] = PresetOption,
    tol: float = TolOption,
    output_format: str = FormatOption,
    timings: bool = TimingsOption,
):
    """Validate an algebra and describe its Killing form and metric."""
    started = time.perf_counter()
    _check_format(output_format)
    report = Report(command="check", arguments={"tol": tol})
    for target in _load_targets(report, file, preset):
        _algebra_checks(report, target, tol)
    _emit(report, output_format, timings, started)


@app.command()
@handles_input_errors
def foliation(
    file: Optional[Path] = FileArgument,
    vertical: Optional[str] = typer.Option(None, "--vertical", help="Vertical indices, e.g. 0,1,2."),
    factors: Optional[str] = typer.Option(None, "--factors", help="Blocks of vertical frame positions, e.g. 0,1,2;3,4,5."),
    preset: Optional[str] = PresetOption,
    tol: float = TolOption,
    output_format: str = FormatOption,
    timings: bool = TimingsOption,
):
    """Classify the foliation generated by a vertical subalgebra of codimension two."""
    started = time.perf_counter()
    _check_format(output_format)
    report = Report(command="foliation", arguments={"tol": tol})
    blocks = _parse_factors(factors) if factors else None
    for target in _load_targets(report, file, preset):
        indices = _parse_indices(vertical, "--vertical") if vertical else target.vertical
        if indices is None:
            report.add(f"{target.name}: foliation", NOT_APPLICABLE, reason="no vertical indices")
            continue
        report.arguments["vertical"] = list(indices)
        _foliation_checks(report, target, indices, tol, blocks)
    _emit(report, output_format, timings, started)


@app.command()
@handles_input_errors
def curvature(
    file: Optional[Path] = FileArgument,
    plane: Optional[str] = typer.Option(None, "--plane", help="Frame indices i,j of one plane."),
    leaf: bool = typer.Option(False, "--leaf", help="Also compute the leaf-space curvature."),
    vertical: Optional[str] = typer.Option(None, "--vertical", help="Vertical indices for --leaf."),
    preset: Optional[str] = PresetOption,
    tol: float = TolOption,
    output_format: str = FormatOption,
    timings: bool = TimingsOption,
):
    """Sectional curvatures of a left-invariant Riemannian metric."""
    started = time.perf_counter()
    _check_format(output_format)
    report = Report(command="curvature", arguments={"tol": tol, "leaf": leaf})
    for target in _load_targets(report, file, preset):
        _, framed = framed_algebra(target.algebra, target.metric, tol)
        if plane:
            planes = [_parse_indices(plane, "--plane")]
            if len(planes[0]) != 2:
                raise DocumentError(f"--plane expects two indices, got '{plane}'.")
        else:
            planes = list(itertools.combinations(range(framed.dim), 2))
        milnor = {f"{i},{j}": sectional_milnor(framed, i, j).curvature for i, j in planes}
        direct = {f"{i},{j}": sectional_direct(framed, i, j).curvature for i, j in planes}
        gap = max(abs(milnor[key] - direct[key]) for key in milnor)
        report.add(f"{target.name}: sectional curvature", gap <= tol * framed.scale ** 2, milnor=milnor, direct=direct, max_gap=gap)

        if leaf:
            indices = _parse_indices(vertical, "--vertical") if vertical else target.vertical
            if indices is None:
                report.add(f"{target.name}: leaf curvature", NOT_APPLICABLE, reason="no vertical indices")
                continue
            setup = adapted_frame(target.algebra, target.metric, indices, tol)
            result = oneill_leaf_curvature(setup, tol)
            deviation = abs(result.leaf_curvature - result.expected_leaf_curvature)
            status = (deviation <= tol * setup.scale ** 2) if result.reliable else NOT_APPLICABLE
            report.add(
                f"{target.name}: leaf curvature",
                status,
                leaf_curvature=result.leaf_curvature,
                minus_rho_squared=result.expected_leaf_curvature,
                plane_curvature=result.curvature,
                vertical_term=result.vertical_term,
                rotation_term=result.rotation_term,
                reliable=result.reliable,
            )
    _emit(report, output_format, timings, started)


@app.command()
@handles_input_errors
def berger(
    lam: float = typer.Option(1.0, "--lambda", help="Fibre scaling λ > 0."),
    x3: float = typer.Option(0.0, "--x3"),
    x4: float = typer.Option(0.0, "--x4"),
    x5: float = typer.Option(0.0, "--x5"),
    x6: float = typer.Option(0.0, "--x6"),
    z3: float = typer.Option(0.0, "--z3"),
    z4: float = typer.Option(0.0, "--z4"),
    rho: float = typer.Option(0.0, "--rho"),
    emit: Optional[Path] = typer.Option(None, "--emit", help="Write the algebra document to this file."),
    sweep: Optional[int] = typer.Option(None, "--sweep", help="Evaluate this many seeded random draws instead."),
    seed: int = typer.Option(settings.seed, "--seed"),
    tol: float = TolOption,
    output_format: str = FormatOption,
    timings: bool = TimingsOption,
):
    """Build and check a member of the Berger family, or sweep random members."""
    started = time.perf_counter()
    _check_format(output_format)
    report = Report(command="berger", arguments={"tol": tol})

    if sweep is not None:
        if sweep < 1:
            raise DocumentError(f"--sweep must be positive, got {sweep}.")
        report.arguments.update({"sweep": sweep, "seed": seed})
        report.input_digest = digest(json.dumps(report.arguments, sort_keys=True))
        summarize_sweep(report, berger_sweep(sweep, seed, tol, load_sampling_config()))
        _emit(report, output_format, timings, started)

    params = berger_params(**{"lambda": lam, "x3": x3, "x4": x4, "x5": x5, "x6": x6, "z3": z3, "z4": z4, "rho": rho})
    report.arguments.update(params.echo())
    report.input_digest = digest(json.dumps(params.echo(), sort_keys=True))
    algebra, metric, vertical = berger_algebra(params)
    if emit is not None:
        emit.write_text(emit_document(algebra, metric, vertical))
        report.notes.append(f"document written to {emit.name}")

    summarize_sweep(report, [evaluate_berger((0, params, [], tol))])
    report.add("theta", PASS, theta=list(params.theta))
    _emit(report, output_format, timings, started)


@app.command()
@handles_input_errors
def preset(
    name: str = typer.Argument(..., help=f"One of {', '.join(PRESET_NAMES)}."),
    tol: float = TolOption,
    output_format: str = FormatOption,
    timings: bool = TimingsOption,
):
    """Run the algebra and foliation checks on a catalog entry."""
    started = time.perf_counter()
    _check_format(output_format)
    report = Report(command="preset", arguments={"tol": tol, "name": name})
    report.input_digest = digest(f"preset:{name}")
    for entry in catalog_preset(name):
        target = Target.from_preset(entry)
        _algebra_checks(report, target, tol)
        if entry.expected_semisimple is not None:
            studied = subalgebra(entry.algebra, entry.vertical, tol) if entry.vertical else entry.algebra
            observed = is_semisimple(studied, tol).semisimple
            report.add(
                f"{entry.name}: expected semisimplicity",
                observed == entry.expected_semisimple,
                expected=entry.expected_semisimple,
                observed=observed,
                part="vertical" if entry.vertical else "algebra",
            )
        if target.vertical is not None:
            _foliation_checks(report, target, target.vertical, tol)
    _emit(report, output_format, timings, started)


@app.command()
@handles_input_errors
def verify(
    suite: str = typer.Option("paper", "--suite", help=f"Suite name: {', '.join(SUITES)}."),
    samples: int = typer.Option(settings.samples, "--samples", min=1),
    seed: int = typer.Option(settings.seed, "--seed"),
    tol: float = TolOption,
    output_format: str = FormatOption,
    timings: bool = TimingsOption,
):
    """Run the acceptance suite over seeded samples and the catalog."""
    started = time.perf_counter()
    _check_format(output_format)
    if suite not in SUITES:
        raise DocumentError(f"Unknown suite '{suite}'; choose one of {', '.join(SUITES)}.")
    report = Report(command="verify", arguments={"suite": suite, "samples": samples, "seed": seed, "tol": tol})
    report.input_digest = digest(json.dumps(report.arguments, sort_keys=True))
    run_reference_suite(report, samples, seed, tol, load_sampling_config())
    _emit(report, output_format, timings, started)


def run(argv=None) -> int:
    """Invokes the application and returns its exit code instead of exiting."""
    command = typer.main.get_command(app)
    try:
        code = command.main(args=argv, prog_name="leafspace", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return 2
    except click.exceptions.Abort:
        return 2
    return code if isinstance(code, int) else 0


# Main entry point for the application
if __name__ == "__main__":
    exit_code = 2
    try:
        exit_code = run(sys.argv[1:])
    except Exception as e:
        logging.error(f"An unexpected error occurred: {e}", exc_info=True)
    finally:
        shutdown_executor()
        logging.info(f"LeafSpace exited with code {exit_code}")
    sys.exit(exit_code)

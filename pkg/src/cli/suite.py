"""
cli/suite.py

Berger-family sweeps and the reference acceptance suite.

Every random quantity (parameter draws, re-framings, frame rotations) is drawn up front in the
calling thread from seeded generators; the per-sample work then runs on the worker pool through
`map_in_threads`, which returns results in submission order. Reports are therefore identical for
identical seeds regardless of scheduling.

Functions:
- evaluate_berger: All per-sample checks for one parameter draw.
- berger_sweep: Seeded draws evaluated concurrently.
- summarize_sweep: Adds the Berger-family checks of a sweep to a report.
- run_reference_suite: The full acceptance suite.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from cli.reports import NOT_APPLICABLE, Report
from geometry.catalog import (
    BergerParams,
    abelian,
    berger_algebra,
    berger_g_epsilon,
    heisenberg,
    preset,
    sample_berger_params,
    solvable_control,
    su2,
)
from geometry.curvature import oneill_leaf_curvature, sectional_direct, sectional_milnor
from geometry.foliation import (
    CONTRADICTION,
    PREMISES_FAIL,
    VERIFIED,
    FoliationSetup,
    adapted_frame,
    build_setup,
    classify,
    trace_identity,
    verify_theorem_minimal,
    verify_theorem_totally_geodesic,
)
from geometry.lie_core import LieAlgebra, change_basis, killing_form, validate
from geometry.semi_metric import random_orthogonal
from utils.config import SamplingConfig
from utils.threading import map_in_threads

# Absolute thresholds of the acceptance criteria
JACOBI_LIMIT = 1e-8
CLASSIFY_TOL = 1e-8
ONEILL_LIMIT = 1e-8
KILLING_LIMIT = 1e-12
ORACLE_LIMIT = 1e-9
TRACE_LIMIT = 1e-9
DIAGONAL_LIMIT = 1e-9
SPOT_LIMIT = 1e-10
UNIT_LAMBDA_TOL = 1e-9

SUITES = ("paper",)


@dataclass
class BergerSample:
    index: int
    params: Dict[str, float]
    jacobi_residual: float
    jacobi_passed: bool
    flags: Tuple[bool, bool, bool, bool]
    unit_lambda: bool
    geodesic_expected: bool
    cross_checks_agree: bool
    oneill_residual: float
    leaf_residual: float
    leaf_curvature: float
    rho: float
    trace_residual: float
    minimal_outcome: str
    invariance_failures: int = 0
    witnesses: Dict[str, float] = field(default_factory=dict)


def _rotation(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def frame_invariance_failures(setup: FoliationSetup, rotations, tol) -> int:
    """Number of (vertical rotation, horizontal angle) pairs that change the classification flags."""
    reference = classify(setup, tol).flags()
    failures = 0
    for vertical_rotation, angle in rotations:
        rotated = build_setup(
            setup.algebra,
            setup.metric,
            setup.vertical_frame @ vertical_rotation,
            setup.horizontal_frame @ _rotation(angle),
            tol,
            setup.vertical_indices,
        )
        if classify(rotated, tol).flags() != reference:
            failures += 1
    return failures


def _geodesic_expected(params: BergerParams) -> bool:
    """Totally geodesic exactly when λ = 1, or for every λ once x3..x6 all vanish."""
    if max(abs(params.x3), abs(params.x4), abs(params.x5), abs(params.x6)) <= UNIT_LAMBDA_TOL:
        return True
    return abs(params.lam - 1.0) < UNIT_LAMBDA_TOL


def evaluate_berger(item) -> BergerSample:
    """`item` is (index, params, rotations, tol)."""
    index, params, rotations, tol = item
    algebra, metric, vertical = berger_algebra(params)
    validation = validate(algebra, tol)
    setup = adapted_frame(algebra, metric, vertical, tol)
    classification = classify(setup, CLASSIFY_TOL)
    leaf = oneill_leaf_curvature(setup, CLASSIFY_TOL)
    rho = float(setup.frame_constants[setup.x_index, setup.y_index, setup.x_index])
    theorem = verify_theorem_minimal(algebra, metric, vertical, CLASSIFY_TOL)
    failures = frame_invariance_failures(setup, rotations, CLASSIFY_TOL) if rotations else 0
    return BergerSample(
        index=index,
        params=params.echo(),
        jacobi_residual=validation.jacobi_residual,
        jacobi_passed=validation.passed,
        flags=classification.flags(),
        unit_lambda=abs(params.lam - 1.0) < UNIT_LAMBDA_TOL,
        geodesic_expected=_geodesic_expected(params),
        cross_checks_agree=classification.cross_checks_agree,
        oneill_residual=abs(leaf.curvature + leaf.vertical_term + rho ** 2),
        leaf_residual=abs(leaf.leaf_curvature - leaf.expected_leaf_curvature),
        leaf_curvature=leaf.leaf_curvature,
        rho=rho,
        trace_residual=trace_identity(setup).residual,
        minimal_outcome=theorem.outcome,
        invariance_failures=failures,
        witnesses=classification.witnesses,
    )


def _draw_rotations(rng, count, n):
    return [(random_orthogonal(rng, n), float(rng.uniform(0.0, 2.0 * np.pi))) for _ in range(count)]


def berger_sweep(samples, seed, tol, config: SamplingConfig, with_rotations=False) -> List[BergerSample]:
    """
    `samples` seeded draws; every `unit_lambda_every`-th draw (starting with the first) has λ = 1.
    """
    rng = np.random.default_rng(seed)
    frame_rng = np.random.default_rng(seed + 1)
    items = []
    for index in range(samples):
        params = sample_berger_params(rng, config.berger_ranges, unit_lambda=index % config.unit_lambda_every == 0)
        rotations = _draw_rotations(frame_rng, config.frame_rotations, 3) if with_rotations else []
        items.append((index, params, rotations, tol))
    logging.info(f"Evaluating {samples} Berger samples with seed {seed}.")
    return map_in_threads(evaluate_berger, items)


def summarize_sweep(report: Report, results: List[BergerSample]):
    """Adds the Berger-family checks (Jacobi, classification, O'Neill, trace identity) to `report`."""
    jacobi = max((r.jacobi_residual for r in results), default=0.0)
    report.add(
        "berger jacobi",
        all(r.jacobi_passed for r in results) and jacobi < JACOBI_LIMIT,
        max_residual=jacobi,
        samples=len(results),
    )

    mismatches = [
        r.index
        for r in results
        if not (r.flags[0] and r.flags[1] and r.flags[2]) or r.flags[3] != r.geodesic_expected or not r.cross_checks_agree
    ]
    report.add(
        "berger classification",
        not mismatches,
        mismatched_samples=mismatches,
        totally_geodesic_samples=sum(1 for r in results if r.flags[3]),
        unit_lambda_samples=sum(1 for r in results if r.unit_lambda),
    )

    oneill = max((r.oneill_residual for r in results), default=0.0)
    leaf = max((r.leaf_residual for r in results), default=0.0)
    report.add("berger leaf curvature", oneill < ONEILL_LIMIT and leaf < ONEILL_LIMIT, max_oneill_residual=oneill, max_leaf_residual=leaf)

    trace = max((r.trace_residual for r in results), default=0.0)
    report.add("berger trace identity", trace < TRACE_LIMIT, max_residual=trace)


def _catalog_algebras() -> List[Tuple[str, LieAlgebra]]:
    """Catalog algebras whose metric is the identity, so every orthogonal re-framing is orthonormal."""
    algebras = []
    for name in ("su2", "sl2r", "heisenberg", "solvable", "berger", "intro-table"):
        algebras.extend((entry.name, entry.algebra) for entry in preset(name))
    algebras.append(("abelian", abelian(3)))
    return algebras


def oracle_gap(algebra: LieAlgebra) -> float:
    gap = 0.0
    for i, j in itertools.combinations(range(algebra.dim), 2):
        gap = max(gap, abs(sectional_milnor(algebra, i, j).curvature - sectional_direct(algebra, i, j).curvature))
    return gap


def _oracle_item(item):
    name, algebra, frames = item
    return name, max([oracle_gap(algebra)] + [oracle_gap(change_basis(algebra, q)) for q in frames])


def _killing_check(report):
    su, _ = su2()
    sl = preset("sl2r")[0].algebra
    expected = [
        ("su2", su, np.diag([-8.0, -8.0, -8.0])),
        ("sl2r", sl, np.diag([-8.0, 8.0, 8.0])),
        ("heisenberg", heisenberg(), np.zeros((3, 3))),
    ]
    deviations = {name: float(np.abs(killing_form(algebra).matrix - target).max()) for name, algebra, target in expected}
    report.add("killing forms", max(deviations.values()) < KILLING_LIMIT, **deviations)


def _preset_cases():
    cases = []
    for name in ("berger", "solvable", "intro-table"):
        for entry in preset(name):
            cases.append((entry.name, entry.algebra, entry.metric, entry.vertical, entry.theta))
    return cases


def _minimal_theorem_check(report, results, tol):
    outcomes = {}
    contradictions = [f"berger[{r.index}]" for r in results if r.minimal_outcome == CONTRADICTION]
    traces = []
    for name, algebra, metric, vertical, _ in _preset_cases():
        theorem = verify_theorem_minimal(algebra, metric, vertical, tol)
        outcomes[name] = theorem.outcome
        if theorem.outcome == CONTRADICTION:
            contradictions.append(name)
        traces.append(trace_identity(adapted_frame(algebra, metric, vertical, tol)).residual)

    algebra, metric, vertical = solvable_control()
    control = verify_theorem_minimal(algebra, metric, vertical, tol)
    control_minimal = control.conclusions[0].holds if control.conclusions else None
    report.add(
        "minimal theorem harness",
        not contradictions and control.outcome == PREMISES_FAIL and control_minimal is False,
        contradictions=contradictions,
        outcomes=outcomes,
        solvable_outcome=control.outcome,
        solvable_minimal=control_minimal,
    )
    report.add("preset trace identity", max(traces) < TRACE_LIMIT, max_residual=max(traces))


def _totally_geodesic_theorem_check(report, tol):
    unit = BergerParams(lam=1.0, x3=0.7, x4=-0.4, x5=1.1, x6=0.3, z3=-0.8, z4=0.5, rho=1.0)
    algebra, metric, vertical = berger_algebra(unit)
    berger = verify_theorem_totally_geodesic(algebra, metric, vertical, tol)

    product = preset("intro-table")[0]
    product_report = verify_theorem_totally_geodesic(product.algebra, product.metric, product.vertical, tol, product.theta)

    algebra, metric, vertical = berger_g_epsilon(unit, (1, -1, 1))
    variant_parent = verify_theorem_totally_geodesic(algebra, metric, vertical, tol)
    variant = variant_parent.variants[0] if variant_parent.variants else None
    diagonal = variant.conclusions[0].witness if variant and variant.conclusions else None
    passed = (
        berger.outcome == VERIFIED
        and product_report.outcome == VERIFIED
        and variant is not None
        and variant.outcome == VERIFIED
        and diagonal is not None
        and diagonal < DIAGONAL_LIMIT
    )
    report.add(
        "totally geodesic theorem harness",
        passed,
        berger_unit_lambda=berger.outcome,
        su2_su2=product_report.outcome,
        g_epsilon_variant=variant.outcome if variant else NOT_APPLICABLE,
        g_epsilon_diagonal=diagonal,
    )


def _frame_invariance_check(report, results, config, seed, tol):
    rng = np.random.default_rng(seed + 2)
    failures = sum(r.invariance_failures for r in results)
    for name, algebra, metric, vertical, _ in _preset_cases():
        setup = adapted_frame(algebra, metric, vertical, tol)
        failures += frame_invariance_failures(setup, _draw_rotations(rng, config.frame_rotations, setup.n), tol)
    report.add("frame invariance", failures == 0, failures=failures, rotations_per_setup=config.frame_rotations)


def _spot_curvature_check(report):
    su, _ = su2()
    su_values = [sectional_milnor(su, i, j).curvature for i, j in itertools.combinations(range(3), 2)]
    solvable, _, _ = solvable_control()
    solvable_value = sectional_milnor(solvable, 1, 0).curvature
    flat = abelian(3)
    flat_values = [sectional_milnor(flat, i, j).curvature for i, j in itertools.combinations(range(3), 2)]
    deviation = max(
        max(abs(v - 1.0) for v in su_values),
        abs(solvable_value + 1.0),
        max(abs(v) for v in flat_values),
    )
    report.add("curvature spot values", deviation < SPOT_LIMIT, su2=su_values, solvable_xv=solvable_value, max_deviation=deviation)


def run_reference_suite(report: Report, samples, seed, tol, config: SamplingConfig):
    """Fills `report` with the acceptance checks; `tol` is used by the frame-dependent checks."""
    results = berger_sweep(samples, seed, tol, config, with_rotations=True)
    summarize_sweep(report, results)
    _killing_check(report)

    frame_rng = np.random.default_rng(seed + 3)
    items = [(name, algebra, [random_orthogonal(frame_rng, algebra.dim) for _ in range(config.reframings)]) for name, algebra in _catalog_algebras()]
    gaps = dict(map_in_threads(_oracle_item, items))
    report.add("milnor vs direct curvature", max(gaps.values()) < ORACLE_LIMIT, reframings=config.reframings, **gaps)

    _minimal_theorem_check(report, results, CLASSIFY_TOL)
    _totally_geodesic_theorem_check(report, CLASSIFY_TOL)
    _frame_invariance_check(report, results, config, seed, CLASSIFY_TOL)
    _spot_curvature_check(report)
    return report

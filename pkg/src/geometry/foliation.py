"""
geometry/foliation.py

This module studies the left-invariant foliation of a Lie group G generated by a subalgebra
k of codimension two. Everything is evaluated in an adapted orthonormal frame
{V_1, ..., V_n, X, Y}, with V_i spanning k and X, Y spanning its orthogonal complement.

Key Features:
- Adapted frames: vertical Gram-Schmidt, horizontal completion, and the rotation of (X, Y)
  that makes the horizontal part of [X, Y] equal to ρX with ρ >= 0.
- The coefficients x_i^k, y_i^k, ρ, θ^k of ad_X, ad_Y and [X, Y] in the frame.
- Second fundamental forms B^V and B^H from the Koszul formula.
- Conformal / semi-Riemannian / minimal / totally geodesic classification with witnesses,
  where minimality and total geodesicity are decided from the coefficients and cross-checked
  against B^V.
- Structural checks on derived brackets and on product decompositions of k.
- Instance verification of the minimality and total-geodesicity theorems, including the
  g_ε variant, reported as verified / premises-fail / contradiction / not-applicable.

Functions:
- adapted_frame / build_setup: Construct a FoliationSetup.
- coefficients / reconstruct: Coefficients of the frame and the algebra rebuilt from them.
- second_fundamental_forms / classify: Forms and classification.
- structural_checks / trace_identity: Consistency checks.
- g_epsilon_frame: Detects a vertical metric of the form c·g_ε and returns its frame.
- verify_theorem_minimal / verify_theorem_totally_geodesic: Theorem harness.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from geometry.errors import FrameError, InputError, InvalidInvolutionError
from geometry.lie_core import (
    DEFAULT_TOL,
    LieAlgebra,
    ad_matrix,
    bracket,
    is_semisimple,
    killing_form,
    subalgebra,
)
from geometry.semi_metric import (
    CartanInvolution,
    MetricTensor,
    cartan_killing_metric,
    orthonormal_frame,
)

VERIFIED = "verified"
PREMISES_FAIL = "premises-fail"
CONTRADICTION = "contradiction"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True, eq=False)
class FoliationSetup:
    """
    An algebra with metric and an adapted orthonormal frame.

    Attributes:
        vertical_frame (np.ndarray): dim × n matrix, columns V_1..V_n in algebra coordinates.
        horizontal_frame (np.ndarray): dim × 2 matrix, columns X and Y.
        causalities (tuple): ε_1..ε_n, ε_X, ε_Y.
        closed (bool): Whether the vertical span is closed under the bracket.
        closure_defect (float): Largest horizontal component of a bracket of vertical vectors.
        normalized (bool): Whether H[X, Y] = ρX holds, i.e. the Y component of [X, Y] vanishes.
    """

    algebra: LieAlgebra
    metric: MetricTensor
    vertical_frame: np.ndarray
    horizontal_frame: np.ndarray
    causalities: Tuple[int, ...]
    closed: bool
    closure_defect: float
    normalized: bool
    vertical_indices: Optional[Tuple[int, ...]] = None
    tol: float = DEFAULT_TOL

    @property
    def n(self):
        return self.vertical_frame.shape[1]

    @property
    def x_index(self):
        return self.n

    @property
    def y_index(self):
        return self.n + 1

    @property
    def frame(self):
        return np.column_stack([self.vertical_frame, self.horizontal_frame])

    @property
    def eps(self):
        return np.asarray(self.causalities, dtype=float)

    @cached_property
    def frame_constants(self):
        """λ[a, b, c] = ε_c g([F_a, F_b], F_c), the structure constants in the frame."""
        frame = self.frame
        products = np.einsum(
            "ia,jb,ijk,kl,lc->abc", frame, frame, self.algebra.constants, self.metric.matrix, frame
        )
        return products * self.eps[None, None, :]

    @property
    def scale(self):
        return max(1.0, float(np.abs(self.frame_constants).max(initial=0.0)))

    def framed_algebra(self):
        return LieAlgebra(self.n + 2, self.frame_constants, tuple(f"V{i + 1}" for i in range(self.n)) + ("X", "Y"))


@dataclass(frozen=True, eq=False)
class FoliationCoefficients:
    """
    x[i, k] = x_i^k and y[i, k] = y_i^k expand ad_X(V_i) and ad_Y(V_i); rho and theta expand [X, Y].

    `x_leakage` and `y_leakage` hold |H[X, V_i]| and |H[Y, V_i]| for every i.
    `xy_y_component` is the Y component of [X, Y], zero in a normalized frame.
    """

    x: np.ndarray
    y: np.ndarray
    rho: float
    theta: np.ndarray
    x_leakage: np.ndarray
    y_leakage: np.ndarray
    xy_y_component: float


@dataclass(frozen=True, eq=False)
class SecondFundamentalForms:
    """
    BV[i, j] holds the (X, Y) components of B^V(V_i, V_j); BH[a, b] holds the vertical components
    of B^H on the horizontal frame (index 0 for X, 1 for Y).
    """

    BV: np.ndarray
    BH: np.ndarray
    causalities: Tuple[int, ...]

    def trace_bv(self):
        """(X, Y) components of trace B^V = Σ_i ε_i B^V(V_i, V_i)."""
        n = self.BV.shape[0]
        eps = np.asarray(self.causalities[:n], dtype=float)
        return np.einsum("i,iic->c", eps, self.BV)


@dataclass(frozen=True)
class FoliationClassification:
    conformal: bool
    semi_riemannian: bool
    minimal: bool
    totally_geodesic: bool
    witnesses: Dict[str, float]
    cross_checks_agree: bool = True
    closed: bool = True

    def flags(self):
        return (self.conformal, self.semi_riemannian, self.minimal, self.totally_geodesic)


@dataclass(frozen=True)
class StructuralReport:
    derived_bracket_leak: float
    derived_brackets_vertical: bool
    cross_factor_leak: Optional[float] = None
    factors_decoupled: Optional[bool] = None
    semisimple_conformal_is_riemannian: Optional[bool] = None


@dataclass(frozen=True)
class TraceIdentity:
    x_trace: float
    x_frame_sum: float
    y_trace: float
    y_frame_sum: float

    @property
    def residual(self):
        return max(abs(self.x_trace - self.x_frame_sum), abs(self.y_trace - self.y_frame_sum))


@dataclass(frozen=True, eq=False)
class GEpsilonFrame:
    """
    A vertical frame in which the restricted metric is c·g_ε for the Cartan-Killing metric of k.

    `vertical_frame` is given in ambient algebra coordinates; `theta_eigenvalues` are the
    ±1 eigenvalues of the Cartan involution on each frame vector.
    """

    scale: float
    eps: Tuple[int, ...]
    vertical_frame: np.ndarray
    theta_eigenvalues: Tuple[int, ...]


@dataclass(frozen=True)
class CheckItem:
    name: str
    holds: bool
    witness: float


@dataclass
class TheoremReport:
    theorem: str
    outcome: str
    premises: List[CheckItem] = field(default_factory=list)
    conclusions: List[CheckItem] = field(default_factory=list)
    variants: List["TheoremReport"] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


def _validate_vertical_indices(algebra, vertical_indices):
    indices = tuple(int(i) for i in vertical_indices)
    if len(set(indices)) != len(indices) or not all(0 <= i < algebra.dim for i in indices):
        raise InputError(f"Vertical indices {list(indices)} are invalid for dimension {algebra.dim}.")
    if algebra.dim - len(indices) != 2:
        raise InputError(f"Foliation must have codimension 2, got {algebra.dim - len(indices)}.")
    return indices


def _closure_defect(algebra, metric, vertical, horizontal, horizontal_eps):
    defect = 0.0
    n = vertical.shape[1]
    for a in range(n):
        for b in range(a + 1, n):
            product = bracket(algebra, vertical[:, a], vertical[:, b])
            components = [eps * metric(product, horizontal[:, h]) for h, eps in enumerate(horizontal_eps)]
            defect = max(defect, float(np.abs(components).max()))
    return defect


def _finish_setup(algebra, metric, vertical, horizontal, causalities, vertical_indices, tol, normalized=None):
    eps_x, eps_y = causalities[-2:]
    defect = _closure_defect(algebra, metric, vertical, horizontal, (eps_x, eps_y))
    closed = defect <= tol * algebra.scale
    if not closed:
        logging.warning(f"Vertical span is not a subalgebra (horizontal leak {defect:.3e}).")
    if normalized is None:
        y_component = eps_y * metric(bracket(algebra, horizontal[:, 0], horizontal[:, 1]), horizontal[:, 1])
        normalized = abs(y_component) <= tol * algebra.scale
    return FoliationSetup(
        algebra=algebra,
        metric=metric,
        vertical_frame=vertical,
        horizontal_frame=horizontal,
        causalities=tuple(int(e) for e in causalities),
        closed=closed,
        closure_defect=defect,
        normalized=bool(normalized),
        vertical_indices=vertical_indices,
        tol=tol,
    )


def _rotate_horizontal(algebra, metric, x0, y0, eps_x, eps_y, tol):
    """
    Rotates (X0, Y0) so that H[X, Y] = ρX with ρ > 0. Returns (X, Y, ε_X, ε_Y).
    """
    product = bracket(algebra, x0, y0)
    a = eps_x * metric(product, x0)
    b = eps_y * metric(product, y0)
    if np.hypot(a, b) < tol * algebra.scale:
        return x0, y0, eps_x, eps_y

    h = a * x0 + b * y0
    norm = eps_x * a ** 2 + eps_y * b ** 2
    if abs(norm) < tol * algebra.scale ** 2:
        raise FrameError(f"Horizontal part of [X, Y] is null (a={a:.3e}, b={b:.3e}); no adapted frame exists.")
    size = np.sqrt(abs(norm))
    sign = 1.0 if norm > 0 else -1.0
    x = h / size
    y = sign * (-eps_y * b * x0 + eps_x * a * y0) / size
    return x, y, int(sign), int(np.sign(eps_x * eps_y * norm))


def adapted_frame(algebra: LieAlgebra, metric: MetricTensor, vertical_indices: Sequence[int], tol=DEFAULT_TOL) -> FoliationSetup:
    """
    Builds the adapted frame of the foliation generated by the coordinate subalgebra `vertical_indices`.

    The vertical coordinate vectors are orthonormalized, the non-vertical coordinate vectors are
    projected onto the orthogonal complement and orthonormalized, and (X, Y) is rotated so that
    the horizontal part of [X, Y] is ρX with ρ >= 0.

    Raises:
        InputError: If the codimension is not 2.
        DegenerateRestrictionError: If g is degenerate on the vertical span or its complement.
        FrameError: If the horizontal part of [X, Y] is a null vector.
    """
    indices = _validate_vertical_indices(algebra, vertical_indices)
    identity = np.eye(algebra.dim)
    vertical_frame = orthonormal_frame(metric, identity[:, list(indices)], tol)
    vertical = vertical_frame.change
    vertical_eps = vertical_frame.causalities

    projected = []
    for j in (j for j in range(algebra.dim) if j not in indices):
        w = identity[:, j].copy()
        for a, eps in enumerate(vertical_eps):
            w = w - eps * metric(identity[:, j], vertical[:, a]) * vertical[:, a]
        projected.append(w)
    horizontal_frame = orthonormal_frame(metric, np.column_stack(projected), tol)
    x0, y0 = horizontal_frame.vectors()
    eps_x, eps_y = horizontal_frame.causalities

    x, y, eps_x, eps_y = _rotate_horizontal(algebra, metric, x0, y0, eps_x, eps_y, tol)
    logging.debug(f"Adapted frame for vertical {list(indices)}: causalities {vertical_eps + (eps_x, eps_y)}.")
    return _finish_setup(
        algebra, metric, vertical, np.column_stack([x, y]), vertical_eps + (eps_x, eps_y), indices, tol
    )


def build_setup(algebra: LieAlgebra, metric: MetricTensor, vertical_frame, horizontal_frame, tol=DEFAULT_TOL, vertical_indices=None) -> FoliationSetup:
    """
    Wraps a caller-supplied frame after checking that it is orthonormal.

    The horizontal pair is used as given; `normalized` records whether H[X, Y] = ρX holds.

    Raises:
        InputError: If the frame shapes do not describe a codimension 2 splitting.
        FrameError: If the frame is not orthonormal for the metric.
    """
    vertical = np.asarray(vertical_frame, dtype=float)
    horizontal = np.asarray(horizontal_frame, dtype=float)
    if vertical.ndim != 2 or vertical.shape != (algebra.dim, algebra.dim - 2) or horizontal.shape != (algebra.dim, 2):
        raise InputError(
            f"Frame shapes {vertical.shape} and {horizontal.shape} do not fit dimension {algebra.dim} with codimension 2."
        )
    frame = np.column_stack([vertical, horizontal])
    gram = frame.T @ metric.matrix @ frame
    diagonal = np.diag(gram)
    causalities = tuple(1 if d > 0 else -1 for d in diagonal)
    residual = float(np.abs(gram - np.diag(causalities)).max())
    metric_scale = max(1.0, float(np.abs(metric.matrix).max()))
    if residual > tol * metric_scale * max(1.0, float(np.abs(frame).max()) ** 2):
        raise FrameError(f"Supplied frame is not orthonormal (residual {residual:.3e}).")
    return _finish_setup(algebra, metric, vertical, horizontal, causalities, vertical_indices, tol)


def coefficients(setup: FoliationSetup) -> FoliationCoefficients:
    lam = setup.frame_constants
    n, ix, iy = setup.n, setup.x_index, setup.y_index
    return FoliationCoefficients(
        x=lam[ix, :n, :n].copy(),
        y=lam[iy, :n, :n].copy(),
        rho=float(lam[ix, iy, ix]),
        theta=lam[ix, iy, :n].copy(),
        x_leakage=np.linalg.norm(lam[ix, :n, n:], axis=1),
        y_leakage=np.linalg.norm(lam[iy, :n, n:], axis=1),
        xy_y_component=float(lam[ix, iy, iy]),
    )


def reconstruct(setup: FoliationSetup, coeffs: FoliationCoefficients) -> LieAlgebra:
    """
    The algebra rebuilt in the frame from the vertical constants and the coefficients alone.

    Agrees with the frame constants exactly when [V, H] is vertical and the frame is normalized.
    """
    n, ix, iy = setup.n, setup.x_index, setup.y_index
    constants = np.zeros((n + 2, n + 2, n + 2))
    constants[:n, :n, :n] = setup.frame_constants[:n, :n, :n]
    constants[:n, ix, :n] = -coeffs.x
    constants[:n, iy, :n] = -coeffs.y
    constants[ix, iy, ix] = coeffs.rho
    constants[ix, iy, :n] = coeffs.theta
    return LieAlgebra(n + 2, constants, setup.framed_algebra().basis_names)


def second_fundamental_forms(setup: FoliationSetup) -> SecondFundamentalForms:
    """
    B^V(V_j, V_k) = ½ Σ_h ε_h (g([h, V_j], V_k) + g([h, V_k], V_j)) h over h ∈ {X, Y}, and
    B^H(E, F) = ½ Σ_i ε_i (g([V_i, E], F) + g([V_i, F], E)) V_i.
    """
    algebra, metric = setup.algebra, setup.metric
    vertical, horizontal = setup.vertical_frame, setup.horizontal_frame
    n = setup.n
    eps = setup.eps

    # products[a, b, c] = g([a, b], c) with a, b, c running over the frame
    frame = setup.frame
    products = np.einsum("ia,jb,ijk,kl,lc->abc", frame, frame, algebra.constants, metric.matrix, frame)

    bv = np.zeros((n, n, 2))
    for h in range(2):
        hv = products[n + h, :n, :n]
        bv[:, :, h] = 0.5 * eps[n + h] * (hv + hv.T)

    bh = np.zeros((2, 2, n))
    for i in range(n):
        vh = products[i, n:, n:]
        bh[:, :, i] = 0.5 * eps[i] * (vh + vh.T)
    return SecondFundamentalForms(bv, bh, setup.causalities)


def classify(setup: FoliationSetup, tol=DEFAULT_TOL) -> FoliationClassification:
    """
    Decides the four foliation properties and returns the worst violation of each criterion.

    Minimality and total geodesicity are decided from the coefficients and re-decided from
    the trace and the components of B^V; a disagreement is logged and recorded.
    """
    forms = second_fundamental_forms(setup)
    coeffs = coefficients(setup)
    n = setup.n
    eps = setup.eps
    eps_v = eps[:n]
    eps_x, eps_y = eps[n], eps[n + 1]
    scale = setup.scale
    threshold = tol * scale

    bh_xx, bh_xy, bh_yy = forms.BH[0, 0], forms.BH[0, 1], forms.BH[1, 1]
    conformal_witness = float(max(np.abs(eps_x * bh_xx - eps_y * bh_yy).max(initial=0.0), np.abs(bh_xy).max(initial=0.0)))
    riemannian_witness = float(np.abs(eps_x * bh_xx + eps_y * bh_yy).max(initial=0.0))
    conformal = conformal_witness <= threshold
    semi_riemannian = conformal and riemannian_witness <= threshold

    minimal_x = abs(float(np.trace(coeffs.x)))
    minimal_y = abs(float(np.trace(coeffs.y)))
    minimal = max(minimal_x, minimal_y) <= n * threshold

    x_sym = eps_v[None, :] * coeffs.x + eps_v[:, None] * coeffs.x.T
    y_sym = eps_v[None, :] * coeffs.y + eps_v[:, None] * coeffs.y.T
    geodesic_witness = float(max(np.abs(x_sym).max(initial=0.0), np.abs(y_sym).max(initial=0.0)))
    totally_geodesic = geodesic_witness <= threshold

    trace_bv = float(np.abs(forms.trace_bv()).max(initial=0.0))
    form_witness = 2.0 * float(np.abs(forms.BV).max(initial=0.0))
    agree = (trace_bv <= n * threshold) == minimal and (form_witness <= threshold) == totally_geodesic
    if not agree:
        logging.error(
            f"Coefficient and B^V criteria disagree: trace {trace_bv:.3e} vs {max(minimal_x, minimal_y):.3e}, "
            f"B^V {form_witness:.3e} vs {geodesic_witness:.3e}."
        )

    witnesses = {
        "conformal": conformal_witness,
        "semi_riemannian": riemannian_witness,
        "minimal_x": minimal_x,
        "minimal_y": minimal_y,
        "signed_trace_x": float(eps_v @ np.diag(coeffs.x)),
        "signed_trace_y": float(eps_v @ np.diag(coeffs.y)),
        "totally_geodesic": geodesic_witness,
        "trace_bv": trace_bv,
        "bv_max": form_witness,
    }
    return FoliationClassification(conformal, semi_riemannian, minimal, totally_geodesic, witnesses, agree, setup.closed)


def vertical_algebra(setup: FoliationSetup) -> LieAlgebra:
    """The subalgebra spanned by the vertical frame, in that frame."""
    n = setup.n
    return LieAlgebra(n, setup.frame_constants[:n, :n, :n], tuple(f"V{i + 1}" for i in range(n)))


def structural_checks(setup: FoliationSetup, tol=DEFAULT_TOL, factors: Optional[Sequence[Sequence[int]]] = None) -> StructuralReport:
    """
    Checks that H[[V, V], H] vanishes and, when `factors` partitions the vertical frame positions
    into closed blocks, that [V_k, H] has no component along any other block. Also checks that a
    conformal foliation with semisimple leaves has B^H = 0.

    Raises:
        InputError: If `factors` is not a partition of the vertical positions or a block is not closed.
    """
    lam = setup.frame_constants
    n = setup.n
    threshold = tol * setup.scale ** 2

    derived = np.einsum("abm,mhc->abhc", lam[:n, :n, :], lam[:, n:, :])
    derived_leak = float(np.abs(derived[:, :, :, n:]).max(initial=0.0))
    report = {"derived_bracket_leak": derived_leak, "derived_brackets_vertical": derived_leak <= threshold}

    if factors is not None:
        blocks = [tuple(int(i) for i in block) for block in factors]
        flat = sorted(i for block in blocks for i in block)
        if flat != list(range(n)):
            raise InputError(f"Factors {blocks} do not partition the vertical positions 0..{n - 1}.")
        cross = 0.0
        for block in blocks:
            outside = [m for m in range(n + 2) if m not in block]
            leak = float(np.abs(lam[np.ix_(block, block, outside)]).max(initial=0.0))
            if leak > tol * setup.scale:
                raise InputError(f"Factor {list(block)} is not closed under the bracket (leak {leak:.3e}).")
            others = [m for m in range(n) if m not in block]
            if others:
                cross = max(cross, float(np.abs(lam[np.ix_(block, [n, n + 1], others)]).max(initial=0.0)))
        report["cross_factor_leak"] = cross
        report["factors_decoupled"] = cross <= tol * setup.scale

    if setup.closed and is_semisimple(vertical_algebra(setup), tol).semisimple:
        classification = classify(setup, tol)
        if classification.conformal:
            bh = float(np.abs(second_fundamental_forms(setup).BH).max(initial=0.0))
            report["semisimple_conformal_is_riemannian"] = bh <= tol * setup.scale
    return StructuralReport(**report)


def trace_identity(setup: FoliationSetup) -> TraceIdentity:
    """
    Both sides of trace(ad_E) = Σ_i ε_i g([E, V_i], V_i) + ε_X g([E, X], X) + ε_Y g([E, Y], Y)
    for E = X and E = Y. The left side is computed in the algebra basis.
    """
    algebra, metric = setup.algebra, setup.metric
    frame = setup.frame
    sides = []
    for column in (setup.x_index, setup.y_index):
        e = frame[:, column]
        trace = float(np.trace(ad_matrix(algebra, e)))
        frame_sum = sum(
            eps * metric(bracket(algebra, e, frame[:, a]), frame[:, a]) for a, eps in enumerate(setup.causalities)
        )
        sides.extend([trace, float(frame_sum)])
    return TraceIdentity(*sides)


def g_epsilon_frame(algebra: LieAlgebra, metric: MetricTensor, vertical_indices: Sequence[int], theta: Optional[CartanInvolution] = None, tol=DEFAULT_TOL) -> Optional[GEpsilonFrame]:
    """
    Decides whether g restricted to k equals c·g_ε for the Cartan-Killing metric -B(·, θ·) of k.

    When θ is omitted, k must be compact and θ = identity is used. The metric and θ are
    diagonalized together in a Cartan-Killing orthonormal frame; the restriction is c·g_ε when all
    eigenvalues have modulus c. Returns None when no such frame exists.

    Raises:
        InputError: If the vertical span is not a subalgebra.
        InvalidInvolutionError: If θ is not a Cartan involution of k.
    """
    indices = list(vertical_indices)
    sub = subalgebra(algebra, indices, tol)
    theta = theta or CartanInvolution.identity(sub.dim)
    reference = cartan_killing_metric(sub, theta, tol).matrix
    restricted = metric.matrix[np.ix_(indices, indices)]

    lower = np.linalg.cholesky(reference)
    lower_inv = np.linalg.inv(lower)
    s = lower_inv @ restricted @ lower_inv.T
    t = lower.T @ theta.matrix @ lower_inv.T
    t = (t + t.T) / 2.0

    scale = max(1.0, float(np.abs(s).max()))
    if np.abs(s @ t - t @ s).max() > tol * scale:
        logging.info("Restricted metric does not commute with the Cartan involution; not a g_ε metric.")
        return None

    signs, basis = np.linalg.eigh(t)
    columns, values, theta_values = [], [], []
    for sign in (-1.0, 1.0):
        block = basis[:, np.abs(signs - sign) < 0.5]
        if block.shape[1] == 0:
            continue
        mu, rotation = np.linalg.eigh(block.T @ s @ block)
        columns.append(block @ rotation)
        values.extend(mu.tolist())
        theta_values.extend([int(sign)] * len(mu))
    unitary = np.column_stack(columns)
    values = np.asarray(values)

    c = float(np.abs(values).mean())
    if c <= tol * scale or np.abs(np.abs(values) - c).max() > tol * scale:
        logging.info(f"Restricted metric eigenvalues {np.round(values, 12).tolist()} are not ±c.")
        return None

    local = lower_inv.T @ unitary / np.sqrt(c)
    frame = np.zeros((algebra.dim, len(indices)))
    frame[indices, :] = local
    eps = tuple(1 if v > 0 else -1 for v in values)
    return GEpsilonFrame(c, eps, frame, tuple(theta_values))


def _outcome(theorem, premises, conclusions):
    if not all(item.holds for item in premises):
        return PREMISES_FAIL
    if all(item.holds for item in conclusions):
        return VERIFIED
    logging.error(f"{theorem}: premises hold but the conclusion fails: {conclusions}.")
    return CONTRADICTION


def _closed_setup(algebra, metric, vertical_indices, tol, theorem):
    setup = adapted_frame(algebra, metric, vertical_indices, tol)
    if not setup.closed:
        report = TheoremReport(theorem, NOT_APPLICABLE)
        report.notes.append(f"vertical span is not a subalgebra (leak {setup.closure_defect:.3e})")
        return setup, report
    return setup, None


def verify_theorem_minimal(algebra: LieAlgebra, metric: MetricTensor, vertical_indices: Sequence[int], tol=DEFAULT_TOL) -> TheoremReport:
    """A conformal foliation with semisimple leaves is minimal."""
    theorem = "semisimple-conformal-minimal"
    setup, skipped = _closed_setup(algebra, metric, vertical_indices, tol, theorem)
    if skipped:
        return skipped
    semisimple = is_semisimple(subalgebra(algebra, setup.vertical_indices, tol), tol)
    classification = classify(setup, tol)
    witnesses = classification.witnesses
    premises = [
        CheckItem("vertical semisimple", semisimple.semisimple, semisimple.smallest_singular_value),
        CheckItem("conformal", classification.conformal, witnesses["conformal"]),
    ]
    conclusions = [CheckItem("minimal", classification.minimal, max(witnesses["minimal_x"], witnesses["minimal_y"]))]
    return TheoremReport(theorem, _outcome(theorem, premises, conclusions), premises, conclusions)


def killing_fit(algebra: LieAlgebra, metric: MetricTensor, vertical_indices: Sequence[int], tol=DEFAULT_TOL):
    """
    Least-squares fit of g restricted to k against -B_k. Returns (c, residual, holds).
    """
    indices = list(vertical_indices)
    restricted = metric.matrix[np.ix_(indices, indices)]
    negative_killing = -killing_form(subalgebra(algebra, indices, tol)).matrix
    denominator = float(np.sum(negative_killing * negative_killing))
    c = float(np.sum(restricted * negative_killing)) / denominator if denominator > 0 else 0.0
    residual = float(np.linalg.norm(restricted - c * negative_killing))
    holds = c > 0 and residual <= tol * max(1.0, float(np.linalg.norm(restricted)))
    return c, residual, holds


def _g_epsilon_variant(algebra, metric, setup, theta, tol):
    theorem = "g-epsilon-minimal"
    try:
        detected = g_epsilon_frame(algebra, metric, setup.vertical_indices, theta, tol)
    except InvalidInvolutionError as e:
        report = TheoremReport(theorem, NOT_APPLICABLE)
        report.notes.append(f"no Cartan-Killing metric on the vertical algebra: {e}")
        return report
    if detected is None:
        return TheoremReport(theorem, PREMISES_FAIL, [CheckItem("vertical metric is c·g_ε", False, 0.0)])

    framed = build_setup(algebra, metric, detected.vertical_frame, setup.horizontal_frame, tol, setup.vertical_indices)
    classification = classify(framed, tol)
    coeffs = coefficients(framed)
    diagonal = float(max(np.abs(np.diag(coeffs.x)).max(), np.abs(np.diag(coeffs.y)).max()))
    premises = [
        CheckItem("vertical metric is c·g_ε", True, detected.scale),
        CheckItem("conformal", classification.conformal, classification.witnesses["conformal"]),
    ]
    conclusions = [
        CheckItem("diagonal coefficients vanish", diagonal <= tol * framed.scale, diagonal),
        CheckItem("minimal", classification.minimal, max(classification.witnesses["minimal_x"], classification.witnesses["minimal_y"])),
    ]
    report = TheoremReport(theorem, _outcome(theorem, premises, conclusions), premises, conclusions)
    report.notes.append(f"ε = {list(detected.eps)}, c = {detected.scale:.6g}")
    return report


def verify_theorem_totally_geodesic(algebra: LieAlgebra, metric: MetricTensor, vertical_indices: Sequence[int], tol=DEFAULT_TOL, theta: Optional[CartanInvolution] = None) -> TheoremReport:
    """
    A conformal foliation whose semisimple leaves carry a positive multiple of -B is totally geodesic.

    The g_ε variant (vertical metric c·g_ε implies minimal) is attached as a nested report; it
    is not applicable when k is not semisimple, or non-compact without a supplied θ.
    """
    theorem = "killing-conformal-totally-geodesic"
    setup, skipped = _closed_setup(algebra, metric, vertical_indices, tol, theorem)
    if skipped:
        return skipped
    semisimple = is_semisimple(subalgebra(algebra, setup.vertical_indices, tol), tol)
    c, residual, fits = killing_fit(algebra, metric, setup.vertical_indices, tol)
    classification = classify(setup, tol)
    premises = [
        CheckItem("vertical semisimple", semisimple.semisimple, semisimple.smallest_singular_value),
        CheckItem("vertical metric proportional to -B", fits, residual),
        CheckItem("conformal", classification.conformal, classification.witnesses["conformal"]),
    ]
    conclusions = [CheckItem("totally geodesic", classification.totally_geodesic, classification.witnesses["totally_geodesic"])]
    report = TheoremReport(theorem, _outcome(theorem, premises, conclusions), premises, conclusions)
    report.notes.append(f"Killing fit c = {c:.6g}")

    if semisimple.semisimple:
        report.variants.append(_g_epsilon_variant(algebra, metric, setup, theta, tol))
    else:
        variant = TheoremReport("g-epsilon-minimal", NOT_APPLICABLE)
        variant.notes.append("vertical algebra is not semisimple")
        report.variants.append(variant)
    return report

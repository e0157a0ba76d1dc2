"""
geometry/curvature.py

This module computes the Levi-Civita connection and sectional curvatures of left-invariant
Riemannian metrics on Lie groups, working in an orthonormal frame whose structure constants
λ[a, b, c] = λ_{ab}^c determine everything.

Key Features:
- Connection coefficients from the Koszul formula for left-invariant fields.
- Sectional curvature by Milnor's closed three-sum formula, and independently from the
  curvature operator built out of the connection coefficients.
- Leaf-space curvature of a Riemannian foliation of codimension two via O'Neill's formula,
  reported next to -ρ² together with the terms that separate them.

Functions:
- framed_algebra: Orthonormal frame and frame constants of a Riemannian metric.
- levi_civita: Connection coefficients Γ[i, j, k].
- sectional_milnor / sectional_direct: Sectional curvature of a coordinate plane of the frame.
- riemannian_submersion_relations: Witnesses for the relations a Riemannian foliation imposes.
- oneill_leaf_curvature: Curvature of the leaf space.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from geometry.errors import InputError, UnsupportedSignatureError
from geometry.foliation import FoliationSetup, classify, coefficients
from geometry.lie_core import DEFAULT_TOL, LieAlgebra, change_basis
from geometry.semi_metric import MetricTensor, OrthonormalFrame, orthonormal_frame


@dataclass(frozen=True, eq=False)
class ConnectionCoefficients:
    """gamma[i, j, k] is the e_k component of ∇_{e_i} e_j."""

    gamma: np.ndarray

    def compatibility_residual(self):
        return float(np.abs(self.gamma + self.gamma.transpose(0, 2, 1)).max(initial=0.0))

    def torsion_residual(self, algebra: LieAlgebra):
        return float(np.abs(self.gamma - self.gamma.transpose(1, 0, 2) - algebra.constants).max(initial=0.0))


@dataclass(frozen=True)
class CurvatureReport:
    plane: Tuple[int, int]
    curvature: float
    method: str
    leaf_curvature: Optional[float] = None
    expected_leaf_curvature: Optional[float] = None
    vertical_term: Optional[float] = None
    rotation_term: Optional[float] = None
    reliable: bool = True


@dataclass(frozen=True)
class SubmersionRelations:
    vx_x: float
    vy_y: float
    mixed: float
    holds: bool


def _require_riemannian(causalities):
    if causalities is not None and any(int(e) != 1 for e in causalities):
        raise UnsupportedSignatureError(f"Curvature needs a Riemannian orthonormal frame, got causalities {tuple(causalities)}.")


def framed_algebra(algebra: LieAlgebra, metric: MetricTensor, tol=DEFAULT_TOL) -> Tuple[OrthonormalFrame, LieAlgebra]:
    """
    Orthonormal frame of a Riemannian metric and the structure constants in that frame.

    Raises:
        UnsupportedSignatureError: If the metric is not positive definite.
    """
    frame = orthonormal_frame(metric, tol=tol)
    _require_riemannian(frame.causalities)
    names = tuple(algebra.basis_names[i] for i in frame.seed_order())
    return frame, change_basis(algebra, frame.change, tol, basis_names=names)


def levi_civita(algebra: LieAlgebra, causalities: Optional[Sequence[int]] = None) -> ConnectionCoefficients:
    """
    Γ[i, j, k] = ½(λ[k, i, j] + λ[k, j, i] + λ[i, j, k]) for constants given in a Riemannian
    orthonormal frame.
    """
    _require_riemannian(causalities)
    lam = algebra.constants
    gamma = 0.5 * (lam.transpose(1, 2, 0) + lam.transpose(2, 1, 0) + lam)
    return ConnectionCoefficients(gamma)


def _check_plane(algebra, i, j):
    if i == j:
        raise InputError(f"Sectional curvature needs two distinct frame vectors, got ({i}, {j}).")
    if not (0 <= i < algebra.dim and 0 <= j < algebra.dim):
        raise InputError(f"Plane ({i}, {j}) is out of range for dimension {algebra.dim}.")


def sectional_milnor(algebra: LieAlgebra, i, j, causalities: Optional[Sequence[int]] = None) -> CurvatureReport:
    """
    K(e_i, e_j) = -Σ_k λ_{kj}^j λ_{ki}^i
                  - ½ Σ_k λ_{ij}^k (λ_{ij}^k + λ_{ik}^j + λ_{kj}^i)
                  + ¼ Σ_k (λ_{ij}^k + λ_{ki}^j + λ_{kj}^i)(λ_{ji}^k + λ_{ki}^j + λ_{kj}^i)
    """
    _require_riemannian(causalities)
    _check_plane(algebra, i, j)
    lam = algebra.constants
    first = -np.dot(lam[:, j, j], lam[:, i, i])
    second = -0.5 * np.dot(lam[i, j, :], lam[i, j, :] + lam[i, :, j] + lam[:, j, i])
    third = 0.25 * np.dot(lam[i, j, :] + lam[:, i, j] + lam[:, j, i], lam[j, i, :] + lam[:, i, j] + lam[:, j, i])
    return CurvatureReport((i, j), float(first + second + third), "milnor")


def sectional_direct(algebra: LieAlgebra, i, j, causalities: Optional[Sequence[int]] = None) -> CurvatureReport:
    """K(e_i, e_j) = g(∇_i ∇_j e_j - ∇_j ∇_i e_j - ∇_{[e_i, e_j]} e_j, e_i) from the connection coefficients."""
    _require_riemannian(causalities)
    _check_plane(algebra, i, j)
    gamma = levi_civita(algebra).gamma
    lam = algebra.constants
    first = np.dot(gamma[j, j, :], gamma[i, :, i])
    second = np.dot(gamma[i, j, :], gamma[j, :, i])
    third = np.dot(lam[i, j, :], gamma[:, j, i])
    return CurvatureReport((i, j), float(first - second - third), "direct")


def riemannian_submersion_relations(setup: FoliationSetup, tol=DEFAULT_TOL) -> SubmersionRelations:
    """
    Worst values of λ_{V_i X}^X, λ_{V_i Y}^Y and λ_{V_i X}^Y + λ_{V_i Y}^X, which all vanish for a
    Riemannian foliation.
    """
    lam = setup.frame_constants
    n, ix, iy = setup.n, setup.x_index, setup.y_index
    vx_x = float(np.abs(lam[:n, ix, ix]).max(initial=0.0))
    vy_y = float(np.abs(lam[:n, iy, iy]).max(initial=0.0))
    mixed = float(np.abs(lam[:n, ix, iy] + lam[:n, iy, ix]).max(initial=0.0))
    holds = max(vx_x, vy_y, mixed) <= tol * setup.scale
    return SubmersionRelations(vx_x, vy_y, mixed, holds)


def oneill_leaf_curvature(setup: FoliationSetup, tol=DEFAULT_TOL) -> CurvatureReport:
    """
    K_L = K(X, Y) + ¾ Σ_k (θ^k)², compared with -ρ².

    The two agree up to the rotation term Σ_k θ^k λ_{V_k Y}^X, which vanishes when [V, H] is
    vertical. The value is flagged unreliable when the foliation is not Riemannian.

    Raises:
        UnsupportedSignatureError: If the frame is not Riemannian.
    """
    _require_riemannian(setup.causalities)
    coeffs = coefficients(setup)
    relations = riemannian_submersion_relations(setup, tol)
    classification = classify(setup, tol)
    reliable = classification.semi_riemannian and relations.holds and setup.normalized
    if not reliable:
        logging.warning(
            f"Leaf curvature computed outside its hypotheses (Riemannian foliation {classification.semi_riemannian}, "
            f"relations {relations.holds}, normalized frame {setup.normalized})."
        )

    ix, iy = setup.x_index, setup.y_index
    lam = setup.frame_constants
    plane = sectional_milnor(setup.framed_algebra(), ix, iy)
    vertical_term = 0.75 * float(np.dot(coeffs.theta, coeffs.theta))
    rotation_term = float(np.dot(coeffs.theta, lam[: setup.n, iy, ix]))
    return CurvatureReport(
        plane=(ix, iy),
        curvature=plane.curvature,
        method="oneill",
        leaf_curvature=plane.curvature + vertical_term,
        expected_leaf_curvature=-coeffs.rho ** 2,
        vertical_term=vertical_term,
        rotation_term=rotation_term,
        reliable=reliable,
    )

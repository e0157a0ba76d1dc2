"""
geometry/semi_metric.py

This module handles left-invariant semi-Riemannian metrics on a Lie algebra, i.e.
symmetric non-degenerate bilinear forms given by their Gram matrix in the algebra
basis.

Key Features:
- Signature counting with an explicit degeneracy error.
- Indefinite Gram-Schmidt, pivoting only past null seeds, that returns an adapted basis and its
  causalities ε_i = sign g(V_i, V_i).
- Cartan involutions, the Cartan-Killing metric -B(·, θ·) and the g_ε family obtained by
  flipping signs in a Cartan-Killing orthonormal frame.

Functions:
- signature: Counts positive and negative directions.
- orthonormal_frame: Indefinite Gram-Schmidt on a seed basis.
- restrict / congruent: Gram matrix on a subspace / in a new basis.
- check_involution / cartan_killing_metric / involution_eigenspaces: Cartan involution helpers.
- g_epsilon: Sign-flipped metric in a given orthonormal frame.
- random_orthogonal: Haar-random orthogonal matrix for re-framing.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from geometry.errors import (
    DegenerateMetricError,
    DegenerateRestrictionError,
    FrameError,
    InputError,
    InvalidInvolutionError,
)
from geometry.lie_core import DEFAULT_TOL, LieAlgebra, killing_form


@dataclass(frozen=True, eq=False)
class MetricTensor:
    """
    Symmetric bilinear form g_{ij} on the algebra. Only the upper triangle of the input is
    read, so the stored matrix is exactly symmetric.
    """

    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InputError(f"Metric must be a square matrix, got shape {matrix.shape}.")
        symmetric = np.triu(matrix) + np.triu(matrix, k=1).T
        symmetric.flags.writeable = False
        object.__setattr__(self, "matrix", symmetric)

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim))

    @property
    def dim(self):
        return self.matrix.shape[0]

    def __call__(self, u, v):
        return float(np.asarray(u) @ self.matrix @ np.asarray(v))


@dataclass(frozen=True, eq=False)
class OrthonormalFrame:
    """
    Columns of `change` are the frame vectors in algebra coordinates; `causalities`
    holds ε_i for each column.
    """

    change: np.ndarray
    causalities: Tuple[int, ...]
    order: Optional[Tuple[int, ...]] = None

    def seed_order(self):
        """Seed index each frame vector was built from; identity unless a pivot was needed."""
        return self.order if self.order is not None else tuple(range(self.change.shape[1]))

    def residual(self, metric: MetricTensor):
        """max |PᵀGP - diag(ε)|."""
        gram = self.change.T @ metric.matrix @ self.change
        return float(np.abs(gram - np.diag(self.causalities)).max(initial=0.0))

    def vectors(self):
        return [self.change[:, a] for a in range(self.change.shape[1])]


@dataclass(frozen=True, eq=False)
class CartanInvolution:
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim))


@dataclass(frozen=True)
class InvolutionReport:
    passed: bool
    involution_residual: float
    automorphism_residual: float
    symmetry_residual: float
    smallest_eigenvalue: float


def _metric_scale(metric):
    return max(1.0, float(np.abs(metric.matrix).max(initial=0.0)))


def signature(metric: MetricTensor, tol=DEFAULT_TOL) -> Tuple[int, int]:
    """
    Returns (p, q), the numbers of positive and negative eigenvalues.

    Raises:
        DegenerateMetricError: If an eigenvalue is within tol (relative) of zero.
    """
    eigenvalues = np.linalg.eigvalsh(metric.matrix)
    threshold = tol * max(1.0, float(np.abs(eigenvalues).max(initial=0.0)))
    if np.any(np.abs(eigenvalues) <= threshold):
        raise DegenerateMetricError(f"Metric is degenerate: eigenvalues {np.round(eigenvalues, 12).tolist()}.")
    return int(np.sum(eigenvalues > 0)), int(np.sum(eigenvalues < 0))


def _project_out(gram, vector, frame, causalities):
    for basis_vector, eps in zip(frame, causalities):
        vector = vector - eps * (vector @ gram @ basis_vector) * basis_vector
    return vector


def _strongest_null_pair(gram, candidates, threshold):
    best, pair = threshold, None
    for a in range(len(candidates)):
        for b in range(a + 1, len(candidates)):
            product = abs(candidates[a] @ gram @ candidates[b])
            if product > best:
                best, pair = product, (a, b)
    return pair


def orthonormal_frame(metric: MetricTensor, seed_basis=None, tol=DEFAULT_TOL) -> OrthonormalFrame:
    """
    Indefinite Gram-Schmidt on the columns of `seed_basis` (identity by default).

    Seeds are normalized in order, so the first k frame vectors span the first k seeds.
    When the next seed is null after projection, the remaining candidate with the largest
    |g(v, v)| is taken instead and `order` records the permutation.
    When every remaining candidate is null but two of them pair non-trivially, their sum is
    used instead.

    Raises:
        DegenerateRestrictionError: If g restricted to the seed span is degenerate.
    """
    gram = metric.matrix
    seeds = np.eye(metric.dim) if seed_basis is None else np.asarray(seed_basis, dtype=float)
    if seeds.ndim == 1:
        seeds = seeds.reshape(-1, 1)
    if seeds.shape[0] != metric.dim:
        raise InputError(f"Seed vectors have {seeds.shape[0]} coordinates, metric has dimension {metric.dim}.")

    column_norm = float(np.abs(seeds).max(initial=0.0)) ** 2 * seeds.shape[0]
    threshold = tol * _metric_scale(metric) * max(1.0, column_norm)

    candidates = [seeds[:, a].copy() for a in range(seeds.shape[1])]
    sources = list(range(seeds.shape[1]))
    frame, causalities, order = [], [], []
    while candidates:
        candidates = [_project_out(gram, v, frame, causalities) for v in candidates]
        norms = np.array([v @ gram @ v for v in candidates])
        # Seed order is kept while the next seed is non-null
        best = 0 if abs(norms[0]) >= threshold else int(np.argmax(np.abs(norms)))

        if abs(norms[best]) < threshold:
            pair = _strongest_null_pair(gram, candidates, threshold)
            if pair is None:
                raise DegenerateRestrictionError(
                    f"Gram-Schmidt pivot collapse after {len(frame)} of {seeds.shape[1]} vectors "
                    f"(max |g(v,v)| = {abs(norms[best]):.3e})."
                )
            a, b = pair
            logging.debug(f"Mixing null candidates {a} and {b} to continue Gram-Schmidt.")
            candidates[a] = candidates[a] + candidates[b]
            best = a
            norms[a] = candidates[a] @ gram @ candidates[a]

        vector = candidates.pop(best)
        order.append(sources.pop(best))
        norm = float(norms[best])
        frame.append(vector / np.sqrt(abs(norm)))
        causalities.append(1 if norm > 0 else -1)

    if order != sorted(order):
        logging.debug(f"Gram-Schmidt pivoted; frame vectors come from seeds {order}.")
    return OrthonormalFrame(np.column_stack(frame), tuple(causalities), tuple(order))


def restrict(metric: MetricTensor, subspace_basis: Sequence) -> MetricTensor:
    """Gram matrix of `subspace_basis` (a list of vectors) under the metric."""
    basis = np.column_stack([np.asarray(v, dtype=float) for v in subspace_basis])
    return MetricTensor(basis.T @ metric.matrix @ basis)


def congruent(metric: MetricTensor, change) -> MetricTensor:
    """The same bilinear form written in the basis given by the columns of `change`."""
    change = np.asarray(change, dtype=float)
    return MetricTensor(change.T @ metric.matrix @ change)


def check_involution(algebra: LieAlgebra, theta: CartanInvolution, tol=DEFAULT_TOL) -> InvolutionReport:
    """
    Checks θ² = I, θ[u,v] = [θu,θv] on basis pairs, and positivity of -B(·, θ·).
    """
    matrix = theta.matrix
    if matrix.shape != (algebra.dim, algebra.dim):
        raise InputError(f"Involution of shape {matrix.shape} does not match algebra dimension {algebra.dim}.")
    c = algebra.constants
    involution_residual = float(np.abs(matrix @ matrix - np.eye(algebra.dim)).max())
    image_of_bracket = np.einsum("mk,ijk->ijm", matrix, c)
    bracket_of_images = np.einsum("ai,bj,abm->ijm", matrix, matrix, c)
    automorphism_residual = float(np.abs(image_of_bracket - bracket_of_images).max(initial=0.0))

    form = -killing_form(algebra).matrix @ matrix
    symmetry_residual = float(np.abs(form - form.T).max())
    smallest = float(np.linalg.eigvalsh((form + form.T) / 2.0).min())

    scale = algebra.scale
    passed = (
        involution_residual <= tol
        and automorphism_residual <= tol * scale ** 2
        and symmetry_residual <= tol * scale ** 2
        and smallest > tol * scale ** 2
    )
    return InvolutionReport(passed, involution_residual, automorphism_residual, symmetry_residual, smallest)


def cartan_killing_metric(algebra: LieAlgebra, theta: CartanInvolution, tol=DEFAULT_TOL) -> MetricTensor:
    """
    The Riemannian metric g(V, W) = -B(V, θW).

    Raises:
        InvalidInvolutionError: If θ is not an involutive automorphism or the form is not
            positive definite.
    """
    report = check_involution(algebra, theta, tol)
    if not report.passed:
        raise InvalidInvolutionError(
            f"Not a Cartan involution: θ²-I {report.involution_residual:.3e}, "
            f"automorphism {report.automorphism_residual:.3e}, "
            f"smallest eigenvalue of -B(·,θ·) {report.smallest_eigenvalue:.3e}."
        )
    return MetricTensor(-killing_form(algebra).matrix @ theta.matrix)


def _column_space(matrix, tol):
    u, singular_values, _ = np.linalg.svd(matrix)
    rank = int(np.sum(singular_values > tol * max(1.0, float(singular_values.max(initial=0.0)))))
    return u[:, :rank]


def involution_eigenspaces(theta: CartanInvolution, tol=DEFAULT_TOL):
    """Bases (as matrix columns) of the +1 and -1 eigenspaces of θ."""
    identity = np.eye(theta.matrix.shape[0])
    plus = _column_space((identity + theta.matrix) / 2.0, tol)
    minus = _column_space((identity - theta.matrix) / 2.0, tol)
    return plus, minus


def g_epsilon(metric: MetricTensor, frame: OrthonormalFrame, eps: Sequence[int], tol=DEFAULT_TOL) -> MetricTensor:
    """
    The metric g_ε with g_ε(V_i, V_j) = ε_i g(V_i, V_j) in the g-orthonormal frame V.

    Raises:
        InputError: If ε has the wrong length or entries other than ±1.
        FrameError: If the frame is not a g-orthonormal basis.
    """
    eps = tuple(int(e) for e in eps)
    change = frame.change
    if change.shape != (metric.dim, metric.dim):
        raise FrameError(f"g_ε needs a full frame of {metric.dim} vectors, got shape {change.shape}.")
    if len(eps) != metric.dim or any(e not in (1, -1) for e in eps):
        raise InputError(f"ε must be {metric.dim} entries of ±1, got {eps}.")
    gram = change.T @ metric.matrix @ change
    residual = float(np.abs(gram - np.eye(metric.dim)).max())
    if residual > tol * _metric_scale(metric):
        raise FrameError(f"Frame is not orthonormal for the metric (residual {residual:.3e}).")
    inverse = np.linalg.inv(change)
    return MetricTensor(inverse.T @ np.diag(eps) @ inverse)


def random_orthogonal(rng: np.random.Generator, dim) -> np.ndarray:
    """Haar-distributed orthogonal matrix."""
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))

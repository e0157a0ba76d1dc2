"""
geometry/lie_core.py

This module represents finite-dimensional real Lie algebras by their structure
constants and provides the algebraic substrate for the rest of LeafSpace: bracket
evaluation, adjoint maps, the Killing form and Cartan's semisimplicity criterion,
direct sums and changes of basis.

Key Features:
- Dense structure-constant tensor c[i, j, k] = c^k_{ij} with antisymmetry enforced
  structurally: only the i < j entries are read, the rest is reflected.
- Jacobi validation with the worst residual and its witness triple.
- Killing form B_{ij} = trace(ad_{e_i} ad_{e_j}) and a singular-value based
  semisimplicity test.
- Structure constants derived from explicit matrix generators.

Functions:
- from_brackets: Builds an algebra from a sparse list of (i, j, k, value) entries with i < j.
- from_matrix_basis: Derives structure constants from commutators of matrices.
- bracket / ad_matrix: Evaluate [u, v] and ad_v.
- killing_form / is_semisimple: Killing form and Cartan's criterion.
- direct_sum / change_basis / subalgebra: Build new algebras from old ones.
- validate: Antisymmetry and Jacobi report.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from geometry.errors import InputError

DEFAULT_TOL = 1e-9
MAX_DENSE_DIM = 16

Vector = np.ndarray
LinearMap = np.ndarray


def _readonly(array):
    array = np.array(array, dtype=float)
    array.flags.writeable = False
    return array


def _default_names(dim, prefix="e"):
    return tuple(f"{prefix}{i + 1}" for i in range(dim))


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """
    A real Lie algebra of dimension `dim` given by its structure constants.

    Attributes:
        dim (int): Dimension n of the algebra.
        constants (np.ndarray): Tensor of shape (n, n, n) with constants[i, j, k] = c^k_{ij},
            the e_k component of [e_i, e_j]. Entries with i >= j are ignored on input
            and rebuilt by antisymmetry.
        basis_names (tuple): Labels of the basis vectors.
    """

    dim: int
    constants: np.ndarray
    basis_names: Tuple[str, ...] = ()

    def __post_init__(self):
        if int(self.dim) < 1:
            raise InputError(f"Lie algebra dimension must be positive, got {self.dim}.")
        if self.dim > MAX_DENSE_DIM:
            raise InputError(f"Dense structure constants are limited to dimension {MAX_DENSE_DIM}, got {self.dim}.")
        constants = np.asarray(self.constants, dtype=float)
        if constants.shape != (self.dim, self.dim, self.dim):
            raise InputError(f"Structure constants must have shape {(self.dim,) * 3}, got {constants.shape}.")

        upper = np.triu(np.ones((self.dim, self.dim), dtype=bool), k=1)[:, :, None]
        strict = np.where(upper, constants, 0.0)
        object.__setattr__(self, "constants", _readonly(strict - strict.transpose(1, 0, 2)))

        names = tuple(self.basis_names) if self.basis_names else _default_names(self.dim)
        if len(names) != self.dim:
            raise InputError(f"Expected {self.dim} basis names, got {len(names)}.")
        object.__setattr__(self, "basis_names", names)

    @property
    def scale(self):
        """max(1, max|c|), the reference magnitude for relative tolerances."""
        return max(1.0, float(np.abs(self.constants).max(initial=0.0)))

    def basis_vector(self, index):
        vector = np.zeros(self.dim)
        vector[index] = 1.0
        return vector

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, basis={list(self.basis_names)})"


@dataclass(frozen=True, eq=False)
class KillingForm:
    matrix: np.ndarray

    def __call__(self, u, v):
        return float(np.asarray(u) @ self.matrix @ np.asarray(v))


@dataclass(frozen=True)
class SemisimplicityReport:
    semisimple: bool
    smallest_singular_value: float
    largest_singular_value: float

    def __bool__(self):
        return self.semisimple


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    antisymmetry_violations: int
    jacobi_residual: float
    witness: Optional[Tuple[int, int, int]]
    tolerance: float


def from_brackets(dim, entries: Iterable[Tuple[int, int, int, float]], basis_names: Optional[Sequence[str]] = None):
    """
    Builds a LieAlgebra from sparse bracket entries [e_i, e_j] ∋ value · e_k.

    Args:
        dim (int): Dimension of the algebra.
        entries: Iterable of (i, j, k, value) with 0 <= i < j < dim and 0 <= k < dim.
            Repeated (i, j, k) entries are summed.
        basis_names (sequence, optional): Labels for the basis.

    Raises:
        InputError: If an index is out of range or an entry has i >= j.
    """
    constants = np.zeros((dim, dim, dim))
    for i, j, k, value in entries:
        if not all(0 <= index < dim for index in (i, j, k)):
            raise InputError(f"Bracket entry ({i}, {j}, {k}) is out of range for dimension {dim}.")
        if i >= j:
            raise InputError("bracket indices must satisfy i < j")
        constants[i, j, k] += float(value)
    logging.debug(f"Built structure constants of dimension {dim} from sparse entries.")
    return LieAlgebra(dim, constants, tuple(basis_names or ()))


def from_matrix_basis(matrices, basis_names: Optional[Sequence[str]] = None, tol=DEFAULT_TOL):
    """
    Derives structure constants from a basis of a matrix Lie algebra.

    Each commutator [M_i, M_j] is expanded in the basis by least squares over the real
    and imaginary parts of the entries.

    Raises:
        InputError: If the matrices are linearly dependent or a commutator leaves their span.
    """
    stack = np.asarray(matrices, dtype=complex)
    dim = stack.shape[0]
    flat = stack.reshape(dim, -1)
    design = np.concatenate([flat.real, flat.imag], axis=1).T

    if np.linalg.matrix_rank(design, tol=tol) < dim:
        raise InputError("Matrix generators are linearly dependent.")

    constants = np.zeros((dim, dim, dim))
    for i, j in itertools.combinations(range(dim), 2):
        commutator = (stack[i] @ stack[j] - stack[j] @ stack[i]).ravel()
        target = np.concatenate([commutator.real, commutator.imag])
        coefficients, *_ = np.linalg.lstsq(design, target, rcond=None)
        residual = np.abs(design @ coefficients - target).max(initial=0.0)
        if residual > tol * max(1.0, np.abs(target).max(initial=0.0)):
            raise InputError(f"Commutator of generators {i} and {j} is not in their span (residual {residual:.3e}).")
        constants[i, j] = coefficients
    return LieAlgebra(dim, constants, tuple(basis_names or ()))


def _coerce_vector(algebra, vector):
    coords = np.asarray(vector, dtype=float)
    if coords.shape != (algebra.dim,):
        raise InputError(f"Vector of shape {coords.shape} does not match algebra dimension {algebra.dim}.")
    return coords


def _coerce_map(algebra, matrix):
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (algebra.dim, algebra.dim):
        raise InputError(f"Linear map of shape {matrix.shape} does not match algebra dimension {algebra.dim}.")
    return matrix


def bracket(algebra: LieAlgebra, u, v) -> Vector:
    """Returns [u, v] with components [u,v]^k = Σ_{ij} u^i v^j c^k_{ij}."""
    u = _coerce_vector(algebra, u)
    v = _coerce_vector(algebra, v)
    return np.einsum("i,j,ijk->k", u, v, algebra.constants)


def ad_matrix(algebra: LieAlgebra, v) -> LinearMap:
    """Matrix of ad_v; column j is [v, e_j]."""
    v = _coerce_vector(algebra, v)
    return np.einsum("i,ijk->kj", v, algebra.constants)


def _adjoint_stack(algebra):
    # ads[i] is the matrix of ad_{e_i}
    return np.einsum("ijk->ikj", algebra.constants)


def killing_form(algebra: LieAlgebra) -> KillingForm:
    ads = _adjoint_stack(algebra)
    matrix = np.einsum("akl,blk->ab", ads, ads)
    return KillingForm(_readonly((matrix + matrix.T) / 2.0))


def is_semisimple(algebra: LieAlgebra, tol=DEFAULT_TOL) -> SemisimplicityReport:
    """
    Cartan's criterion: the algebra is semisimple iff its Killing form is non-degenerate.

    Non-degeneracy is judged by the smallest singular value of B relative to the largest
    (floored at 1), which keeps the decision independent of the dimension.
    """
    singular_values = np.linalg.svd(killing_form(algebra).matrix, compute_uv=False)
    smallest = float(singular_values.min())
    largest = float(singular_values.max())
    semisimple = smallest > tol * max(largest, 1.0)
    logging.debug(f"Semisimplicity of {algebra}: smallest sv {smallest:.3e}, largest sv {largest:.3e}.")
    return SemisimplicityReport(semisimple, smallest, largest)


def direct_sum(first: LieAlgebra, second: LieAlgebra) -> LieAlgebra:
    dim = first.dim + second.dim
    constants = np.zeros((dim, dim, dim))
    n1 = first.dim
    constants[:n1, :n1, :n1] = first.constants
    constants[n1:, n1:, n1:] = second.constants
    names = first.basis_names + second.basis_names
    if len(set(names)) < len(names):
        names = _default_names(dim)
    return LieAlgebra(dim, constants, names)


def change_basis(algebra: LieAlgebra, change, tol=DEFAULT_TOL, basis_names: Optional[Sequence[str]] = None) -> LieAlgebra:
    """
    Re-expresses the algebra in the basis f_a = Σ_i P^i_a e_i (columns of P).

    The new constants are c'^c_{ab} = Σ (P^{-1})^c_k c^k_{ij} P^i_a P^j_b.

    Raises:
        InputError: If P is singular relative to tol.
    """
    change = _coerce_map(algebra, change)
    singular_values = np.linalg.svd(change, compute_uv=False)
    if singular_values.min() <= tol * max(1.0, singular_values.max()):
        raise InputError(f"Change of basis is singular (smallest singular value {singular_values.min():.3e}).")
    inverse = np.linalg.inv(change)
    constants = np.einsum("ck,ijk,ia,jb->abc", inverse, algebra.constants, change, change)
    names = tuple(basis_names) if basis_names else _default_names(algebra.dim, prefix="f")
    return LieAlgebra(algebra.dim, constants, names)


def subalgebra(algebra: LieAlgebra, indices: Sequence[int], tol=DEFAULT_TOL) -> LieAlgebra:
    """
    Restricts the algebra to the span of the basis vectors `indices`.

    Raises:
        InputError: If an index is out of range or the span is not closed under the bracket.
    """
    indices = list(indices)
    if not indices or len(set(indices)) != len(indices):
        raise InputError(f"Subalgebra indices must be non-empty and distinct, got {indices}.")
    if not all(0 <= index < algebra.dim for index in indices):
        raise InputError(f"Subalgebra indices {indices} are out of range for dimension {algebra.dim}.")
    outside = [k for k in range(algebra.dim) if k not in indices]
    block = algebra.constants[np.ix_(indices, indices, range(algebra.dim))]
    leak = float(np.abs(block[:, :, outside]).max(initial=0.0))
    if leak > tol * algebra.scale:
        raise InputError(f"Span of {indices} is not closed under the bracket (leak {leak:.3e}).")
    names = tuple(algebra.basis_names[i] for i in indices)
    return LieAlgebra(len(indices), block[:, :, indices], names)


def jacobi_tensor(algebra: LieAlgebra) -> np.ndarray:
    """J[i, j, k, l]: the e_l component of the cyclic sum [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]."""
    c = algebra.constants
    return (
        np.einsum("jkm,iml->ijkl", c, c)
        + np.einsum("kim,jml->ijkl", c, c)
        + np.einsum("ijm,kml->ijkl", c, c)
    )


def validate(algebra: LieAlgebra, tol=DEFAULT_TOL) -> ValidationReport:
    """
    Checks the LieAlgebra invariants.

    The antisymmetry count is exact and zero by construction. The Jacobi residual is the
    worst component over all triples i < j < k, accepted when it is at most
    tol · max(1, max|c|²).
    """
    c = algebra.constants
    antisymmetry_violations = int(np.count_nonzero(c + c.transpose(1, 0, 2)))

    residual = -1.0
    witness = None
    if algebra.dim >= 3:
        jacobi = np.abs(jacobi_tensor(algebra)).max(axis=3)
        for i, j, k in itertools.combinations(range(algebra.dim), 3):
            if jacobi[i, j, k] > residual:
                residual = float(jacobi[i, j, k])
                witness = (i, j, k)
    residual = max(residual, 0.0)

    tolerance = tol * max(1.0, float(np.abs(c).max(initial=0.0)) ** 2)
    passed = antisymmetry_violations == 0 and residual <= tolerance
    if not passed:
        logging.info(f"Validation failed for {algebra}: Jacobi residual {residual:.3e} at {witness}.")
    return ValidationReport(passed, antisymmetry_violations, residual, witness, tolerance)

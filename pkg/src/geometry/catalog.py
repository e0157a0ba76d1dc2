"""
geometry/catalog.py

Concrete algebras, metrics and foliations used throughout LeafSpace.

Key Features:
- su(2) and sl(2, R) derived from explicit 2×2 matrix generators.
- Abelian, Heisenberg and the three-dimensional solvable control algebra.
- The seven-parameter Berger family on su(2) ⊕ R² with its orthonormal frame (A, B, C, X, Y),
  vertical {A, B, C}, and a g_ε variant of its vertical metric.
- The four trivially extended product cases (compact / non-compact, semisimple / not).
- Seeded parameter sampling and lookup of presets by name.

Functions:
- su2, sl2r, abelian, heisenberg, solvable_control: Basic algebras.
- berger_params, berger_algebra, berger_g_epsilon, sample_berger_params: Berger family.
- intro_table_cases: Product cases.
- preset: Lookup by name.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from geometry.errors import InputError
from geometry.lie_core import LieAlgebra, direct_sum, from_brackets, from_matrix_basis
from geometry.semi_metric import CartanInvolution, MetricTensor

BERGER_NAMES = ("A", "B", "C", "X", "Y")
BERGER_VERTICAL = (0, 1, 2)
BERGER_DEFAULTS = {"lambda": 2.0, "x3": 1.0, "x4": 0.5, "x5": -0.3, "x6": 0.8, "z3": 0.4, "z4": -0.7, "rho": 1.0}


class BergerParams(BaseModel):
    """Parameters of the Berger family; `lam` is exposed as `lambda` in documents and on the command line."""

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")

    lam: float = Field(1.0, alias="lambda", gt=0)
    x3: float = 0.0
    x4: float = 0.0
    x5: float = 0.0
    x6: float = 0.0
    z3: float = 0.0
    z4: float = 0.0
    rho: float = 0.0

    @property
    def theta(self) -> Tuple[float, float, float]:
        lam, rho = self.lam, self.rho
        theta1 = 0.5 * (rho * self.z3 / lam + lam * (self.x3 * self.x6 - self.x4 * self.x5))
        theta2 = 0.5 * lam * (rho * self.x5 - self.x3 * self.z4 + self.x4 * self.z3)
        theta3 = -0.5 * lam * (rho * self.x3 + self.z4 * self.x5 - self.z3 * self.x6)
        return theta1, theta2, theta3

    def echo(self) -> Dict[str, float]:
        return self.model_dump(by_alias=True)


@dataclass(frozen=True, eq=False)
class Preset:
    name: str
    algebra: LieAlgebra
    metric: MetricTensor
    vertical: Optional[Tuple[int, ...]] = None
    theta: Optional[CartanInvolution] = None
    expected_semisimple: Optional[bool] = None


SU2_GENERATORS = [
    np.array([[0, -1], [1, 0]], dtype=complex),
    np.array([[1j, 0], [0, -1j]]),
    np.array([[0, 1j], [1j, 0]]),
]

SL2R_GENERATORS = [
    np.array([[0.0, -1.0], [1.0, 0.0]]),
    np.array([[1.0, 0.0], [0.0, -1.0]]),
    np.array([[0.0, 1.0], [1.0, 0.0]]),
]


def su2() -> Tuple[LieAlgebra, MetricTensor]:
    """su(2) with [e1,e2] = 2e3, [e2,e3] = 2e1, [e3,e1] = 2e2 and the metric -B/8 = identity."""
    return from_matrix_basis(SU2_GENERATORS, ("e1", "e2", "e3")), MetricTensor.identity(3)


def sl2r() -> Tuple[LieAlgebra, MetricTensor, CartanInvolution]:
    """sl(2, R) on (rotation, diag(1,-1), antidiag(1,1)) with θ(v) = -vᵀ and metric -B(·, θ·)/8 = identity."""
    algebra = from_matrix_basis(SL2R_GENERATORS, ("e1", "e2", "e3"))
    return algebra, MetricTensor.identity(3), CartanInvolution(np.diag([1.0, -1.0, -1.0]))


def abelian(dim) -> LieAlgebra:
    return LieAlgebra(dim, np.zeros((dim, dim, dim)), tuple(f"h{i + 1}" for i in range(dim)))


def heisenberg() -> LieAlgebra:
    return from_brackets(3, [(0, 1, 2, 1.0)])


def solvable_control() -> Tuple[LieAlgebra, MetricTensor, Tuple[int, ...]]:
    """Basis (V, X, Y) with [X, V] = V as the only bracket; vertical {V}."""
    algebra = from_brackets(3, [(0, 1, 0, -1.0)], ("V", "X", "Y"))
    return algebra, MetricTensor.identity(3), (0,)


def berger_params(**values) -> BergerParams:
    """
    Validated BergerParams.

    Raises:
        InputError: If lambda is not positive or a parameter is unknown.
    """
    try:
        return BergerParams(**values)
    except ValidationError as e:
        raise InputError(f"Invalid Berger parameters: {e.errors()[0]['msg']} ({e.errors()[0]['loc']}).") from e


def berger_algebra(params: BergerParams) -> Tuple[LieAlgebra, MetricTensor, Tuple[int, ...]]:
    """
    The Berger algebra on the orthonormal frame (A, B, C, X, Y) with vertical {A, B, C}.
    """
    lam = params.lam
    if lam <= 0:
        raise InputError(f"lambda must be positive, got {lam}.")
    x3, x4, x5, x6, z3, z4 = params.x3, params.x4, params.x5, params.x6, params.z3, params.z4
    theta1, theta2, theta3 = params.theta
    l2 = lam ** 2
    entries = [
        (0, 1, 2, 2 * lam),
        (0, 2, 1, -2 * lam),
        (1, 2, 0, 2 / lam),
        (0, 3, 1, -l2 * x3), (0, 3, 2, -l2 * x5),
        (0, 4, 1, -l2 * x4), (0, 4, 2, -l2 * x6),
        (1, 3, 0, x3), (1, 3, 2, z3),
        (1, 4, 0, x4), (1, 4, 2, z4),
        (2, 3, 0, x5), (2, 3, 1, -z3),
        (2, 4, 0, x6), (2, 4, 1, -z4),
        (3, 4, 3, params.rho), (3, 4, 0, theta1), (3, 4, 1, theta2), (3, 4, 2, theta3),
    ]
    logging.debug(f"Berger algebra for {params.echo()} with θ = {params.theta}.")
    return from_brackets(5, entries, BERGER_NAMES), MetricTensor.identity(5), BERGER_VERTICAL


def berger_g_epsilon(params: BergerParams, eps: Sequence[int]) -> Tuple[LieAlgebra, MetricTensor, Tuple[int, ...]]:
    """The Berger algebra with the vertical metric replaced by diag(ε)."""
    eps = tuple(int(e) for e in eps)
    if len(eps) != 3 or any(e not in (1, -1) for e in eps):
        raise InputError(f"ε must be three entries of ±1, got {eps}.")
    algebra, _, vertical = berger_algebra(params)
    return algebra, MetricTensor(np.diag(eps + (1, 1)).astype(float)), vertical


def sample_berger_params(rng: np.random.Generator, ranges: Dict[str, Sequence[float]], unit_lambda=False) -> BergerParams:
    """Uniform draw of the Berger parameters; `ranges` maps "lambda" and "other" to [low, high]."""
    low, high = ranges["lambda"]
    lam = 1.0 if unit_lambda else float(rng.uniform(low, high))
    low, high = ranges["other"]
    others = rng.uniform(low, high, size=7)
    names = ("x3", "x4", "x5", "x6", "z3", "z4", "rho")
    return BergerParams(lam=lam, **{name: float(value) for name, value in zip(names, others)})


def _block_diag(first, second):
    return np.block([
        [first, np.zeros((first.shape[0], second.shape[1]))],
        [np.zeros((second.shape[0], first.shape[1])), second],
    ])


def _trivial_extension(vertical: LieAlgebra):
    return direct_sum(vertical, abelian(2))


def intro_table_cases() -> List[Preset]:
    """
    su(2)⊕su(2), su(2)⊕sl(2,R), su(2)⊕so(2), sl(2,R)⊕so(2), each extended by an abelian
    plane with zero mixed brackets and the normalized Cartan-Killing metric.
    """
    su, _ = su2()
    sl, _, sl_theta = sl2r()
    so2 = abelian(1)
    cases = [
        ("su2+su2", direct_sum(su, su), None, True),
        ("su2+sl2r", direct_sum(su, sl), _block_diag(np.eye(3), sl_theta.matrix), True),
        ("su2+so2", direct_sum(su, so2), None, False),
        ("sl2r+so2", direct_sum(sl, so2), None, False),
    ]
    presets = []
    for name, vertical, theta, semisimple in cases:
        ambient = _trivial_extension(vertical)
        presets.append(
            Preset(
                name=name,
                algebra=ambient,
                metric=MetricTensor.identity(ambient.dim),
                vertical=tuple(range(vertical.dim)),
                theta=CartanInvolution(theta) if theta is not None else None,
                expected_semisimple=semisimple,
            )
        )
    return presets


def preset(name: str) -> List[Preset]:
    """
    Presets addressable from the command line.

    Raises:
        InputError: For an unknown name.
    """
    key = name.lower()
    if key == "su2":
        algebra, metric = su2()
        return [Preset("su2", algebra, metric, expected_semisimple=True)]
    if key == "sl2r":
        algebra, metric, theta = sl2r()
        return [Preset("sl2r", algebra, metric, theta=theta, expected_semisimple=True)]
    if key == "berger":
        algebra, metric, vertical = berger_algebra(berger_params(**BERGER_DEFAULTS))
        return [Preset("berger", algebra, metric, vertical)]
    if key == "intro-table":
        return intro_table_cases()
    if key == "heisenberg":
        return [Preset("heisenberg", heisenberg(), MetricTensor.identity(3), expected_semisimple=False)]
    if key == "solvable":
        algebra, metric, vertical = solvable_control()
        return [Preset("solvable", algebra, metric, vertical, expected_semisimple=False)]
    logging.error(f"Unknown preset '{name}'.")
    raise InputError(f"Unknown preset '{name}'; choose one of {', '.join(PRESET_NAMES)}.")


PRESET_NAMES = ("su2", "sl2r", "berger", "intro-table", "heisenberg", "solvable")

"""
cli/documents.py

JSON algebra documents: a dimension, optional basis names, a sparse bracket list with i < j,
an optional metric (identity when omitted), an optional vertical index list and an optional
Cartan involution of the vertical algebra.

Functions:
- parse_document / load_document: Validate text or a file into an AlgebraDocument.
- to_algebra / to_metric / to_theta: Convert a document into geometry objects.
- emit_document: Serialize an algebra (and metric, vertical set) back to JSON.
"""

import json
import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from geometry.errors import InputError
from geometry.lie_core import MAX_DENSE_DIM, LieAlgebra, from_brackets
from geometry.semi_metric import CartanInvolution, MetricTensor

SYMMETRY_TOL = 1e-12


class DocumentError(InputError):
    pass


class BracketEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    i: int = Field(ge=0)
    j: int = Field(ge=0)
    k: int = Field(ge=0)
    value: float

    @model_validator(mode="after")
    def _ordered(self):
        if self.i >= self.j:
            raise ValueError("bracket indices must satisfy i < j")
        return self


class AlgebraDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dimension: int = Field(ge=1, le=MAX_DENSE_DIM)
    basis_names: Optional[List[str]] = None
    brackets: List[BracketEntry] = Field(default_factory=list)
    metric: Optional[List[List[float]]] = None
    vertical: Optional[List[int]] = None
    theta: Optional[List[List[float]]] = None

    @model_validator(mode="after")
    def _consistent(self):
        n = self.dimension
        if self.basis_names is not None and len(self.basis_names) != n:
            raise ValueError(f"basis_names must list {n} names")
        for entry in self.brackets:
            if max(entry.i, entry.j, entry.k) >= n:
                raise ValueError(f"bracket entry ({entry.i}, {entry.j}, {entry.k}) is out of range for dimension {n}")
        if self.metric is not None:
            metric = np.asarray(self.metric, dtype=float)
            if metric.shape != (n, n):
                raise ValueError(f"metric must be {n}x{n}")
            if np.abs(metric - metric.T).max() > SYMMETRY_TOL * max(1.0, float(np.abs(metric).max())):
                raise ValueError("metric must be symmetric")
        if self.vertical is not None:
            if len(set(self.vertical)) != len(self.vertical) or not all(0 <= v < n for v in self.vertical):
                raise ValueError(f"vertical indices {self.vertical} are invalid for dimension {n}")
        if self.theta is not None:
            size = len(self.vertical) if self.vertical is not None else n
            if np.asarray(self.theta, dtype=float).shape != (size, size):
                raise ValueError(f"theta must be {size}x{size}")
        return self

    @property
    def metric_defaulted(self):
        return self.metric is None


def _describe(error: ValidationError):
    parts = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "document"
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


def parse_document(text: str) -> AlgebraDocument:
    """
    Raises:
        DocumentError: For malformed JSON (with line and column) or schema violations (with field path).
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"Malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e
    try:
        return AlgebraDocument.model_validate(payload)
    except ValidationError as e:
        raise DocumentError(f"Invalid algebra document: {_describe(e)}") from e


def load_document(path) -> AlgebraDocument:
    try:
        with open(path, "r") as file:
            text = file.read()
    except OSError as e:
        logging.error(f"Could not read algebra document {path}: {e}")
        raise DocumentError(f"Could not read {path}: {e.strerror}") from e
    return parse_document(text)


def to_algebra(document: AlgebraDocument) -> LieAlgebra:
    entries = [(e.i, e.j, e.k, e.value) for e in document.brackets]
    return from_brackets(document.dimension, entries, document.basis_names)


def to_metric(document: AlgebraDocument) -> MetricTensor:
    if document.metric is None:
        return MetricTensor.identity(document.dimension)
    return MetricTensor(np.asarray(document.metric, dtype=float))


def to_theta(document: AlgebraDocument) -> Optional[CartanInvolution]:
    return CartanInvolution(np.asarray(document.theta, dtype=float)) if document.theta is not None else None


def emit_document(algebra: LieAlgebra, metric: Optional[MetricTensor] = None, vertical=None, theta: Optional[CartanInvolution] = None) -> str:
    """JSON text for the algebra with bracket entries taken from the i < j half of the constants."""
    brackets = [
        {"i": i, "j": j, "k": k, "value": float(algebra.constants[i, j, k])}
        for i in range(algebra.dim)
        for j in range(i + 1, algebra.dim)
        for k in range(algebra.dim)
        if algebra.constants[i, j, k] != 0.0
    ]
    payload = {
        "dimension": algebra.dim,
        "basis_names": list(algebra.basis_names),
        "brackets": brackets,
    }
    if metric is not None:
        payload["metric"] = metric.matrix.tolist()
    if vertical is not None:
        payload["vertical"] = [int(v) for v in vertical]
    if theta is not None:
        payload["theta"] = theta.matrix.tolist()
    return json.dumps(payload, indent=2)

"""Locality of stabilizer codes: delta/eta metrics, surface codes and dense theorem checks."""

from __future__ import annotations

from ._kernels import default_backend
from .errors import (
    BudgetExceeded,
    CommutativityError,
    ConsistencyError,
    DimensionError,
    ParseError,
    PreconditionError,
    ResourceError,
    StablocError,
    TrivialCodespaceError,
    ValidationError,
)
from .gf2 import BitMatrix, in_row_space, left_null_basis, rank, rref, zero_columns
from .locality import (
    CssLocality,
    CssSplit,
    LocalityReport,
    css_locality,
    css_split,
    delta,
    delta_oracle,
    eta,
    eta_oracle,
)
from .pauli import PauliOperator, PauliSum, commutes, multiply, pauli_decompose, sum_to_dense
from .stabilizer import (
    GeneratorSet,
    Membership,
    StabilizerGroup,
    extend,
    projector,
    subgroup_nu,
    validate,
)
from .surface import Cellulation, boundary_matrices, build_code, dual, toric, valence_counterexample

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BudgetExceeded",
    "Cellulation",
    "CommutativityError",
    "ConsistencyError",
    "CssLocality",
    "CssSplit",
    "DimensionError",
    "GeneratorSet",
    "LocalityReport",
    "Membership",
    "ParseError",
    "PauliOperator",
    "PauliSum",
    "PreconditionError",
    "ResourceError",
    "StabilizerGroup",
    "StablocError",
    "TrivialCodespaceError",
    "ValidationError",
    "boundary_matrices",
    "build_code",
    "commutes",
    "css_locality",
    "css_split",
    "default_backend",
    "delta",
    "delta_oracle",
    "dual",
    "eta",
    "eta_oracle",
    "extend",
    "in_row_space",
    "left_null_basis",
    "multiply",
    "pauli_decompose",
    "projector",
    "rank",
    "rref",
    "subgroup_nu",
    "sum_to_dense",
    "toric",
    "valence_counterexample",
    "validate",
    "zero_columns",
]

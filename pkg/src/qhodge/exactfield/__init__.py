"""Exact fields, linear algebra and tensor-matrix backends."""
from .field import (FieldSpec, Field, SymbolicField, ModularField, RationalField,
                    FieldElement, make_field, specialize, SpecializationError,
                    random_prime)
from .linalg import (fmat, identity, zeros, matmul, rank, rref, kernel_basis,
                     column_space, pivot_rows, solve, inverse, is_zero_matrix,
                     ModularRank, modular_rank, bareiss)
from .laurent import LPoly, Cyclo, qint
from .tensor import LaurentMat, ModMat, backend_for

__all__ = [
    "FieldSpec", "Field", "SymbolicField", "ModularField", "RationalField",
    "FieldElement", "make_field", "specialize", "SpecializationError",
    "random_prime", "fmat", "identity", "zeros", "matmul", "rank", "rref",
    "kernel_basis", "column_space", "pivot_rows", "solve", "inverse",
    "is_zero_matrix", "ModularRank", "modular_rank", "bareiss", "LPoly",
    "Cyclo", "qint", "LaurentMat", "ModMat", "backend_for",
]

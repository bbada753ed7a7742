"""Exact paraunitary matrices from complete orthogonal sets of idempotents.

Rings are named "rational", "cyclotomic:N" or "prime:p". Entries are
Laurent polynomial strings such as "(1/2)*z^-1 + zeta".
"""

from ._paraidem import (
    IdempotentSet,
    Matrix,
    ParaidemError,
    basis_set,
    catalog_ids,
    determinant,
    diagonal_set,
    group_set,
    is_paraunitary,
    linear_combination,
    monomial_sum,
    pseudo_multiple,
    rank,
    rows_set,
    run_catalog,
    run_pipeline,
    specialize_hadamard,
    substitute,
    tangle,
    tangle_variants,
)

__all__ = [
    "IdempotentSet",
    "Matrix",
    "ParaidemError",
    "basis_set",
    "catalog_ids",
    "determinant",
    "diagonal_set",
    "group_set",
    "is_paraunitary",
    "linear_combination",
    "monomial_sum",
    "pseudo_multiple",
    "rank",
    "rows_set",
    "run_catalog",
    "run_pipeline",
    "specialize_hadamard",
    "substitute",
    "tangle",
    "tangle_variants",
]

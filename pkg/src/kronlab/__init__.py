"""Exact Kronecker coefficients, rectangular obstruction searches and the
quantum-marginal checks that accompany them."""

__version__ = "0.1.0"

from .errors import BudgetExceeded, ContractError, InvariantError
from .partitions import Partition, conjugate, dim_specht, dim_weyl, enumerate_partitions, normalize, rectangle, stretch
from .characters import CharacterCache, centralizer_order, character, character_row
from .kronecker import kron, kron_rectangular, verify_split_identity

__all__ = [
    "BudgetExceeded",
    "CharacterCache",
    "ContractError",
    "InvariantError",
    "Partition",
    "centralizer_order",
    "character",
    "character_row",
    "conjugate",
    "dim_specht",
    "dim_weyl",
    "enumerate_partitions",
    "kron",
    "kron_rectangular",
    "normalize",
    "rectangle",
    "stretch",
    "verify_split_identity",
]

"""Reductions to ℓq-ℓ1 games: approximate Carathéodory and ℓq-margin SVM"""

from lqgame.applications.caratheodory import (
    SparseConvexCombination,
    caratheodory_residual,
    caratheodory_solve,
)
from lqgame.applications.svm import SvmSolution, svm_margin_value, svm_solve

__all__ = [
    "SparseConvexCombination",
    "caratheodory_solve",
    "caratheodory_residual",
    "SvmSolution",
    "svm_solve",
    "svm_margin_value",
]

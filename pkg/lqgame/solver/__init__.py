"""Sublinear solvers for ℓq-ℓ1 matrix games

This package holds the sampled primal-dual solver, the ℓ1-ℓ1 fallback and
the dispatcher choosing between them.
"""

from lqgame.solver.classical import mwu_step, pnorm_ogd_step, solve_lq_l1
from lqgame.solver.dispatch import choose_path, solve_dispatch
from lqgame.solver.l1 import run_l1_l1, solve_l1_l1
from lqgame.solver.params import SolverParams, SolverState
from lqgame.solver.report import SolveReport

__all__ = [
    "SolverParams",
    "SolverState",
    "SolveReport",
    "pnorm_ogd_step",
    "mwu_step",
    "solve_lq_l1",
    "solve_l1_l1",
    "run_l1_l1",
    "solve_dispatch",
    "choose_path",
]

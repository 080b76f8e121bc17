# lqgame: sublinear ℓq-ℓ1 matrix game solvers

__version__ = "0.1.0"
__license__ = "MIT"


from lqgame.constants import *
from lqgame.exceptions import *
from lqgame.error_mapping import map_exception_to_exit_code, raise_for_guarantee
from lqgame.norms import NormPair, conjugate, lq_norm, project_lq_ball, sgnpow
from lqgame.instance import GameInstance, QueryCounter, normalize_rows
from lqgame.storage.dense import DenseStorage
from lqgame.storage.generator import GeneratorStorage
from lqgame.estimator import RngStream, lq_sample, unbiased_estimate
from lqgame.oracles import ValueCertificate, duality_gap, game_value_exact, primal_value
from lqgame.solver import SolveReport, SolverParams, solve_dispatch, solve_l1_l1, solve_lq_l1
from lqgame.adversarial import HardInstanceSpec, build_hard_instance, classify_from_solution
from lqgame.applications import SparseConvexCombination, SvmSolution, caratheodory_solve, svm_solve
from lqgame.quantum import QueryLedger, SuccinctSolution, quantum_solver_sim

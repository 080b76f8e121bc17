"""Command-line interface

    Example::

        lqgame hardgen --case 2 --n 64 --d 64 --l 3 --p 2 --out hard.txt
        lqgame solve --instance hard.txt --q 2 --eps 0.1 --seed 1 --oracle --out run.json
        lqgame bench --grid 256,1024,4096 --q 2 --eps 0.1 --repeats 3
        lqgame --log-level INFO qsim --instance hard.txt --q 2 --eps 0.5

    Exit codes: 0 success, 2 usage error, 3 parse error, 4 guarantee not
    met (``--oracle`` runs whose value falls below the certified value
    minus the accepted error), 1 any other library error.
"""

import argparse
import logging
import os
import sys

from lqgame import __version__
from lqgame.adversarial import HardInstanceSpec
from lqgame.applications.caratheodory import caratheodory_residual, caratheodory_solve
from lqgame.applications.svm import svm_solve
from lqgame.constants import CONSTANT_LOG_BASES, GUARANTEE_SUCCESS_RATE
from lqgame.constants.exit_codes import EXIT_GUARANTEE, EXIT_OK
from lqgame.error_mapping import map_exception_to_exit_code, raise_for_guarantee
from lqgame.exceptions import LqGameError, LqGameGuaranteeError, LqGameUsageError
from lqgame.harness.bench import run_benchmark
from lqgame.harness.config import BENCH_SOLVERS, LOG_LEVEL_ENV, RunConfig
from lqgame.harness.formats import load_instance, load_matrix, load_vector, save_hard_spec
from lqgame.harness.report import build_report, emit_report
from lqgame.oracles import game_value_exact
from lqgame.quantum.ledger import FAILURE_MODES, QueryLedger
from lqgame.quantum.solver import quantum_solver_sim
from lqgame.solver.dispatch import solve_dispatch
from lqgame.solver.l1 import run_l1_l1

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _add_run_options(parser, q: bool = True, eps: bool = True) -> None:
    if q:
        parser.add_argument("--q", type=float, default=2.0, help="primal exponent in (1, 2]")
    if eps:
        parser.add_argument("--eps", type=float, default=0.1, help="additive error in (0, 1)")
    parser.add_argument("--seed", type=int, default=0, help="base RNG seed")
    parser.add_argument("--repeats", type=int, default=1, help="runs with seeds seed..seed+repeats-1")
    parser.add_argument("--out", help="report path (stdout when omitted)")
    parser.add_argument("--traces", action="store_true", help="include sampled index traces")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lqgame", description="Sublinear ℓq-ℓ1 matrix game solvers")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", choices=LOG_LEVELS, type=str.upper,
                        help=f"logging level (default WARNING, or ${LOG_LEVEL_ENV})")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="ℓq-ℓ1 solver, routed through the dispatcher")
    solve.add_argument("--instance", required=True)
    _add_run_options(solve)
    solve.add_argument("--oracle", action="store_true", help="certify against the reference oracle")
    solve.add_argument("--tol", type=float, help="oracle certificate gap")
    solve.add_argument("--log-base", choices=CONSTANT_LOG_BASES, help="dispatcher threshold logarithm")
    solve.add_argument("--l1-constant", type=float, help="c in T' = ceil(c ln(n+d)/eps^2)")

    solve_l1 = commands.add_parser("solve-l1", help="ℓ1-ℓ1 solver")
    solve_l1.add_argument("--instance", required=True)
    _add_run_options(solve_l1, q=False)
    solve_l1.add_argument("--l1-constant", type=float)

    caratheodory = commands.add_parser("caratheodory", help="sparse convex combination")
    caratheodory.add_argument("--vertices", required=True)
    caratheodory.add_argument("--target", required=True)
    caratheodory.add_argument("--p", type=float, required=True)
    _add_run_options(caratheodory, q=False)
    caratheodory.add_argument("--dispatch", action="store_true", help="allow the ℓ1-ℓ1 route")
    caratheodory.add_argument("--log-base", choices=CONSTANT_LOG_BASES)

    svm = commands.add_parser("svm", help="ℓq-margin SVM")
    svm.add_argument("--points", required=True)
    svm.add_argument("--labels", required=True)
    _add_run_options(svm)

    qsim = commands.add_parser("qsim", help="simulated quantum solver with query ledger")
    qsim.add_argument("--instance", required=True)
    _add_run_options(qsim)
    qsim.add_argument("--failure-mode", choices=FAILURE_MODES)
    qsim.add_argument("--max-iterations", type=int)

    hardgen = commands.add_parser("hardgen", help="write a hard-instance stanza")
    hardgen.add_argument("--case", type=int, required=True)
    hardgen.add_argument("--n", type=int, required=True)
    hardgen.add_argument("--d", type=int, required=True)
    hardgen.add_argument("--l", type=int, required=True)
    hardgen.add_argument("--k", type=int)
    hardgen.add_argument("--p", type=float, default=2.0)
    hardgen.add_argument("--out", required=True)

    bench = commands.add_parser("bench", help="scaling sweep over an (n, d) grid")
    bench.add_argument("--grid", required=True, help="comma-separated N or NxD cells")
    _add_run_options(bench)
    bench.add_argument("--solver", choices=BENCH_SOLVERS)
    bench.add_argument("--max-iterations", type=int)
    bench.add_argument("--oracle", action="store_true", help="record the closed-form value")
    bench.add_argument("--threads", type=int)
    bench.add_argument("--failure-mode", choices=FAILURE_MODES)

    oracle = commands.add_parser("oracle", help="certified game value")
    oracle.add_argument("--instance", required=True)
    oracle.add_argument("--q", type=float, default=2.0)
    oracle.add_argument("--tol", type=float)
    oracle.add_argument("--seed", type=int)
    oracle.add_argument("--out")
    return parser


def configure_logging(level: str = None) -> None:
    level = level or os.environ.get(LOG_LEVEL_ENV, "WARNING").upper()
    if level not in LOG_LEVELS:
        raise LqGameUsageError(f"{LOG_LEVEL_ENV} must be one of {LOG_LEVELS}, got {level!r}")
    logging.basicConfig(level=getattr(logging, level),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _seeds(config: RunConfig) -> range:
    return range(config.seed, config.seed + config.repeats)


def _check_guarantee(records: list, repeats: int) -> None:
    """One run must reach the bound; several must reach it at the guaranteed rate."""
    judged = [record for record in records if 'oracle_value' in record]
    if not judged:
        return
    if repeats == 1:
        record = judged[0]
        raise_for_guarantee(record['achieved_value'], record['oracle_value'], record['accepted_error'])
        return
    rate = sum(record['success'] for record in judged) / len(judged)
    if rate < GUARANTEE_SUCCESS_RATE:
        raise LqGameGuaranteeError(
            f"Only {rate:.0%} of {len(judged)} runs reached the oracle bound",
            error_code=EXIT_GUARANTEE)


def run_solve(config: RunConfig) -> tuple:
    instance = load_instance(config.instance_path)
    certificate = None
    if config.oracle:
        certificate = game_value_exact(instance.fork(), config.q, config.oracle_tol)
    records = []
    for seed in _seeds(config):
        report = solve_dispatch(instance.fork(), config.q, config.epsilon, seed,
                                log_base=config.log_base, l1_constant=config.l1_constant)
        record = dict(report.to_dict(config.include_traces), seed=seed)
        if certificate is not None:
            record['oracle_value'] = certificate.lower
            record['success'] = report.primal_value >= certificate.lower - report.accepted_error
        records.append(record)
    document = build_report(config.mode, config.to_dict(), records,
                            certificate=certificate.to_dict() if certificate else None,
                            summary=_summary(records))
    return document, lambda: _check_guarantee(records, config.repeats)


def run_solve_l1(config: RunConfig) -> tuple:
    instance = load_instance(config.instance_path)
    records = []
    for seed in _seeds(config):
        report = run_l1_l1(instance.fork(), config.epsilon, seed, config.l1_constant)
        records.append(dict(report.to_dict(config.include_traces), seed=seed))
    return build_report(config.mode, config.to_dict(), records, summary=_summary(records)), None


def run_caratheodory(config: RunConfig) -> tuple:
    vertices = load_matrix(config.vertices_path)
    target = load_vector(config.target_path)
    records = []
    for seed in _seeds(config):
        combo = caratheodory_solve(vertices, target, config.p, config.epsilon, seed,
                                   use_dispatch=config.use_dispatch, log_base=config.log_base)
        residual = caratheodory_residual(vertices, target, combo, config.p)
        record = dict(combo.to_dict(), seed=seed, residual=residual,
                      success=residual <= config.epsilon, queries=combo.report.queries,
                      path=combo.report.path, params=combo.report.params.to_dict())
        records.append(record)
    return build_report(config.mode, config.to_dict(), records), None


def run_svm(config: RunConfig) -> tuple:
    points = load_matrix(config.points_path)
    labels = load_vector(config.labels_path)
    records = []
    for seed in _seeds(config):
        solution = svm_solve(points, labels, config.q, config.epsilon, seed)
        records.append(dict(solution.to_dict(), seed=seed))
    return build_report(config.mode, config.to_dict(), records), None


def run_qsim(config: RunConfig) -> tuple:
    instance = load_instance(config.instance_path)
    records = []
    total = QueryLedger()
    for seed in _seeds(config):
        report, ledger = quantum_solver_sim(instance.fork(), config.q, config.epsilon, seed,
                                            config.failure_mode, config.max_iterations)
        record = dict(report.to_dict(config.include_traces), seed=seed, quantum_sim=ledger.to_dict())
        if config.include_traces:
            record['succinct'] = report.succinct.to_dict()
        records.append(record)
        total.merge(ledger)
    return build_report(config.mode, config.to_dict(), records, quantum_sim=total.to_dict(),
                        summary=_summary(records)), None


def run_hardgen(config: RunConfig) -> tuple:
    spec = HardInstanceSpec(p=config.p if config.p is not None else 2.0, **config.hard)
    path = save_hard_spec(spec, config.output_path)
    logger.info("Wrote %r to %s", spec, path)
    return None, None


def run_bench(config: RunConfig) -> tuple:
    result = run_benchmark(config)
    data = result.to_dict()
    return build_report(config.mode, config.to_dict(), data['records'], slope=data['slope'],
                        raw_slope=data['raw_slope'], success_rate=data['success_rate']), None


def run_oracle(config: RunConfig) -> tuple:
    instance = load_instance(config.instance_path)
    certificate = game_value_exact(instance, config.q, config.oracle_tol, seed=config.oracle_seed)
    return build_report(config.mode, config.to_dict(), [], certificate=certificate.to_dict()), None


def _summary(records: list) -> dict:
    values = [record['achieved_value'] for record in records]
    summary = {'runs': len(records), 'min_achieved_value': min(values), 'max_achieved_value': max(values)}
    judged = [record['success'] for record in records if 'success' in record]
    if judged:
        summary['success_rate'] = sum(judged) / len(judged)
    return summary


COMMANDS = {
    "solve": run_solve,
    "solve-l1": run_solve_l1,
    "caratheodory": run_caratheodory,
    "svm": run_svm,
    "qsim": run_qsim,
    "hardgen": run_hardgen,
    "bench": run_bench,
    "oracle": run_oracle,
}


def run(config: RunConfig) -> int:
    """Execute one configuration, write its report, then apply the guarantee check."""
    logger.info("Running %s", config)
    document, check = COMMANDS[config.mode](config)
    if document is not None:
        emit_report(document, config.output_path)
    if check is not None:
        check()
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        configure_logging(args.log_level)
        config = RunConfig.from_args(args)
        return run(config)
    except LqGameError as e:
        logger.debug("Failure details", exc_info=True)
        print(f"lqgame: error: {e}", file=sys.stderr)
        return map_exception_to_exit_code(e)
    except OSError as e:
        print(f"lqgame: error: {e}", file=sys.stderr)
        return map_exception_to_exit_code(e)


if __name__ == "__main__":
    sys.exit(main())

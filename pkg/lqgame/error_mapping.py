"""
Exception to exit code mapping for lqgame
"""

from lqgame.exceptions import *
from lqgame.constants.exit_codes import *


def map_exception_to_exit_code(error: BaseException) -> int:
    """Map an exception raised by the library to a CLI exit code"""
    # Most specific classes first
    error_map = (
        (LqGameParseError, EXIT_PARSE),
        (LqGameUsageError, EXIT_USAGE),
        (LqGameGuaranteeError, EXIT_GUARANTEE),
        (LqGameError, EXIT_ERROR),
    )

    for exception_class, exit_code in error_map:
        if isinstance(error, exception_class):
            return exit_code
    return EXIT_ERROR


def raise_for_guarantee(achieved: float, oracle_lower: float, epsilon: float) -> None:
    """Raise if the achieved value is below the certified lower bound minus epsilon"""
    if achieved < oracle_lower - epsilon:
        raise LqGameGuaranteeError(
            f"Achieved value {achieved:.6g} below oracle bound {oracle_lower:.6g} - eps {epsilon:g}",
            error_code=EXIT_GUARANTEE,
        )


def raise_for_index(name: str, index: int, size: int) -> None:
    """Raise usage error if index is outside [0, size)"""
    if not 0 <= index < size:
        raise LqGameUsageError(f"{name} index must be in range 0-{size - 1}, got {index}")

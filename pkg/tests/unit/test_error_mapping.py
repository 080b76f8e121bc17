"""Tests for exception to exit code mapping.

This module tests:
- Exception class to CLI exit code mapping
- The guarantee check
- Index validation
"""

import pytest

from lqgame.constants.exit_codes import (
    EXIT_ERROR,
    EXIT_GUARANTEE,
    EXIT_PARSE,
    EXIT_USAGE,
)
from lqgame.error_mapping import map_exception_to_exit_code, raise_for_guarantee, raise_for_index
from lqgame.exceptions import (
    LqGameConvergenceError,
    LqGameDimensionError,
    LqGameGuaranteeError,
    LqGameInternalError,
    LqGameParseError,
    LqGameUsageError,
    LqGameZeroVectorError,
)


class TestExitCodeMapping:
    """Test exception to exit code mapping."""

    @pytest.mark.parametrize("error, code", [
        (LqGameUsageError("x"), EXIT_USAGE),
        (LqGameDimensionError("x"), EXIT_USAGE),
        (LqGameParseError("x", location="line 1"), EXIT_PARSE),
        (LqGameGuaranteeError("x"), EXIT_GUARANTEE),
        (LqGameInternalError("x"), EXIT_ERROR),
        (LqGameConvergenceError("x"), EXIT_ERROR),
        (LqGameZeroVectorError("x"), EXIT_ERROR),
    ])
    def test_library_errors(self, error, code):
        """Test mapping of each exception category."""
        assert map_exception_to_exit_code(error) == code

    def test_foreign_error(self):
        """Test that non-library errors map to the generic code."""
        assert map_exception_to_exit_code(OSError("disk full")) == EXIT_ERROR

    def test_codes_are_distinct(self):
        """Test that the exit codes do not collide."""
        assert len({EXIT_ERROR, EXIT_USAGE, EXIT_PARSE, EXIT_GUARANTEE}) == 4


class TestRaiseForGuarantee:
    """Test the achieved-versus-oracle check."""

    def test_within_bound(self):
        """Test that achieved >= oracle - eps passes, including equality."""
        raise_for_guarantee(0.65, 0.7, 0.1)
        raise_for_guarantee(0.5, 0.75, 0.25)

    def test_below_bound(self):
        """Test that a shortfall raises with the guarantee exit code."""
        with pytest.raises(LqGameGuaranteeError) as excinfo:
            raise_for_guarantee(0.5, 0.7, 0.1)
        assert excinfo.value.error_code == EXIT_GUARANTEE
        assert "0.5" in str(excinfo.value)


class TestRaiseForIndex:
    """Test index validation."""

    @pytest.mark.parametrize("index", [0, 4])
    def test_in_range(self, index):
        """Test that valid indices pass."""
        raise_for_index("Row", index, 5)

    @pytest.mark.parametrize("index", [-1, 5])
    def test_out_of_range(self, index):
        """Test that out-of-range indices raise a usage error naming the range."""
        with pytest.raises(LqGameUsageError, match="0-4"):
            raise_for_index("Row", index, 5)

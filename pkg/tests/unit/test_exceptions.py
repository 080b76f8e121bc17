"""Tests for the lqgame exception hierarchy.

This module tests:
- Exception class hierarchy and inheritance
- Exception instantiation, messages and extra attributes
- Import accessibility from the package root
"""

import pytest

from lqgame.exceptions import (
    LqGameConvergenceError,
    LqGameDimensionError,
    LqGameError,
    LqGameGuaranteeError,
    LqGameInstanceError,
    LqGameInternalError,
    LqGameNumericalError,
    LqGameParseError,
    LqGameUsageError,
    LqGameZeroGradientError,
    LqGameZeroVectorError,
)


class TestExceptionHierarchy:
    """Test exception inheritance hierarchy."""

    def test_base_exception_is_exception(self):
        """Test that LqGameError inherits from Exception."""
        assert issubclass(LqGameError, Exception)
        assert isinstance(LqGameError(), Exception)

    @pytest.mark.parametrize("exception_class", [
        LqGameUsageError,
        LqGameParseError,
        LqGameInstanceError,
        LqGameNumericalError,
        LqGameConvergenceError,
        LqGameGuaranteeError,
        LqGameInternalError,
    ])
    def test_direct_subclasses(self, exception_class):
        """Test that every category derives from LqGameError."""
        assert issubclass(exception_class, LqGameError)

    def test_dimension_error_is_usage_error(self):
        """Test that shape mismatches are caller mistakes."""
        assert issubclass(LqGameDimensionError, LqGameUsageError)

    @pytest.mark.parametrize("exception_class", [LqGameZeroVectorError, LqGameZeroGradientError])
    def test_numerical_errors(self, exception_class):
        """Test that degenerate numerical conditions share a base class."""
        assert issubclass(exception_class, LqGameNumericalError)
        assert not issubclass(exception_class, LqGameUsageError)

    def test_parse_error_is_not_usage_error(self):
        """Test that parse errors map separately from usage errors."""
        assert not issubclass(LqGameParseError, LqGameUsageError)


class TestExceptionAttributes:
    """Test exception instantiation and attributes."""

    def test_message_and_error_code(self):
        """Test that the message and error code are kept."""
        exc = LqGameGuaranteeError("below bound", error_code=4)
        assert str(exc) == "below bound"
        assert exc.error_code == 4

    def test_default_error_code(self):
        """Test that the error code defaults to None."""
        assert LqGameUsageError("bad").error_code is None

    def test_parse_error_location(self):
        """Test that the location is appended to the message."""
        exc = LqGameParseError("bad number", location="line 3")
        assert exc.location == "line 3"
        assert str(exc) == "bad number (at line 3)"

    def test_parse_error_without_location(self):
        """Test a parse error with no location."""
        exc = LqGameParseError("empty")
        assert exc.location is None
        assert str(exc) == "empty"

    def test_convergence_error_certificate(self):
        """Test that the best certificate travels with the error."""
        certificate = object()
        exc = LqGameConvergenceError("cap reached", certificate=certificate)
        assert exc.certificate is certificate


class TestExceptionCatching:
    """Test catching through base classes."""

    def test_catch_by_base(self):
        """Test that a dimension error is caught as LqGameError."""
        with pytest.raises(LqGameError):
            raise LqGameDimensionError("2 != 3")

    def test_package_exports(self):
        """Test that exceptions are importable from the package root."""
        import lqgame

        assert lqgame.LqGameUsageError is LqGameUsageError
        assert lqgame.LqGameInternalError is LqGameInternalError

class LqGameError(Exception):
    """Base exception for all lqgame errors"""
    def __init__(self, message: str = "", error_code=None):
        super().__init__(message)
        self.error_code = error_code


# Caller mistakes
class LqGameUsageError(LqGameError):
    """Invalid argument, index out of range or infeasible input"""
    pass


class LqGameDimensionError(LqGameUsageError):
    """Shapes of the supplied arrays do not agree"""
    pass


class LqGameParseError(LqGameError):
    """Instance, vertex or label file could not be parsed"""
    def __init__(self, message: str = "", location=None, error_code=None):
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message, error_code=error_code)
        self.location = location


class LqGameInstanceError(LqGameError):
    """Matrix violates the instance contract (row outside B_p, non-finite entry)"""
    pass


# Numerical conditions signalled to the caller
class LqGameNumericalError(LqGameError):
    """Base class for degenerate numerical conditions"""
    pass


class LqGameZeroVectorError(LqGameNumericalError):
    """Sampling requested from the zero vector"""
    pass


class LqGameZeroGradientError(LqGameNumericalError):
    """p-norm OGD step requested with a zero gradient"""
    pass


class LqGameConvergenceError(LqGameError):
    """Reference oracle hit its iteration cap before the requested gap"""
    def __init__(self, message: str = "", certificate=None, error_code=None):
        super().__init__(message, error_code=error_code)
        self.certificate = certificate


class LqGameGuaranteeError(LqGameError):
    """Achieved game value fell below the certified value minus epsilon"""
    pass


class LqGameInternalError(LqGameError):
    """Internal invariant violated"""
    pass

# Classical iteration count T = ceil((SOLVER_LOG_COEFF*ln n + 4p)/eps^2)
SOLVER_LOG_COEFF = 895
# Quantum variant uses a larger log coefficient
QSIM_LOG_COEFF = 1346
# eta = sqrt(ETA_NUMERATOR*ln n / (ETA_DENOMINATOR*T))
ETA_NUMERATOR = 11
ETA_DENOMINATOR = 12

ROW_NORM_SLACK = 1e-9
CONJUGATE_TOL = 1e-12
SIMPLEX_TOL = 1e-9

# MWU weights are divided by their maximum this often
RESCALE_EVERY = 1000
# 1 - eta*v + eta^2*v^2 never drops below this
MWU_MIN_FACTOR = 0.75

# l1-l1 solver: T' = ceil(L1_CONSTANT*ln(n+d)/eps^2)
L1_CONSTANT = 64
DISPATCH_ERROR_FACTOR = 2

# Fraction of seeded runs that must reach the certified value
GUARANTEE_SUCCESS_RATE = 2.0 / 3.0

ORACLE_MAX_ITER = 10**6
ORACLE_CHECK_EVERY = 100
ORACLE_DEFAULT_TOL = 1e-4

# Lower-bound classification threshold 1 - CLASSIFY_MARGIN * 2^(1/p)
CLASSIFY_MARGIN = 0.04

# Quantum simulation charges
C_MIN = 23
C_AE = 1
AMPLIFICATION_TARGET = 0.99
GROVER_CALLS_PER_ITERATE = 2
NORM_SUCCESS_PROBABILITY = 2.0 / 3.0
COORDINATE_MONITOR_C = 10

LOG_EVERY = 10000

CONSTANT_LOG_BASES = ("e", "2")

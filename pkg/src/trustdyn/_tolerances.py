"""Every numerical tolerance used by the package, in one place."""

# linalg
PIVOT_RTOL = 1e-14
ILL_CONDITIONED = 1e12
ZERO_ROW = 1e-14
QR_SWEEPS_PER_DIM = 30
MAX_EIG_DIM = 512

# model / simulate
ROW_SUM_TOL = 1e-12
REPLAY_TOL = 1e-12
CONV_TOL = 1e-10
DIV_THRESHOLD = 1e9
MAX_STEPS = 5000

# equilibrium
VALID_COND = 1e10
VALID_RESIDUAL = 1e-9
DEGENERATE_DENOM = 1e-12

# stability
EXCLUDED_POINT = 1e-8
BOUNDARY_RHO_TOL = 1e-6
BOUNDARY_MAX_ITER = 80
BOUNDARY_GRID = 21
DECOUPLED_B_TOL = 1e-12

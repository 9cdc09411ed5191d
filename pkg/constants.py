"""
Constants that may be shared across modules.
"""

from pytz import timezone

import math
import numpy as np

UTC = timezone('UTC')

# Single-site basis digits. Site 1 is the most significant base-3 digit of a
# configuration index, so digit = 1 - step for steps (+1, 0, -1).
UP = 0
FLAT = 1
DOWN = 2
STEP_OF_DIGIT = (1, 0, -1)

# Variance of one step of the uniform {+1, 0, -1} walk.
SIGMA_SQUARED = 2 / 3

EULER_GAMMA = float(np.euler_gamma)
CONNECTED_FACTOR = 1 - 8 / (3 * math.pi)

# Size guards. All are in units of chain length 2n unless noted, and all but
# the enumeration and reduced-density limits yield to MOTZKIN_MAX_2N.
MAX_BRUTE_FORCE_STEPS = 18
MAX_EXACT_TWO_N = 400
MAX_TWO_POINT_TWO_N = 300
MAX_STATE_TWO_N = 14
MAX_FRUSTRATION_TWO_N = 12
MAX_DENSE_TWO_N = 8
MAX_REDUCED_SITES = 6

DEFAULT_RATIONAL_MAX_TWO_N = 120
DEFAULT_WORKERS = 1

# Eigenvalues (and Schmidt weights) at or below this are numerical zeros.
NUMERICAL_ZERO = 1e-15
RANK_TOLERANCE = 1e-10

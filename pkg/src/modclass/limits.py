"""Resource caps and search budgets.

Defaults target desk-scale interactive use; the CLI can raise the two hard
caps per invocation.  The caps exist to turn accidental combinatorial
explosions into clean errors instead of hangs.
"""

MAX_GROUP_ORDER = 200
MAX_FIELD_SIZE = 2**20

# Exhaustive-scan ceiling: searches over all elements of a small space
# (endomorphism algebras, spin seeds) are attempted only below this size.
SCAN_CAP = 8192

# Attempt budget for Las Vegas searches before raising InconclusiveError.
RANDOM_ATTEMPTS = 200

# Default extension-degree bound for fiber and preimage searches.
DEGREE_BOUND = 6

# Canonical standard-basis forms are computed only for modules this small.
CANONICAL_DIM_CAP = 8
CANONICAL_ORBIT_CAP = 1024

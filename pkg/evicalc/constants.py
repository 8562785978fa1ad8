import math

# Evidence-variable cap. 2^17 table entries keeps exhaustive audits fast.
MAX_EVIDENCE_VARIABLES = 16

# Total mass accepted by joint_from_table before renormalizing.
TABLE_SUM_TOLERANCE = 1e-9

# Normalization guarantee of every constructed distribution.
NORMALIZATION_TOLERANCE = 1e-12

# Conditional independence check of naive-Bayes expansions.
CI_TOLERANCE = 1e-12

# Auditors skip any scenario that conditions on less mass than this.
ZERO_MASS = 1e-12

# Relative tolerance of the likelihood ratio chain rule.
IDENTITY_TOLERANCE = 1e-9

# Default tolerance of modularity audits.
MODULARITY_TOLERANCE = 1e-9

# Collision search for the basic update property.
COLLISION_TOLERANCE = 1e-2
COLLISION_MATCH_TOLERANCE = 1e-4
COLLISION_REFINEMENTS = 64
BISECTION_STEPS = 60

# Witnesses kept per report besides the worst one.
MAX_WITNESSES = 10

# Default ci-grid: priors x per-finding likelihood ratios, two findings.
CI_GRID_PRIORS = (0.01, 0.1, 0.3, 0.5, 0.7, 0.9)
CI_GRID_RATIOS = (1 / 99, 1 / 3, 1.0, 3.0, 99.0)
DEFAULT_FINDINGS = 2
DEFAULT_SAMPLES = 200
DEFAULT_SEED = 0
MAX_SEED = 2**64

# Naive-Bayes parameters drawn by ci-random stay inside this interval.
RANDOM_PARAMETER_RANGE = (0.01, 0.99)

# Priors used by the cf-limit demonstration.
CF_LIMIT_PRIORS = (1e-6, 1e-4, 1e-2)
CF_LIMIT_EPSILON = 0.05

# Evoking strength cut points on p(H|E). Verbal anchors only exist for
# 1 ("rare or unusual cause"), 3 ("most common but not the overwhelming
# cause") and 5 ("pathognomonic"); 5 is reserved for p(H|E) = 1.
EVOKING_CUTS = (0.1, 0.35, 0.65)
EVOKING_MIN = 0
EVOKING_MAX = 5

# Natural log follows the GLASGOW DYSPEPSIA system, which used ln(lambda).
LOG_BASES = {"e": math.e, "10": 10.0, "2": 2.0}
DEFAULT_LOG_BASE = "e"

# MYCIN counterexample: two findings with p(E|H)=.99 and p(E|~H)=.01,
# i.e. a likelihood ratio of 99 each.
COUNTEREXAMPLE_PRIOR = 0.01
COUNTEREXAMPLE_RATIO = 99.0
COUNTEREXAMPLE_SENSITIVITY = 0.99
COUNTEREXAMPLE_FALSE_POSITIVE = 0.01

# Oracle equivalence sweeps exhaustive cases up to this many findings.
EXHAUSTIVE_CASE_LIMIT = 4

# Relative spread under which two values count as tied when ranking cases.
RANK_TIE_TOLERANCE = 1e-12

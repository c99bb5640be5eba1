"""Centralized numeric tolerances."""

# Probability vectors must sum to one within this absolute tolerance.
PROB_SUM_TOL = 1e-9

# Log-space identities (e.g. the beta=0 prior identity) hold to this bound.
LOG_SPACE_TOL = 1e-12

# Agreement between log-space computations and direct-summation oracles.
ORACLE_REL_TOL = 1e-9

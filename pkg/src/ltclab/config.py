"""Global resource budgets.

Every brute-force oracle refuses (raises) rather than silently sampling once
an instance exceeds these budgets; sampling estimators exist only in the
harness and are always labelled as estimates.
"""

# Maximum number of codewords any exhaustive oracle (minimum distance,
# nearest codeword, cached codeword tables) will enumerate.
ENUMERATION_THRESHOLD = 2**24

# Maximum number of adjacency entries a graph may materialize explicitly.
# Larger graphs fall back to a computed row accessor.
ADJACENCY_BUDGET = 2**26


def enumeration_threshold(override=None) -> int:
    return ENUMERATION_THRESHOLD if override is None else int(override)


def adjacency_budget(override=None) -> int:
    return ADJACENCY_BUDGET if override is None else int(override)

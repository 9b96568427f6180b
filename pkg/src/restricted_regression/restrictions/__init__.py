"""Restriction systems, partitions and feasibility."""

from restricted_regression.restrictions.loader import (
    load_restrictions,
    system_from_dict,
    system_to_dict,
)
from restricted_regression.restrictions.system import (
    FEASIBILITY_SLACK,
    Partition,
    RestrictionSystem,
    check_feasible,
    conditional_box,
    feasible_point,
    permute_design,
    select_partition,
    solve_block,
    validate,
)

__all__ = [
    "FEASIBILITY_SLACK",
    "Partition",
    "RestrictionSystem",
    "check_feasible",
    "conditional_box",
    "feasible_point",
    "load_restrictions",
    "permute_design",
    "select_partition",
    "solve_block",
    "system_from_dict",
    "system_to_dict",
    "validate",
]

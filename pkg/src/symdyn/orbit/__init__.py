"""Points, block codes, cocycles and orbit-equivalence checks."""

from .cocycles import (CylinderPotential, GroupoidElement, compose, compose_potential,
                       ergodic_sum, ergodic_sums, groupoid_cocycle, groupoid_map,
                       psi_transform, psi_value)
from .codes import SlidingBlockCode, apply_code, check_code_image, preimage
from .coe import (CoeData, ForcingReport, Report, forcing_check, indicator_family,
                  verify_coe_data, verify_eventual_conjugacy)
from .conjugacy import find_conjugacy, obstructions, periodic_point_count, verify_conjugacy
from .points import EventuallyPeriodicPoint, point_admissible, random_point, shift_point

__all__ = [
    "CylinderPotential", "GroupoidElement", "compose", "compose_potential", "ergodic_sum",
    "ergodic_sums", "groupoid_cocycle", "groupoid_map", "psi_transform", "psi_value",
    "SlidingBlockCode", "apply_code", "check_code_image", "preimage", "CoeData",
    "ForcingReport", "Report", "forcing_check", "indicator_family", "verify_coe_data",
    "verify_eventual_conjugacy", "find_conjugacy", "obstructions", "periodic_point_count",
    "verify_conjugacy", "EventuallyPeriodicPoint", "point_admissible", "random_point",
    "shift_point",
]

"""Zolotarev families, path tracking, degenerations and obstructions."""

from chebtrees.zhomotopy.degree5 import degree5_membership, membership_of
from chebtrees.zhomotopy.degree7 import (UnexpectedOrder, component_certificate, components_separate,
                                         degree7_sample)
from chebtrees.zhomotopy.families import (ConstraintNoConvergence, FamilySpec, SingularConstraint, family,
                                          load_catalog, resolve_constraints)
from chebtrees.zhomotopy.obstruct import (degeneration_feasible, full_passports, pair_obstructed,
                                          zhomotopy_graph)
from chebtrees.zhomotopy.scan import UnsupportedFamily, degeneration_scan
from chebtrees.zhomotopy.search import NotFound, find_connecting_family
from chebtrees.zhomotopy.track import (HomotopyResult, PassportJump, PathSpec, TrackNoConvergence,
                                       catalog_path, track, track_catalog)

__all__ = [
    "ConstraintNoConvergence", "FamilySpec", "HomotopyResult", "NotFound", "PassportJump", "PathSpec",
    "SingularConstraint", "TrackNoConvergence", "UnexpectedOrder", "UnsupportedFamily", "catalog_path",
    "component_certificate", "components_separate", "degeneration_feasible", "degeneration_scan",
    "degree5_membership", "degree7_sample", "family", "find_connecting_family", "full_passports",
    "load_catalog", "membership_of", "pair_obstructed", "resolve_constraints", "track", "track_catalog",
    "zhomotopy_graph",
]

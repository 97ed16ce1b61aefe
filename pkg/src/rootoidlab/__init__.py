"""Exact computations with protorootoids: groupoids carrying a Boolean-ring
representation and a 1-cocycle, their weak orders, and rootoids."""

from .cat import (PrdMorphism, check_prd_morphism, complete_structure, cover, grade_morphism,
                  identity_morphism, inverse_image, restriction, theta_perp)
from .classify import PropertyReport, abridge, classify, is_rootoid, slc_check
from .groupoid import Expression, Functor, Groupoid, components, generated_subgroupoid, universal_cover
from .prd import Cocycle, PowerSetRep, Protorootoid, coboundary, is_faithful, weak_order
from .setalg import GroundSet, PartialMap, SetElem, SubringPartition, generated_subring
from .signed import K_functor, L_functor, I_functor, SignedGroupoidSet, phi_g

__all__ = [
    "PrdMorphism", "check_prd_morphism", "complete_structure", "cover", "grade_morphism",
    "identity_morphism", "inverse_image", "restriction", "theta_perp",
    "PropertyReport", "abridge", "classify", "is_rootoid", "slc_check",
    "Expression", "Functor", "Groupoid", "components", "generated_subgroupoid", "universal_cover",
    "Cocycle", "PowerSetRep", "Protorootoid", "coboundary", "is_faithful", "weak_order",
    "GroundSet", "PartialMap", "SetElem", "SubringPartition", "generated_subring",
    "K_functor", "L_functor", "I_functor", "SignedGroupoidSet", "phi_g",
]

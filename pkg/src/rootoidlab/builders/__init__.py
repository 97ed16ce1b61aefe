"""Example families: Coxeter systems, rational arrangements and small fixtures."""

from .arrangement import ArrangementRootoid, RationalArrangement, build_arrangement
from .coxeter import CoxeterMatrix, CoxeterSystem, build_coxeter, exchange_violation, reflection_subgroup

__all__ = ["ArrangementRootoid", "RationalArrangement", "build_arrangement", "CoxeterMatrix",
           "CoxeterSystem", "build_coxeter", "exchange_violation", "reflection_subgroup"]

"""Mackey and Green functors on finite groups, with exact rational arithmetic."""

from .finite_group import Group, all_subgroups, builtin_group
from .functor import (MackeyFunctor, burnside_functor, fixed_point_functor, hom_dim, regular_rep, trivial_rep,
                      validate)
from .green import GreenFunctor, burnside_green

__version__ = "0.1.0"

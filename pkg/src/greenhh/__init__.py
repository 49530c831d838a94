"""Exact computations with Mackey and Green functors for cyclic p-groups:
box products, norms of rings, twisted Hochschild homology, algebraic TR and
the Koszul E2-term for MU_R."""

from .abelian import FGAbelianGroup, GroupHom, smith_normal_form
from .box import MultiBox, box, box_inductive_levels, relative_box
from .burnside import BurnsideElement, CyclicGroup, burnside_green, burnside_mackey
from .cyclotomic import algebraic_restriction, ef_quotient, geometric_fixed_points, tr_tower
from .graded import (
    ROC2Degree,
    collapse_check,
    e2_presentation_mur,
    hh_eq_tor_check,
    hh_graded,
    koszul_tor,
    rotating_iso_z,
)
from .green import GreenFunctor, GreenModule, RingPresentation, TwistTag, ring_Z, ring_Zmod
from .hochschild import hh_relative, hh_twisted, normalized_complex, twisted_cyclic_nerve
from .mackey import MackeyFunctor, MackeyMorphism, check_axioms
from .norm import norm_ring

__version__ = "0.1.0"

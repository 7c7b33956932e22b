"""Degenerate maximal tori in finite simple groups of Lie type.

A closed-form classifier (``classify``) and an independent matrix-level
oracle (``verify``) built on exact root systems, Weyl-group class data and
small finite-field matrix groups.
"""

from .classify import DegeneracyVerdict, classify_classical, classify_exceptional, degenerate_census
from .errors import BudgetError, ParameterError, UnsupportedError, VerificationFailure
from .rootsys import RootSystemType, build_root_system, q_bound, weight_lattice_min_norm
from .torus import algebraic_normaliser_order, torus_factor_orders
from .weylclass import TorusClassDescriptor, enumerate_torus_classes, make_descriptor

__version__ = "0.1.0"

__all__ = [
    "BudgetError", "DegeneracyVerdict", "ParameterError", "RootSystemType", "TorusClassDescriptor",
    "UnsupportedError", "VerificationFailure", "algebraic_normaliser_order", "build_root_system",
    "classify_classical", "classify_exceptional", "degenerate_census", "enumerate_torus_classes",
    "make_descriptor", "q_bound", "torus_factor_orders", "weight_lattice_min_norm",
]

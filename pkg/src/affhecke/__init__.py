"""Exact arithmetic for affine and graded Hecke algebras, extended quotients
of tori by Weyl groups, and the homology counts attached to them."""

from affhecke.laurent import Laurent, LaurentRing
from affhecke.root_datum import RootDatum, RootDatumError, build_root_datum
from affhecke.weyl import (
    DiagramAutomorphism,
    ExtendedAffineWeyl,
    FiniteGroup,
    GroupTooLarge,
    diagram_automorphisms,
    extended_group,
    weyl_group,
)
from affhecke.parameters import ParamFunction, ParameterError
from affhecke.hecke import HeckeAlgebra, HeckeElement, SizeGuardExceeded
from affhecke.graded import GradedHeckeAlgebra, GradedElement
from affhecke.quotient import extended_quotient, fixed_data, infinitesimal_quotient
from affhecke.homology import hh_brute_force_graded, hh_series_graded, homology_report, hp_betti
from affhecke.cyclotomic import Cyclotomic
from affhecke.reps import (
    InducedRep,
    artin_basis_check,
    clifford_count,
    fiber_count,
    induced_family_rep,
    isotropy_group,
    trace_matrix,
)
from affhecke.config import ConfigError, DatumConfig, load_datum

__all__ = [
    "Laurent",
    "LaurentRing",
    "RootDatum",
    "RootDatumError",
    "build_root_datum",
    "DiagramAutomorphism",
    "ExtendedAffineWeyl",
    "FiniteGroup",
    "GroupTooLarge",
    "diagram_automorphisms",
    "extended_group",
    "weyl_group",
    "ParamFunction",
    "ParameterError",
    "HeckeAlgebra",
    "HeckeElement",
    "SizeGuardExceeded",
    "GradedHeckeAlgebra",
    "GradedElement",
    "extended_quotient",
    "fixed_data",
    "infinitesimal_quotient",
    "hh_series_graded",
    "hh_brute_force_graded",
    "hp_betti",
    "homology_report",
    "Cyclotomic",
    "InducedRep",
    "induced_family_rep",
    "isotropy_group",
    "trace_matrix",
    "artin_basis_check",
    "clifford_count",
    "fiber_count",
    "ConfigError",
    "DatumConfig",
    "load_datum",
]

__version__ = "0.1.0"

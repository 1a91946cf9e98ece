"""Exact arithmetic in extended Weyl groups and maximal-torus normalizers
of Chevalley groups of types E6, E7 and E8.

The package builds the root systems with a fixed positive-root ordering,
normalizes structure constants to + at extraspecial pairs, realizes the
groups generated by the n_r exactly (both as integer matrices in the
adjoint representation and as fast (sign vector, Weyl element) normal
forms), and verifies the bundled tables of lifts, complement generators,
non-splitting certificates and twisted-torus structures.
"""

from .chevalley import adjoint_oracle, eta_table, structure_constants
from .monosolve import ConstraintSystem, verify_certificate
from .permgroup import PermGroup
from .rootsystem import RootSystem, root_system
from .tables import load_tables
from .tits import TitsElement, TitsGroup, format_element, tits_group
from .torus import (
    ConcreteTorus,
    MixedElement,
    in_twisted_normalizer,
    invariant_factors,
    order_polynomial,
    parse_torus_factors,
    power_sum,
    smith_normal_form,
    twisted_structure,
)

__all__ = [
    "ConcreteTorus",
    "ConstraintSystem",
    "MixedElement",
    "PermGroup",
    "RootSystem",
    "TitsElement",
    "TitsGroup",
    "adjoint_oracle",
    "eta_table",
    "format_element",
    "in_twisted_normalizer",
    "invariant_factors",
    "load_tables",
    "order_polynomial",
    "parse_torus_factors",
    "power_sum",
    "root_system",
    "smith_normal_form",
    "structure_constants",
    "tits_group",
    "twisted_structure",
    "verify_certificate",
]

__version__ = "0.1.0"

"""Elliptic groups and elliptic rings.

An elliptic group is a set with a commutative operation satisfying
``x*(x*y) = y`` and ``x*(y*(z*w)) = w*(y*(z*x))``.  Every nonempty one is
``_aA``: an abelian group ``A`` with ``x*y = a - x - y``.
"""
__version__ = "0.1.0"

from .abelian import GroupElement, GroupHom, GroupShape
from .classify import CanonicalForm, canonical_form, classify_table
from .constructions import (
    bimorphism_count, copair, coproduct, enumerate_congruences, product, quotient,
    tensor_closed_form, verify_universal,
)
from .core import (
    CayleyTable, PointedAbelian, derived_group, flex_points, recover_pointed, to_pointed,
    to_table, verify_axioms,
)
from .curves import PrimeFieldCtx, TernaryCubic, chord_tangent, curve_group, enumerate_points
from .errors import EllError
from .morphisms import (
    AffineMorphism, compose, enumerate_morphisms, hom_exists, is_isomorphic, mor_elliptic,
    predicted_mor_structure,
)
from .rings import circ_factor, ell0, ell1, endo_ring, is_circ_prime

__all__ = [
    "GroupElement", "GroupHom", "GroupShape", "CanonicalForm", "canonical_form",
    "classify_table", "bimorphism_count", "copair", "coproduct", "enumerate_congruences",
    "product", "quotient", "tensor_closed_form", "verify_universal", "CayleyTable",
    "PointedAbelian", "derived_group", "flex_points", "recover_pointed", "to_pointed",
    "to_table", "verify_axioms", "PrimeFieldCtx", "TernaryCubic", "chord_tangent",
    "curve_group", "enumerate_points", "EllError", "AffineMorphism", "compose",
    "enumerate_morphisms", "hom_exists", "is_isomorphic", "mor_elliptic",
    "predicted_mor_structure", "circ_factor", "ell0", "ell1", "endo_ring", "is_circ_prime",
]

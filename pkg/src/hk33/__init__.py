"""Verdict engine for genus-two handlebody-knot annulus presentations.

Decides sufficient criteria for irreducibility, atoroidality and uniqueness
of the annulus, and derives symmetry-group upper bounds, from purely
symbolic presentations; ships family constructors, a classification service
and a thin CLI client.
"""

from .criteria import classify
from .families import family_I, family_T, family_U, enumerate_family, parse_family_spec
from .freegroup import (
    CyclicWord,
    Word,
    abelianize,
    are_conjugate,
    canonical_class,
    classes_contain_basis,
    cyclic_reduce,
    free_reduce,
    format_word,
    is_basis_pair,
    is_power_of_primitive,
    is_primitive,
    max_root,
    nth_root,
    parse_word,
    xayb_quotient_class,
)
from .lattice import (
    BasisChange,
    BasisChangeKind,
    DivisibilityClass,
    LatticeVector,
    SlopeInvariant,
    apply_change,
    classify_slope_pair,
    divisibility_class,
    is_symmetric_type,
    normalize,
    reverse_orientation,
    slope_type,
)
from .model import (
    AnnulusPresentation,
    load_presentation,
    load_report,
    save_presentation,
    save_report,
    validate,
)
from .verdicts import RULES, Report, SymGroup, SymmetryBound, Verdict, VerdictState

__version__ = "0.1.0"

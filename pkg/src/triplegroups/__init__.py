"""Double affine Weyl groups, triple groups and their presentations."""

from .errors import (
    BadStep,
    ExcludedType,
    IsotropicRoot,
    MismatchedType,
    NotAffine,
    NotInGroup,
    NotInLattice,
    TripleGroupsError,
    UnknownGenerator,
    UnknownType,
    UnsupportedKind,
)
from .presentations import Presentation, canonical_assignment, presentation_of, verify
from .report import Report
from .rootsys import AffineCartanData, LatticeMode, catalog_ids, load_catalog
from .weyl import DAWElement, DoubleAffineWeyl, group_for
from .words import Word

__version__ = "0.1.0"

__all__ = [
    "AffineCartanData",
    "BadStep",
    "DAWElement",
    "DoubleAffineWeyl",
    "ExcludedType",
    "IsotropicRoot",
    "LatticeMode",
    "MismatchedType",
    "NotAffine",
    "NotInGroup",
    "NotInLattice",
    "Presentation",
    "Report",
    "TripleGroupsError",
    "UnknownGenerator",
    "UnknownType",
    "UnsupportedKind",
    "Word",
    "canonical_assignment",
    "catalog_ids",
    "group_for",
    "load_catalog",
    "presentation_of",
    "verify",
]

"""Exact counts of ordinary hyperplanes for point sets on rational curves."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .construct import acnodal_coset, near_pencil, off_coset_probe, perturb
from .curve import (
    ProjectionCenter,
    SingularityClass,
    classify,
    cohyperplanar,
    curve_point,
    fundamental_form,
    polar_eval,
    sylvester_decompose,
)
from .enumeration import spectrum, stability_check, through_point_exactly
from .groupmodel import (
    FiniteAbelianGroup,
    closed_form_max,
    closed_form_min,
    maximize_dplus1,
    minimize_ordinary,
)
from .projective import Configuration, ProjPoint, general_position

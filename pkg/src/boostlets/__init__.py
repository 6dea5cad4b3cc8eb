"""Continuous boostlet transform on sampled 2D space-time fields."""

from .boostlet import (
    Cone,
    MotherBoostlet,
    QuadratureLattice,
    admissibility,
    atom,
    cbt_point,
    cbt_slice,
    convolution_form,
    default_mother,
)
from .closed_form import ClosedFormInputs, example_cbt, example_intermediates, example_sweep
from .field import Field2D, GridSpec, Spectrum2D, dft_forward, dft_inverse
from .geometry import GroupElement, boost_matrix, group_inverse, group_product
from .uncertainty import GroupQuadrature, InequalityReport, Rectangle

__version__ = "0.1.0"

__all__ = [
    "ClosedFormInputs",
    "Cone",
    "Field2D",
    "GridSpec",
    "GroupElement",
    "GroupQuadrature",
    "InequalityReport",
    "MotherBoostlet",
    "QuadratureLattice",
    "Rectangle",
    "Spectrum2D",
    "admissibility",
    "atom",
    "boost_matrix",
    "cbt_point",
    "cbt_slice",
    "convolution_form",
    "default_mother",
    "dft_forward",
    "dft_inverse",
    "example_cbt",
    "example_intermediates",
    "example_sweep",
    "group_inverse",
    "group_product",
]

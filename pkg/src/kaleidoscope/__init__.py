"""Kaleidoscope transform and bespoke fractal sampling masks for the 2D DFT."""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    FormatError,
    KaleidoscopeError,
    ParameterError,
    PolygonError,
    UnsatisfiableTargetError,
)
from .kmap import (
    Branch,
    KaleidoscopeParams,
    downsample_concat_oracle,
    kappa,
    kappa_lower,
    kappa_table,
    kappa_upper,
    kt_1d,
    kt_2d,
    params_from_multiplier,
    unity_smear_multipliers,
)
from .farey import GridVector, FareyFraction, farey_sequence, symmetrize_octant, to_grid_vectors
from .norms import (
    LpNorm,
    PolygonNorm,
    StarPolygon,
    TransformedLpNorm,
    lp_score,
    polygon_score,
    rotation,
    sort_vectors,
    transformed_score,
)
from .builder import (
    FractalSpec,
    Mode,
    SamplingMask,
    build,
    build_explicit,
    build_from_lines,
    build_from_scaled_images,
    katz_number,
    periodic_line,
    select_prefix,
)
from .patterns import PatternRecipe
from .analysis import box_counting_dimension, mask_compare, reduction_factor, sampling_fraction
from .maskio import read_mask, write_mask

"""Exact degree computations for determinantal maps of projective space."""

from .degrees import (
    DegreeVector,
    almost_linear_closed_form,
    decomposed_degree_vector,
    is_palindromic,
    koszul_multidegree,
    kunneth,
    mv_degree_vector,
    sigma_bound_vector,
)
from .detmap import (
    GluingSpec,
    almost_linear_family,
    base_ideal,
    block_glue,
    general_glue,
    koszul_check,
    symbol_row,
    tau_matrix,
)
from .ffprobe import FFConfig, codim_estimate
from .geom import LatticePolytope, minkowski_sum, newton_polytope, simplex
from .mixvol import mixed_volume, mixed_volume_oracle, split_mixed_volume
from .poly import HilbertBurchMatrix, Polynomial, VarContext, maximal_minors, parse_matrix, parse_poly

__all__ = [name for name in dir() if not name.startswith("_")]

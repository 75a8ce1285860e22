"""Exact two-colorings of point sets with respect to wedge translates, and
decompositions of multiple coverings of the plane by polygon translates."""

from .classify import PairType, classify_pair, find_special_pair, is_convex, special_pairs
from .coloring import (ColoringResult, anc_coloring, anc_to_nc, color_big_pair, color_contain_pair,
                       color_halfplane_pair, color_hard_pair, color_single_wedge, color_wedge_system,
                       f_bound, f_internal, nc_bound, partition_multi)
from .cover import CoverDecomposition, CoverInstance, decompose_cover, decompose_cover_s, grid_params, lattice_cover
from .errors import CoverDecompError
from .geometry import PlacedWedge, Point, Polygon, Wedge, direction, polygon_wedges, reflect_polygon
from .oracle import (Region, Requirement, min_coverage, min_nc_constant, verified_threshold, verify_coloring,
                     verify_covering)
from .sweep import Frame, boundary, path_decomposition, shadow
from .witness import WitnessInstance, certify_indecomposable, construct_witness, polygon_witness

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Soft densities of soft-ball packings."""

from ._core import (
    ConvexBody2D,
    Lattice2D,
    Lattice3D,
    SoftpackError,
    covering_radius,
    csikos_derivative,
    decompose,
    dv_cell,
    lattice_soft_density,
    lemma_base_check,
    lemma_legs_check,
    load_body,
    local_max_experiment,
    min_gauge_vector,
    minimal_vectors,
    optimal_lattice_search,
    reference_lattice,
    soft_density_3d,
    theorem2_bound,
    union_volume,
)

__version__ = "0.1.0"

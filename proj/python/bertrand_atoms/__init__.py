"""Closed orbits, fish-eye couplings and Madelung ordering, from Python.

Thin wrapper over the compiled ``_core`` extension; see ``help(_core)``.
"""

from ._core import (
    DomainError,
    NotAnEigenvalueError,
    NumericError,
    SingularityError,
    UnsupportedModelError,
    assoc_legendre,
    configuration,
    coulomb_sturmian_couplings,
    filling_order,
    first_z_for_l,
    fisheye_coupling_law,
    fisheye_couplings,
    fisheye_eigenfunction,
    gegenbauer,
    gegenbauer_norm_closed_form,
    gegenbauer_norm_integral,
    hopf_map,
    hydrogen_level_2d,
    hydrogen_level_3d,
    hyperspherical_gram,
    level_ordering,
    n_l_count,
    orbit,
    perihelion_x,
    period_lengths,
    refractive_index,
    screening_length,
    so4_commutator_table,
    solve_tf,
    stereo_r3_to_s3,
    stereo_s3_to_r3,
    tietz_level,
    tietz_period_formula,
    tietz_phi,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]

"""Exact Frobenius numbers, null-lattice invariants and covering-radius bounds."""

__version__ = "0.1.0"

from .core import NTuple, ReductionResult, reduce_tuple, validate_tuple
from .semigroup import AperyProfile, FrobeniusResult, apery_profile, frobenius_exact, is_representable
from .lattice import (CoveringRadiusEstimate, GrassmannCoords, LatticeBasis, MinimaProfile,
                      covering_radius_bounds, covering_radius_exact, grassmann_coords, is_esm,
                      lattice_determinant_sq, null_lattice_basis, successive_minima)
from .bounds import (BoundReport, bound_bdr, bound_erdos_graham, bound_report, bound_selmer,
                     bound_sylvester, bound_vitek, frobenius_bound_esm, frobenius_bound_general,
                     frobenius_bound_main, lower_bound_aliev_gruber, simplex_geometry,
                     symmetric_det)
from .enclosure import Interval, unit_ball_volume
from .esmgen import (asymptotic_report, esm4_basis, esm4_tuple, gcd_certificate,
                     near_orthogonal_check, verify_esm_family)

"""Exact symbolic calculus for generalized partial-slice monogenic functions."""
from .algebra import AlgebraContext, Multivector, blade_product, clifford_conjugate, \
    mv_mul, paravector_inverse, split_point
from .poly import CliffordPolynomial, VarKind, divide_by_r, parity_split_in_r, \
    poly_diff, poly_eval, r_square_substitute
from .slices import (SlicePair, cr_residual, dirac_full, dirac_xp, dirac_xp_conj,
                     dirac_xq, gamma_apply, laplacian_power_slice,
                     representation_from_slice, restrict_to_real, tau_q, to_full,
                     validate_slice_pair, vekua_residual)
from .extensions import (ck, ck_fixed_direction, ck_right_residual, fueter_sce_source,
                         gck, partial_eta_apply)
from .radon import dual_radon, dual_radon_numeric, dw_slice_apply, sphere_moment
from .parsing import format_polynomial, parse_expression

__version__ = "0.1.0"

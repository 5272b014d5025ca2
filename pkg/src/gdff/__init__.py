"""Exact construction, classification and approximation of general dual feasible functions."""

from .approximate import ApproxCertificate, approximate_extreme, loosen, symmetrize, two_slope_fill_in
from .classify import (Classification, check_extreme_2slope, check_maximal, check_restricted_maximal,
                       check_strongly_maximal, classify, falsify_validity, generalized_symmetry_gap)
from .common import Check, NotApproximable, UnequalTailSlopes, Verdict
from .complex import (ComplexVertex, ExclusionRegion, SlackReport, delta_slack, enumerate_vertices,
                      is_subadditive, is_superadditive, min_slack_outside)
from .convert import (cgf_to_gdff, check_minimal_cgf, check_restricted_minimal_cgf, gdff_to_cgf,
                      max_admissible_lambda, strongly_maximal_from_cgf)
from .cuts import IPRow, GeneratedCut, generate_cut, verify_cut_bruteforce
from .families import BJParams, SDeltaParams, bj1_value, make_bj1, make_linear, make_phi_s_delta
from .pwl import PwlFunction, UNBOUNDED, affine_combine, restrict_and_interpolate, slopes, sup_norm_distance

__all__ = [name for name in dir() if not name.startswith("_")]

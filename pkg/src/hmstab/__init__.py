"""Exact tools for GIT (semi)stability of projective hypersurfaces."""

from .analyze import AnalyzeOptions, analyze, report_json
from .criteria import Verdict, check_part1, check_part2, check_sprime_variant, check_thm41
from .fields import GF, QQ, Field
from .newton import lee_ratio, torus_verdict
from .poly import HomogeneousPoly, LinearChange, Poly, apply_linear_change, parse_poly, tail_decomposition
from .singularity import TriState, is_cone, is_pure_power, multiplicity_and_cone
from .verifier import check_certificate
from .weights import alpha_degree, prop23_bounds

__all__ = [
    "AnalyzeOptions", "Field", "GF", "HomogeneousPoly", "LinearChange", "Poly", "QQ", "TriState", "Verdict",
    "alpha_degree", "analyze", "apply_linear_change", "check_certificate", "check_part1", "check_part2",
    "check_sprime_variant", "check_thm41", "is_cone", "is_pure_power", "lee_ratio", "multiplicity_and_cone",
    "parse_poly", "prop23_bounds", "report_json", "tail_decomposition", "torus_verdict",
]

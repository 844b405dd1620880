"""Approximate polynomials, approximate rank and the bounds they feed."""

from .bounds import EZParams, Q2Bound, ehlich_zeller_bound, measure_ez_params, q2_lower_bound
from .chebyshev import C_DEGREE, OrChebyshev, chebyshev_degree, chebyshev_value, degree_cap, or_chebyshev
from .lp import (
    THIRD, ApproxPolynomial, MinimaxResult, MonomialSearch, approx_degree, approx_feasible,
    approx_mon_upper, degree_support, max_error, minimax_fit, verify_approx,
)
from .rank import (
    ApproxRankSearch, ApproxRankWitness, RankLowerBound, approx_rank_lower, approx_rank_search,
    approx_rank_upper, rank1_feasible,
)

__all__ = [
    "EZParams", "Q2Bound", "ehlich_zeller_bound", "measure_ez_params", "q2_lower_bound",
    "C_DEGREE", "OrChebyshev", "chebyshev_degree", "chebyshev_value", "degree_cap", "or_chebyshev",
    "THIRD", "ApproxPolynomial", "MinimaxResult", "MonomialSearch", "approx_degree",
    "approx_feasible", "approx_mon_upper", "degree_support", "max_error", "minimax_fit",
    "verify_approx", "ApproxRankSearch", "ApproxRankWitness", "RankLowerBound",
    "approx_rank_lower", "approx_rank_search", "approx_rank_upper", "rank1_feasible",
]

"""Two-party communication problems, protocols and covers."""

from .covers import (
    CoverSearchLimit,    LovaszSaksProtocol, ProtocolRun, RectangleCover, cover_from_monomials,
    cover_number_exact, lovasz_saks_protocol, maximal_rectangles, min_cover,
    validate_cover,
)
from .problem import (
    CommProblem, and_power, build_problem, comm_rank, complement, disj_value,
    disjointness, eq_to_disj, eq_value, equality, inner_product,
    inner_product_complement, raw_problem,
)
from .protocols import DeterministicCost, d_exact, d_one_round, distinct_row_count
from .verify import IdentityReport, verify_rank_eq_mon

__all__ = [
    "CommProblem", "and_power", "build_problem", "comm_rank", "complement",
    "disj_value", "disjointness", "eq_to_disj", "eq_value", "equality",
    "inner_product", "inner_product_complement", "raw_problem",
    "DeterministicCost", "d_exact", "d_one_round", "distinct_row_count",
    "CoverSearchLimit", "LovaszSaksProtocol", "ProtocolRun", "RectangleCover", "cover_from_monomials",
    "cover_number_exact", "lovasz_saks_protocol", "maximal_rectangles", "min_cover",
    "validate_cover", "IdentityReport", "verify_rank_eq_mon",
]

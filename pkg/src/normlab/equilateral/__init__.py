"""Equilateral-set verification, search and the audit trace."""

from .audit import AnsatzViolation, AuditReport, Inequality, anchor_family, audit_sequence, check_ansatz, estimate_limit, rescale_to_unit
from .monotone import is_monotone, monotone_subfamily
from .search import SearchConfig, search_equilateral
from .verify import DEFAULT_TOL, EquilateralReport, spread_stats, verify_equilateral

__all__ = [
    "AnsatzViolation",
    "AuditReport",
    "DEFAULT_TOL",
    "EquilateralReport",
    "Inequality",
    "SearchConfig",
    "anchor_family",
    "audit_sequence",
    "check_ansatz",
    "estimate_limit",
    "is_monotone",
    "monotone_subfamily",
    "rescale_to_unit",
    "search_equilateral",
    "spread_stats",
    "verify_equilateral",
]

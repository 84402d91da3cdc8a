"""Semigeneration decisions: edge saturation, type checks, Engel quotients, certificates."""

from .decide import (
    NOT_SEMIGENERATED,
    SEMIGENERATED,
    UNKNOWN,
    Decision,
    DiamondCert,
    EngelQuotientCert,
    EngelSearchCert,
    SaturationCert,
    StepTwoCert,
    Verification,
    cert_from_json,
    decide_halfspace,
    decide_semigenerated,
    verify_certificate,
)
from .edge import EdgeApprox, HalfSpace, SaturationConfig, TraceStep, diamond_terms, replay_trace, saturate_edge
from .quotients import EngelQuotient, EngelSearch, find_engel_quotients, forced_ideal
from .types import (
    ConstructionCert,
    DiamondReport,
    StarReport,
    abelian_hyperplane,
    check_type_diamond,
    check_type_star,
    verify_construction,
    verify_star_report,
)

__all__ = [
    "NOT_SEMIGENERATED",
    "SEMIGENERATED",
    "UNKNOWN",
    "Decision",
    "DiamondCert",
    "EngelQuotientCert",
    "EngelSearchCert",
    "SaturationCert",
    "StepTwoCert",
    "Verification",
    "cert_from_json",
    "decide_halfspace",
    "decide_semigenerated",
    "verify_certificate",
    "EdgeApprox",
    "HalfSpace",
    "SaturationConfig",
    "TraceStep",
    "diamond_terms",
    "replay_trace",
    "saturate_edge",
    "EngelQuotient",
    "EngelSearch",
    "find_engel_quotients",
    "forced_ideal",
    "ConstructionCert",
    "DiamondReport",
    "StarReport",
    "abelian_hyperplane",
    "check_type_diamond",
    "check_type_star",
    "verify_construction",
    "verify_star_report",
]

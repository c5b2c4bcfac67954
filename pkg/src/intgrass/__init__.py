"""Smooth intrinsic Grassmannians of type (2, n) with Picard number two."""

from .classify import (
    FanoStatus,
    TypedVariety,
    anticanonical,
    build,
    count_fano_formula,
    count_fano_oracle,
    enumerate_smooth_fano_full,
    fano_status_by_cone,
    fano_status_by_criterion,
    recognize,
)
from .faces import semiample_cone, tau_split, verify_smooth
from .grading import Cone2, GradingData, effective_cone, moving_cone

__version__ = "0.1.0"

__all__ = [
    "Cone2",
    "FanoStatus",
    "GradingData",
    "TypedVariety",
    "anticanonical",
    "build",
    "count_fano_formula",
    "count_fano_oracle",
    "effective_cone",
    "enumerate_smooth_fano_full",
    "fano_status_by_cone",
    "fano_status_by_criterion",
    "moving_cone",
    "recognize",
    "semiample_cone",
    "tau_split",
    "verify_smooth",
]

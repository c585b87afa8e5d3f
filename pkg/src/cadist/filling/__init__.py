"""Corridor fillings, exact small areas, the Dehn inequality check and step functions."""

from cadist.filling.area import AreaResult, AreaStep, area, area_lower_bound, replay
from cadist.filling.corridor import (
    Cell,
    CertificateCheck,
    FillingCertificate,
    cell_count_bound_check,
    check_certificate,
    corridor_fill,
)
from cadist.filling.dehn import (
    DehnCase,
    DehnReport,
    dehn_case,
    dehn_inequality_check,
    sample_loops,
)
from cadist.filling.step import (
    StepFunction,
    dense_loop_lengths,
    dense_loops,
    phi_step_function,
)

__all__ = [
    "AreaResult",
    "AreaStep",
    "Cell",
    "CertificateCheck",
    "DehnCase",
    "DehnReport",
    "FillingCertificate",
    "StepFunction",
    "area",
    "area_lower_bound",
    "cell_count_bound_check",
    "check_certificate",
    "corridor_fill",
    "dehn_case",
    "dehn_inequality_check",
    "dense_loop_lengths",
    "dense_loops",
    "phi_step_function",
    "replay",
    "sample_loops",
]

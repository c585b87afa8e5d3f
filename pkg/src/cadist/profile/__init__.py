"""Cayley distance profiles and the bounds built on them."""

from cadist.profile.distance import (
    DistanceProfile,
    LengthBoundReport,
    ProfileEntry,
    TransportReport,
    check_equivalence_constants,
    check_length_bound,
    check_transport_inequalities,
    compute_h,
    default_radius_cap,
    fellow_traveler_constant,
    read_profile_csv,
    write_profile_csv,
)

__all__ = [
    "DistanceProfile",
    "LengthBoundReport",
    "ProfileEntry",
    "TransportReport",
    "check_equivalence_constants",
    "check_length_bound",
    "check_transport_inequalities",
    "compute_h",
    "default_radius_cap",
    "fellow_traveler_constant",
    "read_profile_csv",
    "write_profile_csv",
]

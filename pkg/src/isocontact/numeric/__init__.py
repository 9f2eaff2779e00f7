"""Sampled numerical checks for the explicit contact-form constructions."""

from .density import DensityModel, builtin_negative, builtin_positive, density_threshold
from .dehn import GDTProfile, default_bump, gdt_apply, gdt_check_symplectic
from .profiles import CollarPair, ProfileSpec, builtin_collar, check_collar, check_profile, default_profile

__all__ = [
    "CollarPair",
    "DensityModel",
    "GDTProfile",
    "ProfileSpec",
    "builtin_collar",
    "builtin_negative",
    "builtin_positive",
    "check_collar",
    "check_profile",
    "default_bump",
    "default_profile",
    "density_threshold",
    "gdt_apply",
    "gdt_check_symplectic",
]

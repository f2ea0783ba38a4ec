"""Maximal-acceleration bounds across kinematics, superconductors, decay widths
and compact stars."""

from maxaccel.physcore import (
    CODATA2018,
    BoundResult,
    DomainError,
    Particle,
    ParticleRegistry,
    PhysicalConstants,
    compton_wavelength,
    default_registry,
    maximal_acceleration,
    thermal_wavelength,
)

__version__ = "0.1.0"

__all__ = [
    "CODATA2018",
    "BoundResult",
    "DomainError",
    "Particle",
    "ParticleRegistry",
    "PhysicalConstants",
    "compton_wavelength",
    "default_registry",
    "maximal_acceleration",
    "thermal_wavelength",
]

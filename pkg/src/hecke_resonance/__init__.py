"""Angular Hecke characters of imaginary quadratic fields: central L-values and the resonance method."""

from .afe import AfeConfig, AfeResult, afe_central_value, afe_evaluate, evaluate_family
from .characters import AngularCharacter, make_characters
from .ideals import Ideal, PrimeIdeal, enumerate_ideals, principal_generator
from .quadratic_field import DomainError, FieldContext, Split, build_field, splitting_type
from .resonance import (
    ResonatorSpec,
    desk_resonator,
    euler_xi,
    extreme_value_search,
    moment_denominator,
    moment_numerator,
    rankin_diagnostics,
    resonator_coeffs,
)
from .special import KernelConfig, W_K, cutoff_V_gamma, cutoff_V_quadrature

__version__ = "0.1.0"

__all__ = [
    "AfeConfig",
    "AfeResult",
    "AngularCharacter",
    "DomainError",
    "FieldContext",
    "Ideal",
    "KernelConfig",
    "PrimeIdeal",
    "ResonatorSpec",
    "Split",
    "W_K",
    "afe_central_value",
    "afe_evaluate",
    "build_field",
    "cutoff_V_gamma",
    "cutoff_V_quadrature",
    "desk_resonator",
    "enumerate_ideals",
    "euler_xi",
    "evaluate_family",
    "extreme_value_search",
    "make_characters",
    "moment_denominator",
    "moment_numerator",
    "principal_generator",
    "rankin_diagnostics",
    "resonator_coeffs",
    "splitting_type",
]

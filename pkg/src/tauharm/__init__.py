"""Computable harmonic analysis on semi-direct products H x| K with K abelian.

Exact dual-group construction and transforms over finite abelian factors,
plus a trapezoid-quadrature realization of the continuous affine group.
"""

from . import _kernels, affine, catalog, suites, transforms
from .automorphisms import Automorphism, continuum_delta, identity_automorphism
from .exceptions import (
    DomainError,
    InvalidAutomorphism,
    SideMismatchError,
    SpecFormatError,
    StructureError,
    TauharmError,
    TruncationWarning,
)
from .lca import (
    Character,
    FiniteLcaGroup,
    KFunction,
    char_eval,
    fourier_transform,
    inner_product,
    inverse_fourier_transform,
)
from .semidirect import GroupFunction, TauSystem, double_dual_theta, random_group_function, trivial_system

__version__ = "0.1.0"

__all__ = [
    "affine",
    "catalog",
    "suites",
    "transforms",
    "Automorphism",
    "Character",
    "FiniteLcaGroup",
    "GroupFunction",
    "KFunction",
    "TauSystem",
    "TauharmError",
    "StructureError",
    "InvalidAutomorphism",
    "SideMismatchError",
    "DomainError",
    "SpecFormatError",
    "TruncationWarning",
    "char_eval",
    "continuum_delta",
    "double_dual_theta",
    "fourier_transform",
    "identity_automorphism",
    "inner_product",
    "inverse_fourier_transform",
    "random_group_function",
    "trivial_system",
    "__version__",
]

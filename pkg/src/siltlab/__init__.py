"""Silting objects, simple-minded collections and the maps between them,
computed exactly over finite-dimensional path algebras."""

from .bijections import phi12_rickard, phi21, t_handle, cot_handle, verify_commutation
from .complexes import ChainMap, HomComplex, ProjComplex, cone, minimize, shift
from .derived import ModuleComplex, hom_derived, twist
from .errors import SiltlabError
from .examples import a2, a3, fixture, lambda0
from .formats import format_algebra, format_complex, parse_algebra, parse_complex
from .quiver import AlgebraPresentation, PathAlgebra, Quiver, build_algebra
from .silting import SiltingObject, mutate, order_leq, silting_quiver
from .smc import SMCollection, smc_check, smc_mutate, smc_order

__version__ = "0.1.0"

__all__ = [
    "AlgebraPresentation",
    "ChainMap",
    "HomComplex",
    "ModuleComplex",
    "PathAlgebra",
    "ProjComplex",
    "Quiver",
    "SMCollection",
    "SiltingObject",
    "SiltlabError",
    "a2",
    "a3",
    "build_algebra",
    "cone",
    "cot_handle",
    "fixture",
    "format_algebra",
    "format_complex",
    "hom_derived",
    "lambda0",
    "minimize",
    "mutate",
    "order_leq",
    "parse_algebra",
    "parse_complex",
    "phi12_rickard",
    "phi21",
    "shift",
    "silting_quiver",
    "smc_check",
    "smc_mutate",
    "smc_order",
    "t_handle",
    "twist",
    "verify_commutation",
]

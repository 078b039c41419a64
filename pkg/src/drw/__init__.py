"""Exact arithmetic in the de Rham-Witt complex of F_p[X_1..X_n], truncated at length M,
together with the growth functions gamma_eps and zeta_eps."""

from .core import Context, DRWElement
from .parser import ParseError, from_json, parse, parse_element, render, to_json
from .product import mul
from .pseudoval import check_axioms, check_product_table, compare_gamma_zeta, gamma, gamma_counterexample, zeta
from .weights import Partition, WeightFunction
from .witt_scalar import WittScalar

__all__ = [
    "Context",
    "DRWElement",
    "ParseError",
    "Partition",
    "WeightFunction",
    "WittScalar",
    "check_axioms",
    "check_product_table",
    "compare_gamma_zeta",
    "from_json",
    "gamma",
    "gamma_counterexample",
    "mul",
    "parse",
    "parse_element",
    "render",
    "to_json",
    "zeta",
]

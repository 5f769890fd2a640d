"""Exact computations in W-graph algebras of finite Coxeter groups."""

from .coxeter import CoxeterSystem, coxeter_group, parse_coxeter
from .expr import parse_expression
from .omega import build_oracle, mult_table, relations
from .paths import OmegaElement

__all__ = ["CoxeterSystem", "OmegaElement", "build_oracle", "coxeter_group", "mult_table",
           "parse_coxeter", "parse_expression", "relations"]
__version__ = "0.1.0"

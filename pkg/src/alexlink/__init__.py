"""Exact link invariants from combinatorial diagrams."""

from .alexander import build_presentation, m0_presentation, reduce_tau, specialize_nu
from .config import RunConfig
from .diagram import LinkDiagram, MoveSpec, parse_diagram, validate
from .distinguish import compare, link_fingerprint, permute_components
from .laurent import IntLaurent, RatLaurent, parse_laurent

__all__ = [
    "IntLaurent",
    "LinkDiagram",
    "MoveSpec",
    "RatLaurent",
    "RunConfig",
    "build_presentation",
    "compare",
    "link_fingerprint",
    "m0_presentation",
    "parse_diagram",
    "parse_laurent",
    "permute_components",
    "reduce_tau",
    "specialize_nu",
    "validate",
]

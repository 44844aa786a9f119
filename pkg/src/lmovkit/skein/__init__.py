"""Braids, Hecke algebras and (colored) HOMFLY invariants of braid closures."""

from .braids import BraidWord, LinkPresentation, cable, closure_analysis, parse_braid
from .hecke import (
    DenseElement,
    HeckeElement,
    framed_trace,
    hecke_mul,
    markov_trace,
    represent,
)
from .invariants import (
    ColoredLink,
    central_idempotent,
    colored_framed,
    colored_invariant,
    homfly,
)
from .oracle import framed_skein, homfly_skein
from .registry import load_registry, lookup, torus_braid

__all__ = [
    "BraidWord",
    "LinkPresentation",
    "cable",
    "closure_analysis",
    "parse_braid",
    "DenseElement",
    "HeckeElement",
    "framed_trace",
    "hecke_mul",
    "markov_trace",
    "represent",
    "ColoredLink",
    "central_idempotent",
    "colored_framed",
    "colored_invariant",
    "homfly",
    "framed_skein",
    "homfly_skein",
    "load_registry",
    "lookup",
    "torus_braid",
]

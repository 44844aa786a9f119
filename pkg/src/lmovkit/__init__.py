"""Exact colored HOMFLY invariants and LMOV integrality checks for braid closures."""

__version__ = "0.1.0"

# bump whenever a convention change alters computed values
CONVENTION_VERSION = "hecke-s-eig/self-writhe/v1"

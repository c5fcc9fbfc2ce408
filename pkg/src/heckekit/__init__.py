"""Exact engine for level-0 double-coset Hecke algebras of GL_{2k} over a
local field, with independent brute-force oracles for every formula it uses.
"""

__version__ = "0.1.0"

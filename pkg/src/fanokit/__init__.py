"""Exact computations for Fano schemes of linear spaces and Veronese varieties
in projective hypersurfaces, with finite-field enumeration oracles."""

__version__ = "0.1.0"

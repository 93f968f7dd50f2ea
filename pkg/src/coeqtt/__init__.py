"""A small proof checker for homotopy type theory with coequalizers."""

__version__ = "0.1.0"

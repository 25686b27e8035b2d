"""Finite-model library for lattice-indexed sheaf representations of
finite algebras, with exhaustive verification at desk scale."""

from . import compord, corpus, finalg, gelfand, order, sheafrep

__version__ = "0.1.0"

__all__ = ["order", "finalg", "sheafrep", "compord", "gelfand", "corpus", "__version__"]

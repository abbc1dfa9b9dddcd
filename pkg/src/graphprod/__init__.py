"""Graph products of groups: normal forms, free-product equations and a symbolic classifier."""

from .graph import Graph, SymbolicGraph, VertexClass
from .words import Presentation, Syllable, multiply, reduce

__version__ = "0.1.0"

__all__ = ["Graph", "Presentation", "Syllable", "SymbolicGraph", "VertexClass", "multiply", "reduce"]

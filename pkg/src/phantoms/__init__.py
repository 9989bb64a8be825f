"""Homological computations for path algebras given by quivers with relations."""
from .presentation import (
    ZERO, AlgebraClass, Arrow, Path, PresentationError, Quiver, QuiverPresentation,
    basis_paths, build_presentation, classify, parse_presentation, path_product,
    print_presentation,
)

__version__ = "0.1.0"

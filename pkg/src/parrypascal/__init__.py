"""Parry-Bertrand numeration systems and Pascal-like triangles of word binomials."""
from .binomials import ResidueSpec, binom_words, binom_words_mod, lucas_binom_mod
from .geometry import a0_approx, an_approx, segment_for, star_check, star_pairs
from .hausdorff import convergence_report, hausdorff_distance
from .kernels import BACKEND
from .numeration import (
    BetaExpansionSpec,
    CustomLinearSystem,
    NumerationSystem,
    parse_beta_spec,
)
from .triangle import triangle_block, u_set

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BetaExpansionSpec",
    "CustomLinearSystem",
    "NumerationSystem",
    "ResidueSpec",
    "a0_approx",
    "an_approx",
    "binom_words",
    "binom_words_mod",
    "convergence_report",
    "hausdorff_distance",
    "lucas_binom_mod",
    "parse_beta_spec",
    "segment_for",
    "star_check",
    "star_pairs",
    "triangle_block",
    "u_set",
]

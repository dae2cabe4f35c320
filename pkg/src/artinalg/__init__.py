"""Exact homological computations over Artinian local algebras."""

from .field import FieldSpec, QQ, GF
from .presentation import parse_presentation, Presentation, ParseError
from .algebra import (
    build_algebra, algebra_from_text, fibre_product, socle,
    gorenstein_test, hypersurface_test, FiniteLocalAlgebra, AlgebraBuildError,
)
from .modules import (
    ActionModule, ModuleError, residue_field, regular_module, free_module,
    zero_module, maximal_ideal_module, canonical_module, dual_module,
    submodule, quotient_module, direct_sum_modules, minimal_generators,
    beta0, syzygy_step, FreePresentation, FreeResolution, BettiTable,
    betti_table, cokernel_module, resolve, resolution_of_k, hom_module,
    tor_modules, ext_modules, dual_sequence_check,
)

__all__ = [
    "FieldSpec", "QQ", "GF",
    "parse_presentation", "Presentation", "ParseError",
    "build_algebra", "algebra_from_text", "fibre_product", "socle",
    "gorenstein_test", "hypersurface_test", "FiniteLocalAlgebra",
    "AlgebraBuildError",
    "ActionModule", "ModuleError", "residue_field", "regular_module",
    "free_module", "zero_module", "maximal_ideal_module", "canonical_module",
    "dual_module", "submodule", "quotient_module", "direct_sum_modules",
    "minimal_generators", "beta0", "syzygy_step", "FreePresentation",
    "FreeResolution", "BettiTable", "betti_table", "cokernel_module",
    "resolve", "resolution_of_k", "hom_module", "tor_modules", "ext_modules",
    "dual_sequence_check",
]

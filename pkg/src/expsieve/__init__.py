"""Desk-scale numerical certification of exponential-sum lower bounds.

Sieved arithmetic tables, exact Diophantine approximation and major arcs,
an exponential-sum engine with short-interval L2 averages, Dirichlet
characters with Gauss sums, a suite of identity/inequality checks, and a
CLI experiment driver.
"""

from .arith import ArithTable, FnKind, factorize, sieve_table
from .backend import active_backend
from .characters import (
    CharacterTable,
    build_characters,
    gauss_sum,
    psi_chi,
    reconstruct_additive,
)
from .dioph import (
    AlphaSource,
    AlphaSpec,
    ConvergentSeq,
    MajorArcSet,
    admissible_window,
    approx_quality,
    continued_fraction,
    major_arcs,
    mediant_family,
    parse_alpha_source,
    realize_alpha,
    squarefree_major_arcs,
)
from .expsum import (
    ComplexAcc,
    PhaseContext,
    WindowAverage,
    batch_rational,
    expsum_at_rational,
    expsum_full,
    geometric_kernel,
    pi_window,
    prefix_sups,
    window_l2_average,
)
from .verify import CheckReport

__version__ = "0.1.0"

__all__ = [
    "ArithTable", "FnKind", "factorize", "sieve_table",
    "active_backend",
    "CharacterTable", "build_characters", "gauss_sum", "psi_chi",
    "reconstruct_additive",
    "AlphaSource", "AlphaSpec", "ConvergentSeq", "MajorArcSet",
    "admissible_window", "approx_quality", "continued_fraction",
    "major_arcs", "mediant_family", "parse_alpha_source", "realize_alpha",
    "squarefree_major_arcs",
    "ComplexAcc", "PhaseContext", "WindowAverage", "batch_rational",
    "expsum_at_rational", "expsum_full", "geometric_kernel", "pi_window",
    "prefix_sups", "window_l2_average",
    "CheckReport",
    "__version__",
]

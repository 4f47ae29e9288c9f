"""Bohr equivalence toolkit for general Dirichlet series.

Exact rational bases of exponent sequences, phase congruence systems deciding
equivalence of truncations, dual-route value-set sampling, and
argument-principle zero counting, behind a library API and the `bohreq` CLI.
"""

from .basis import Basis, BohrMatrix, compute_basis, denominator_lcm, is_integral
from .core import (
    ExponentVector,
    SeriesSpec,
    SymbolTable,
    TailMajorant,
    numeric_value,
    tail_bound,
    validate_series,
)
from .equivalence import (
    CongruenceSystem,
    PhaseTargets,
    closure_demo,
    extract_phase_targets,
    integer_kernel,
    is_equivalent_truncated,
    solve_phase_system,
    twist,
)
from .evaluation import EvalPoint, GridBox, evaluate, shift_series, uniform_distance
from .scenarios import bohr_example, negate, ordinary_series, tau
from .valuesets import ValueCloud, hausdorff, kronecker_find_t
from .zeros import Rectangle, count_zeros, sigma_star

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "BohrMatrix",
    "CongruenceSystem",
    "EvalPoint",
    "ExponentVector",
    "GridBox",
    "PhaseTargets",
    "Rectangle",
    "SeriesSpec",
    "SymbolTable",
    "TailMajorant",
    "ValueCloud",
    "bohr_example",
    "closure_demo",
    "compute_basis",
    "count_zeros",
    "denominator_lcm",
    "evaluate",
    "extract_phase_targets",
    "hausdorff",
    "integer_kernel",
    "is_equivalent_truncated",
    "is_integral",
    "kronecker_find_t",
    "negate",
    "numeric_value",
    "ordinary_series",
    "shift_series",
    "sigma_star",
    "solve_phase_system",
    "tail_bound",
    "tau",
    "twist",
    "uniform_distance",
    "validate_series",
]

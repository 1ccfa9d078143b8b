"""Entanglement-assisted LOCC diagnostics for spin-chain ground states."""

from ._core import (
    AlphaGrid,
    Bracket,
    BracketTrace,
    ConversionVerdict,
    Direction,
    Error,
    ExcitedComparison,
    InterceptionTable,
    Pattern,
    PatternReport,
    ScalingFit,
    SchmidtVector,
    SweepPoint,
    SweepResult,
    classify_pattern,
    elocc_verdict,
    find_interceptions,
    gs_vs_excited,
    interception_table,
    locate_boundary,
    locc_convertible,
    lowest_states,
    renyi_entropy,
    round_up_tenth,
    scaling_fit,
    schmidt_from_state,
    sweep,
    table_boundary,
    tensor_product,
    verify_catalyst,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

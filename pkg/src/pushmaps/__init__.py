"""Point-pushing pseudo-Anosov braids, exact growth estimation and dilatation bounds."""

from .braid import BraidParseError, BraidWord, Generator, band_generator, compose, inverse, parse_braid, permutation, power
from .lamination import GrowthOptions, GrowthReport, LamCoord, apply_generator, apply_word, classify, estimate_dilatation, standard_curve
from .pointpush import LoopWord, PushResult, classify_loop, figure7_loop, parse_loop, push_braid

__all__ = [
    "BraidParseError", "BraidWord", "Generator", "band_generator", "compose", "inverse",
    "parse_braid", "permutation", "power",
    "GrowthOptions", "GrowthReport", "LamCoord", "apply_generator", "apply_word", "classify",
    "estimate_dilatation", "standard_curve",
    "LoopWord", "PushResult", "classify_loop", "figure7_loop", "parse_loop", "push_braid",
]

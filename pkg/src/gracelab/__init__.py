"""Exact tools for graceful labelings of functional graphs on Z_n."""

from gracelab.endograph import EndoFunction, compose, iterate, summarize
from gracelab.labeling import edge_labels, is_graceful, realizes_sequence, search_graceful
from gracelab.monoid import Permutation, conjugate, lex_rank, lex_unrank

__version__ = "0.1.0"

__all__ = [
    "EndoFunction",
    "Permutation",
    "compose",
    "conjugate",
    "edge_labels",
    "is_graceful",
    "iterate",
    "lex_rank",
    "lex_unrank",
    "realizes_sequence",
    "search_graceful",
    "summarize",
]

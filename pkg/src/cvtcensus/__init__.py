"""Desk-scale census toolkit for cubic vertex-transitive graphs."""

from .canon import CanonicalForm, canonical_form, canonicalize
from .census import (
    CensusStore,
    emit,
    extremal_tables,
    load_store,
    oracle_crosscheck,
    run_census,
)
from .graphs import Graph, graph6_decode, graph6_encode, ladder, truncation
from .groups import FiniteGroup, group_from_generators
from .mergesplit import CycleDecomposition, is_degenerate, merge, split, split_with_group
from .transitivity import ClassificationRecord, classify

__version__ = "0.1.0"

__all__ = [
    "CanonicalForm",
    "CensusStore",
    "ClassificationRecord",
    "CycleDecomposition",
    "FiniteGroup",
    "Graph",
    "canonical_form",
    "canonicalize",
    "classify",
    "emit",
    "extremal_tables",
    "graph6_decode",
    "graph6_encode",
    "group_from_generators",
    "is_degenerate",
    "ladder",
    "load_store",
    "merge",
    "oracle_crosscheck",
    "run_census",
    "split",
    "split_with_group",
    "truncation",
    "__version__",
]

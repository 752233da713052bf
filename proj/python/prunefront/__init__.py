"""Pruning-front toolkit for Lozi and Henon unstable manifolds.

Windows and folding patterns travel as text, kneading sets, trees and
verdicts as JSON strings; parse them with ``json.loads`` as needed.
"""

from ._core import (
    HenonEngine,
    LoziEngine,
    compare_folding,
    compare_kneading,
    folding_to_kneading,
    folding_to_tree,
    gplex,
    henon_apply,
    is_admissible,
    is_wu_admissible,
    kneading_to_folding,
    lozi_apply,
    plex,
    shift_window,
    tree_to_folding,
    tree_to_graphviz,
    tree_to_kneading,
)

__all__ = [
    "HenonEngine",
    "LoziEngine",
    "compare_folding",
    "compare_kneading",
    "folding_to_kneading",
    "folding_to_tree",
    "gplex",
    "henon_apply",
    "is_admissible",
    "is_wu_admissible",
    "kneading_to_folding",
    "lozi_apply",
    "plex",
    "shift_window",
    "tree_to_folding",
    "tree_to_graphviz",
    "tree_to_kneading",
]

"""Sublinear-space streaming estimators for distance to monotonicity and
insertion-deletion edit distance, with exact references for verification."""

from .exact import (
    brute_force_min_defect,
    exact_edit_distance_indel,
    exact_lcs_length,
    exact_lis_length,
    exact_min_defect,
    lcs_backtrack,
    lcs_prefix_rows,
)
from .lcs_anchor import (
    AnchorGrid,
    AnchorScores,
    build_grid,
    estimate_edit_distance_det,
    process_block,
    run_anchored_scan,
)
from .lcs_rand import (
    EditEstimate,
    FixedStringIndex,
    build_index,
    emit_pairs,
    estimate_edit_distance,
)
from .lis import DmEstimate, estimate_dm
from .poset import (
    ChainPath,
    PairPoint,
    WeightedSequence,
    defect_of,
    is_chain,
    natural_less,
    pair_dominance,
)
from .sketch import (
    ActiveRecord,
    MinDefectSketch,
    PointDefectSketch,
    SketchParams,
    retention_prob,
    space_cap,
    survival_prob,
)

__version__ = "0.1.0"

__all__ = [
    "ActiveRecord",
    "AnchorGrid",
    "AnchorScores",
    "ChainPath",
    "DmEstimate",
    "EditEstimate",
    "FixedStringIndex",
    "MinDefectSketch",
    "PairPoint",
    "PointDefectSketch",
    "SketchParams",
    "WeightedSequence",
    "brute_force_min_defect",
    "build_grid",
    "build_index",
    "defect_of",
    "emit_pairs",
    "estimate_dm",
    "estimate_edit_distance",
    "estimate_edit_distance_det",
    "exact_edit_distance_indel",
    "exact_lcs_length",
    "exact_lis_length",
    "exact_min_defect",
    "is_chain",
    "lcs_backtrack",
    "lcs_prefix_rows",
    "natural_less",
    "pair_dominance",
    "process_block",
    "retention_prob",
    "run_anchored_scan",
    "space_cap",
    "survival_prob",
]

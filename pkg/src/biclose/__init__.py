"""biclose: exhaustive mining of maximal homogeneous biclusters in
mixed-attribute data, with rule extraction and filtering.

A bicluster here is a submatrix whose values, column by column, stay within
a per-column tolerance (zero for nominal columns), skipping nothing that is
maximal and never reporting anything twice.  On labeled datasets the mined
biclusters convert to quantitative class rules that can be thinned down to a
compact high-relevance set.
"""

__version__ = "0.1.0"

from .datamodel import (
    AttributeKind,
    AttributeSchema,
    BicloseError,
    DataError,
    DatasetSchema,
    EnumParams,
    MixedMatrix,
    SchemaError,
    decode_interval,
    encode_dataset,
    load_dataset,
    load_schema,
)
from .enumerator import (
    Bicluster,
    SearchNode,
    abort_on_min_cols,
    close_intent,
    compute_check_rows,
    compute_new_extents,
    engine_name,
    enumerate_biclusters,
    is_canonical,
    is_row_maximal,
)
from .oracle import brute_force_enumerate
from .rules import (
    MetricBundle,
    Qcar,
    QuantItem,
    antecedent_rows,
    build_qcar,
    compute_metrics,
    filter_relevance,
    greedy_select,
    render_qcar,
    row_coverage,
    score_rules,
)

__all__ = [
    "AttributeKind",
    "AttributeSchema",
    "Bicluster",
    "BicloseError",
    "DataError",
    "DatasetSchema",
    "EnumParams",
    "MetricBundle",
    "MixedMatrix",
    "Qcar",
    "QuantItem",
    "SchemaError",
    "SearchNode",
    "abort_on_min_cols",
    "antecedent_rows",
    "brute_force_enumerate",
    "build_qcar",
    "close_intent",
    "compute_check_rows",
    "compute_metrics",
    "compute_new_extents",
    "decode_interval",
    "encode_dataset",
    "engine_name",
    "enumerate_biclusters",
    "filter_relevance",
    "greedy_select",
    "is_canonical",
    "is_row_maximal",
    "load_dataset",
    "load_schema",
    "render_qcar",
    "row_coverage",
    "score_rules",
]

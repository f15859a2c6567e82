"""Degree-completion participation analytics: standard and cohort shares,
intersectional opportunity gaps, and entropy-based evenness/distance
metrics over IPEDS-style completions data."""

from .analysis import (
    ComparisonRow,
    DistanceRow,
    GapRow,
    SeriesPoint,
    cohort_share,
    compare_institutions,
    evenness_series,
    js_distance_report,
    opportunity_gap,
    series,
    standard_share,
)
from .metrics import (
    MAX_JS_DISTANCE,
    equitability,
    jensen_shannon_divergence,
    js_distance,
    shannon_entropy,
)
from .scheme import (
    DEFAULT_SCHEME,
    CategoryScheme,
    Cell,
    CountTable,
    DegreeRecord,
    Distribution,
    RecordFilter,
    aggregate,
    marginalize,
    normalize,
    resolve_group,
)
from .store import ColumnMap, Dataset, IngestOptions, ingest_canonical, ingest_raw

__version__ = "0.1.0"

__all__ = [
    "CategoryScheme", "Cell", "CountTable", "DegreeRecord", "Distribution",
    "RecordFilter", "DEFAULT_SCHEME", "aggregate", "marginalize", "normalize",
    "resolve_group", "shannon_entropy", "equitability",
    "jensen_shannon_divergence", "js_distance", "MAX_JS_DISTANCE",
    "SeriesPoint", "GapRow", "ComparisonRow", "DistanceRow", "standard_share",
    "cohort_share", "series", "opportunity_gap", "evenness_series",
    "js_distance_report", "compare_institutions", "Dataset", "ColumnMap",
    "IngestOptions", "ingest_canonical", "ingest_raw",
]

"""Mine dependency maps from historical multivariate time-series.

The pipeline: load a table (:mod:`kmapper.dataset`), classify every
variable pair (:mod:`kmapper.relation`), assemble the dependency map
with hubs and inactive nodes (:mod:`kmapper.kmap`), optionally induce
fuzzy rules (:mod:`kmapper.fuzzy`), simulate what-if scenarios
(:mod:`kmapper.fcm`), and watch the map drift over sliding windows
(:mod:`kmapper.analysis`).
"""
from .analysis import (
    Alarm,
    MapFeatures,
    MapTimeline,
    TimelineWindow,
    detect_alarm,
    features_of,
    static_analysis,
    time_domain_analysis,
    timeline_json,
    timeline_text,
)
from .dataset import (
    MIN_WINDOW,
    Role,
    TimeSeriesTable,
    WindowSpec,
    load_roles,
    load_table,
    select_window,
    sliding_windows,
    to_csv,
)
from .errors import (
    ConstantSeries,
    DuplicateVariable,
    EmptyTable,
    KmapperError,
    LengthMismatch,
    MissingInput,
    NoCompleteRows,
    NonNumericCell,
    NoRuleFires,
    OutOfRange,
    RaggedRow,
    SpecExceedsTable,
    TooFewPoints,
    TooFewStates,
    TooFewVariables,
    UnknownVariable,
    VariableSetMismatch,
    WindowTooSmall,
)
from .fcm import (
    FcmModel,
    RunResult,
    RunVerdict,
    SquashMode,
    dhl_learn,
    dump_model,
    load_model,
    model_from_doc,
    parse_state,
    run,
    step,
    trajectory_csv,
)
from .fuzzy import (
    Connective,
    FuzzyPartition,
    FuzzyRule,
    FuzzyRuleBase,
    TriangularMF,
    build_partitions,
    induce_rules,
    infer,
    partition_from_range,
    rules_json,
    rules_text,
)
from .kmap import (
    KnowledgeMap,
    LinkSign,
    LinkStrength,
    MapLink,
    MapNode,
    NodeStatus,
    build_map,
    dsm_csv,
    export_dot,
    export_json,
    hub_threshold,
    identify_hubs,
    load_json,
    to_dsm,
)
from .relation import (
    PairRelation,
    RelationClass,
    RelationThresholds,
    ScatterPoint,
    classify_relation,
    default_bins,
    mutual_information,
    pearson,
    scatter_csv,
    scatter_points,
    scatter_svg,
    spearman,
)

__version__ = "0.1.0"

__all__ = [
    "Alarm",
    "Connective",
    "ConstantSeries",
    "DuplicateVariable",
    "EmptyTable",
    "FcmModel",
    "FuzzyPartition",
    "FuzzyRule",
    "FuzzyRuleBase",
    "KmapperError",
    "KnowledgeMap",
    "LengthMismatch",
    "LinkSign",
    "LinkStrength",
    "MIN_WINDOW",
    "MapFeatures",
    "MapLink",
    "MapNode",
    "MapTimeline",
    "MissingInput",
    "NoCompleteRows",
    "NoRuleFires",
    "NodeStatus",
    "NonNumericCell",
    "OutOfRange",
    "PairRelation",
    "RaggedRow",
    "RelationClass",
    "RelationThresholds",
    "Role",
    "RunResult",
    "RunVerdict",
    "ScatterPoint",
    "SpecExceedsTable",
    "SquashMode",
    "TimeSeriesTable",
    "TimelineWindow",
    "TooFewPoints",
    "TooFewStates",
    "TooFewVariables",
    "TriangularMF",
    "UnknownVariable",
    "VariableSetMismatch",
    "WindowSpec",
    "WindowTooSmall",
    "build_map",
    "build_partitions",
    "classify_relation",
    "default_bins",
    "detect_alarm",
    "dhl_learn",
    "dsm_csv",
    "dump_model",
    "export_dot",
    "export_json",
    "features_of",
    "hub_threshold",
    "identify_hubs",
    "induce_rules",
    "infer",
    "load_json",
    "load_model",
    "load_roles",
    "model_from_doc",
    "load_table",
    "mutual_information",
    "parse_state",
    "partition_from_range",
    "pearson",
    "run",
    "rules_json",
    "rules_text",
    "scatter_csv",
    "scatter_points",
    "scatter_svg",
    "select_window",
    "sliding_windows",
    "spearman",
    "static_analysis",
    "step",
    "time_domain_analysis",
    "timeline_json",
    "timeline_text",
    "to_csv",
    "to_dsm",
    "trajectory_csv",
]

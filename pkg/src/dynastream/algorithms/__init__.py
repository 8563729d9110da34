from .components import ComponentTracker, TrackerOutOfSync, count_components
from .forest import ForestError, SpanningForest
from .metrics import CSV_HEADER, TreeMetrics, metrics_of_trees, tree_diameter, tree_metrics

__all__ = [
    "CSV_HEADER",
    "ComponentTracker",
    "ForestError",
    "SpanningForest",
    "TrackerOutOfSync",
    "TreeMetrics",
    "count_components",
    "metrics_of_trees",
    "tree_diameter",
    "tree_metrics",
]

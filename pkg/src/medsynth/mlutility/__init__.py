"""Machine-learning utility of synthetic tables."""

from .encoding import TabularEncoder, encode_features, labels
from .metrics import accuracy, auc_roc, confusion, macro_f1
from .trees import DecisionTree, GradientBoostedTrees, RandomForest
from .utility import DEFAULT_SPECS, ClassifierSpec, UtilityReport, evaluate_model, tstr_trts

__all__ = [
    "TabularEncoder", "encode_features", "labels",
    "accuracy", "auc_roc", "confusion", "macro_f1",
    "DecisionTree", "GradientBoostedTrees", "RandomForest",
    "DEFAULT_SPECS", "ClassifierSpec", "UtilityReport", "evaluate_model", "tstr_trts",
]

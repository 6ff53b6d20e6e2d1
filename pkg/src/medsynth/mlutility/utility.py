"""Train-on-synthetic/test-on-real (and reverse) utility harness."""

from dataclasses import dataclass, field

import numpy as np

from ..exceptions import DegenerateLabelError
from .encoding import encode_features
from .metrics import accuracy, auc_roc, confusion, macro_f1
from .trees import DecisionTree, GradientBoostedTrees, RandomForest

KINDS = ("decision_tree", "random_forest", "boosted_trees")
DIRECTIONS = ("TSTR", "TRTS", "TRTR")


@dataclass(frozen=True)
class ClassifierSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown classifier {self.kind!r}; expected one of {KINDS}")

    def build(self, seed):
        if self.kind == "decision_tree":
            return DecisionTree(**{"max_depth": 5, **self.params})
        if self.kind == "random_forest":
            return RandomForest(**{"n_estimators": 50, **self.params, "random_state": seed})
        return GradientBoostedTrees(**{"max_rounds": 100, "patience": 10, "learning_rate": 0.1,
                                       "max_depth": 3, **self.params, "random_state": seed})


DEFAULT_SPECS = tuple(ClassifierSpec(k) for k in KINDS)


def evaluate_model(model, X_test, y_test):
    pred = model.predict(X_test)
    proba = model.predict_proba(X_test)
    pos = list(model.classes_).index(1) if 1 in model.classes_ else None
    scores = proba[:, pos] if pos is not None else np.zeros(len(y_test))
    return {
        "accuracy": accuracy(y_test, pred),
        "macro_f1": macro_f1(y_test, pred),
        "auc_roc": auc_roc(y_test, scores),
        "confusion": confusion(y_test, pred).tolist(),
    }


def _mean_or_none(values):
    values = [v for v in values if v is not None]
    return float(np.mean(values)) if values else None


def run_cell(train, test, spec, seeds, label_column=None):
    """Average ``spec`` over ``seeds``; the confusion matrix comes from the first seed."""
    X_tr, y_tr, X_te, y_te, enc = encode_features(train, test, label_column)
    runs, imps = [], []
    for seed in seeds:
        model = spec.build(seed).fit(X_tr, y_tr)
        runs.append(evaluate_model(model, X_te, y_te))
        imps.append(model.feature_importances_)
    importance = np.mean(imps, axis=0)
    ranked = sorted(zip(enc.feature_names_, importance), key=lambda t: (-t[1], t[0]))
    return {
        "accuracy": _mean_or_none([r["accuracy"] for r in runs]),
        "macro_f1": _mean_or_none([r["macro_f1"] for r in runs]),
        "auc_roc": _mean_or_none([r["auc_roc"] for r in runs]),
        "confusion": runs[0]["confusion"],
        "feature_importance": {name: float(v) for name, v in ranked},
        "n_train": int(y_tr.size),
        "n_test": int(y_te.size),
    }


@dataclass
class UtilityReport:
    cells: dict = field(default_factory=dict)   # direction -> classifier -> cell

    def cell(self, direction, kind):
        return self.cells[direction][kind]

    def to_dict(self):
        return self.cells


def tstr_trts(real, syn, specs=DEFAULT_SPECS, repeats=3, seed=0, label_column=None):
    """TSTR trains on all of ``syn`` and tests on all of ``real``; TRTS the reverse.

    TRTR (train and test on ``real``) is included as the in-sample reference.
    A cell whose training labels are degenerate is reported as unavailable.
    """
    seeds = [seed + r for r in range(repeats)]
    pairs = {"TSTR": (syn, real), "TRTS": (real, syn), "TRTR": (real, real)}
    report = UtilityReport({d: {} for d in DIRECTIONS})
    for direction in DIRECTIONS:
        train, test = pairs[direction]
        for spec in specs:
            try:
                if test.n_rows == 0:
                    raise ValueError("empty test table")
                cell = run_cell(train, test, spec, seeds, label_column)
            except (DegenerateLabelError, ValueError) as exc:
                cell = {"unavailable": str(exc)}
            report.cells[direction][spec.kind] = cell
    return report

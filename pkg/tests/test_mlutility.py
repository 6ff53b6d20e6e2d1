import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from medsynth.exceptions import DegenerateLabelError
from medsynth.mlutility import (ClassifierSpec, DecisionTree, GradientBoostedTrees, RandomForest,
                                TabularEncoder, accuracy, auc_roc, confusion, encode_features,
                                macro_f1, tstr_trts)
from medsynth.table import ColumnSchema, DatasetTable

SEP_SCHEMA = (ColumnSchema("x", "numeric"), ColumnSchema("noise", "numeric"),
              ColumnSchema("site", "categorical", categories=("A", "B")), ColumnSchema("y", "binary"))
FAST = (ClassifierSpec("decision_tree"), ClassifierSpec("random_forest", {"n_estimators": 8}),
        ClassifierSpec("boosted_trees", {"max_rounds": 15}))


def _separable(n=100, seed=0, flip=False):
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1, 1, n)
    y = (x >= 0).astype(float)
    if flip:
        y = 1 - y
    return DatasetTable(SEP_SCHEMA, {"x": x, "noise": rng.normal(size=n),
                                     "site": list(rng.choice(["A", "B"], n)), "y": y},
                        label_column="y")


# ---------------------------------------------------------------- encoding

def test_min_max_and_one_hot():
    schema = (ColumnSchema("v", "numeric"), ColumnSchema("c", "categorical"),
              ColumnSchema("y", "binary"))
    train = DatasetTable(schema, {"v": np.array([0.0, 5.0, 10.0]), "c": ["A", "B", "A"],
                                  "y": np.array([0.0, 1.0, 0.0])}, label_column="y")
    enc = TabularEncoder().fit(train)
    assert enc.feature_names_ == ["v", "c=A", "c=B"]
    np.testing.assert_array_equal(enc.transform(train), [[0, 1, 0], [0.5, 0, 1], [1, 1, 0]])
    test = DatasetTable(schema, {"v": np.array([20.0]), "c": ["C"], "y": np.array([1.0])})
    np.testing.assert_array_equal(enc.transform(test), [[2.0, 0, 0]])


def test_degenerate_training_labels():
    t = _separable()
    one_class = t.take(np.flatnonzero(t.column("y") == 1))
    with pytest.raises(DegenerateLabelError):
        encode_features(one_class, t)
    with pytest.raises(DegenerateLabelError):
        DecisionTree().fit(np.zeros((20, 1)), np.ones(20))


def test_too_few_rows():
    with pytest.raises(ValueError):
        DecisionTree().fit(np.arange(4.0)[:, None], [0, 1, 0, 1])


# ---------------------------------------------------------------- learners

def test_separable_needs_one_split():
    x = np.linspace(-1, 1, 100)[:, None]
    y = (x[:, 0] >= 0).astype(int)
    tree = DecisionTree().fit(x, y)
    assert accuracy(y, tree.predict(x)) == 1.0
    assert tree.tree_.depth == 1


def test_pure_labels_stop_growth():
    x = np.r_[np.zeros(10), np.ones(10)][:, None]
    tree = DecisionTree(max_depth=5).fit(x, np.r_[np.zeros(10), np.ones(10)].astype(int))
    assert tree.tree_.depth == 1


def test_split_tie_prefers_lowest_feature():
    x = np.linspace(-1, 1, 40)
    X = np.column_stack([x, x])
    tree = DecisionTree().fit(X, (x >= 0).astype(int))
    assert tree.feature_importances_.tolist() == [1.0, 0.0]


@pytest.mark.parametrize("cls", [RandomForest, GradientBoostedTrees])
def test_seeded_learners_are_deterministic(cls):
    t = _separable(200, seed=4)
    X, y, _, _, _ = encode_features(t, t)
    a = cls(random_state=7).fit(X, y).predict_proba(X)
    b = cls(random_state=7).fit(X, y).predict_proba(X)
    np.testing.assert_array_equal(a, b)


def test_forest_at_least_as_good_as_tree_on_separable():
    t = _separable(150, seed=2)
    X, y, _, _, _ = encode_features(t, t)
    tree = accuracy(y, DecisionTree().fit(X, y).predict(X))
    forest = accuracy(y, RandomForest(n_estimators=20).fit(X, y).predict(X))
    assert forest >= tree


def test_boosting_stops_early_and_trims():
    t = _separable(200, seed=3)
    X, y, _, _, _ = encode_features(t, t)
    gb = GradientBoostedTrees(max_rounds=100, patience=10).fit(X, y)
    assert gb.n_rounds_ <= len(gb.holdout_losses_) <= 100
    assert gb.n_rounds_ == int(np.argmin(gb.holdout_losses_)) + 1
    assert accuracy(y, gb.predict(X)) >= 0.95


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_tree_beats_majority_class(seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(30, 3))
    y = rng.integers(0, 2, 30)
    if np.unique(y).size < 2:
        return
    share = max(np.mean(y), 1 - np.mean(y))
    assert accuracy(y, DecisionTree().fit(X, y).predict(X)) >= share


# ---------------------------------------------------------------- metrics

def test_metric_examples():
    assert auc_roc([0, 0, 1, 1], [0.1, 0.4, 0.35, 0.8]) == 0.75
    assert auc_roc([0, 1, 0, 1], [0.3] * 4) == 0.5
    assert auc_roc([1, 1], [0.2, 0.9]) is None
    y = [0, 1, 1, 0]
    assert (accuracy(y, y), macro_f1(y, y), auc_roc(y, y)) == (1.0, 1.0, 1.0)
    assert confusion([0, 1, 1], [0, 0, 1]).tolist() == [[1, 0], [1, 1]]


def test_macro_f1_skips_absent_class():
    assert macro_f1([1, 1], [1, 1]) == 1.0
    assert macro_f1([0, 1], [0, 0]) == pytest.approx((2 / 3 + 0) / 2)


@settings(max_examples=100)
@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 6)), min_size=2, max_size=50))
def test_auc_matches_pair_counting(rows):
    y = [r[0] for r in rows]
    s = [r[1] / 6 for r in rows]
    got = auc_roc(y, s)
    if len(set(y)) < 2:
        assert got is None
    else:
        assert abs(got - oracles.auc_by_pairs(y, s)) <= 1e-12


# ---------------------------------------------------------------- harness

def test_copy_gives_tstr_equal_trtr():
    real = _separable(120, seed=5)
    rep = tstr_trts(real, real.take(range(real.n_rows)), FAST, repeats=2)
    for spec in FAST:
        assert rep.cell("TSTR", spec.kind) == rep.cell("TRTR", spec.kind)
        cm = np.array(rep.cell("TSTR", spec.kind)["confusion"])
        assert cm.sum() == real.n_rows


def test_flipped_labels_invert_accuracy():
    real = _separable(120, seed=5)
    base = tstr_trts(real, real, FAST[:1], repeats=1).cell("TRTR", "decision_tree")["accuracy"]
    flipped = tstr_trts(real, _separable(120, seed=5, flip=True), FAST[:1], repeats=1)
    assert flipped.cell("TSTR", "decision_tree")["accuracy"] == pytest.approx(1 - base, abs=0.02)


def test_single_class_synthetic_is_unavailable_one_way():
    real = _separable(120, seed=6)
    syn = real.take(np.flatnonzero(real.column("y") == 1))
    rep = tstr_trts(real, syn, FAST[:1], repeats=1)
    assert "unavailable" in rep.cell("TSTR", "decision_tree")
    trts = rep.cell("TRTS", "decision_tree")
    assert trts["accuracy"] is not None and trts["auc_roc"] is None


def test_fixed_seeds_repeat_exactly():
    real, syn = _separable(100, seed=1), _separable(100, seed=2)
    a = tstr_trts(real, syn, FAST, repeats=3, seed=4).to_dict()
    assert a == tstr_trts(real, syn, FAST, repeats=3, seed=4).to_dict()


def test_cell_metrics_in_unit_interval():
    rep = tstr_trts(_separable(100, seed=1), _separable(80, seed=2), FAST, repeats=1)
    for direction, cells in rep.to_dict().items():
        for kind, cell in cells.items():
            for key in ("accuracy", "macro_f1", "auc_roc"):
                assert 0 <= cell[key] <= 1, (direction, kind, key)
            assert abs(sum(cell["feature_importance"].values()) - 1) < 1e-9


def test_unknown_classifier_kind():
    with pytest.raises(ValueError):
        ClassifierSpec("svm")

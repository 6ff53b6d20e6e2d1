"""Greedy binary trees and the two ensembles built from them.

Splits are searched exhaustively over midpoints between consecutive
distinct feature values.  Among equal gains the lowest feature index wins,
then the lowest threshold, so training is deterministic.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ..exceptions import DegenerateLabelError

GAIN_TOL = 1e-12
MIN_TRAIN_ROWS = 10


def _gini_gains(y_sorted, parent):
    """Impurity decrease for every cut position of a node sorted on each feature.

    ``y_sorted`` has shape ``(n, m, K)``: one-hot labels ordered by each of
    ``m`` features.  Returns gains of shape ``(n - 1, m)``.
    """
    n = y_sorted.shape[0]
    left = np.cumsum(y_sorted, axis=0)[:-1]
    right = parent - left
    nl = np.arange(1, n)[:, None]
    nr = n - nl
    gini_l = 1.0 - np.sum(left ** 2, axis=2) / nl ** 2
    gini_r = 1.0 - np.sum(right ** 2, axis=2) / nr ** 2
    parent_gini = 1.0 - np.sum((parent / n) ** 2)
    return parent_gini - (nl * gini_l + nr * gini_r) / n


def _sse_gains(g_sorted, total):
    """Reduction in squared error (divided by node size) for every cut position."""
    n = g_sorted.shape[0]
    left = np.cumsum(g_sorted, axis=0)[:-1]
    right = total - left
    nl = np.arange(1, n)[:, None]
    return (left ** 2 / nl + right ** 2 / (n - nl) - total ** 2 / n) / n


def best_split(X, target, features, criterion):
    """``(feature, threshold, gain)`` of the best cut, or None when nothing helps.

    Gains within ``GAIN_TOL`` of the maximum count as ties, resolved toward
    the lowest feature index and then the lowest threshold.
    """
    n = X.shape[0]
    features = np.asarray(list(features), dtype=int)
    if n < 2 or features.size == 0:
        return None
    sub = X[:, features]
    order = np.argsort(sub, axis=0, kind="stable")
    xs = np.take_along_axis(sub, order, axis=0)
    distinct = xs[:-1] < xs[1:]
    if not distinct.any():
        return None
    if criterion == "gini":
        gains = _gini_gains(target[order], target.sum(axis=0))
    else:
        gains = _sse_gains(target[order], target.sum())
    gains = np.where(distinct, gains, -np.inf)
    top = gains.max()
    if not top > GAIN_TOL:
        return None
    # Feature-major scan: first feature, then first position, within tolerance of the max.
    pos, col = np.nonzero(gains >= top - GAIN_TOL)
    pick = np.lexsort((pos, features[col]))[0]
    i, c = pos[pick], col[pick]
    return int(features[c]), float((xs[i, c] + xs[i + 1, c]) / 2.0), float(gains[i, c])


class _Tree:
    """Flat node arrays: children are -1 for leaves."""

    def __init__(self):
        self.feature, self.threshold, self.left, self.right, self.value = [], [], [], [], []

    def add(self, value):
        for arr, v in ((self.feature, -1), (self.threshold, 0.0), (self.left, -1), (self.right, -1)):
            arr.append(v)
        self.value.append(value)
        return len(self.value) - 1

    def finalize(self):
        self.feature = np.array(self.feature)
        self.threshold = np.array(self.threshold)
        self.left = np.array(self.left)
        self.right = np.array(self.right)
        self.value = np.array(self.value)
        return self

    def apply(self, X):
        node = np.zeros(X.shape[0], dtype=int)
        active = self.left[node] >= 0
        while active.any():
            rows = np.flatnonzero(active)
            cur = node[rows]
            go_left = X[rows, self.feature[cur]] <= self.threshold[cur]
            node[rows] = np.where(go_left, self.left[cur], self.right[cur])
            active = self.left[node] >= 0
        return node

    @property
    def depth(self):
        def d(i):
            return 0 if self.left[i] < 0 else 1 + max(d(self.left[i]), d(self.right[i]))
        return d(0)


def grow_tree(X, target, criterion, leaf_value, max_depth=None, max_features=None,
              rng=None, importances=None):
    """Grow one tree depth-first.

    ``target`` is a one-hot class matrix for ``"gini"`` or a gradient vector
    for ``"sse"``; ``leaf_value(rows)`` gives the stored leaf payload.
    ``importances`` (if given) accumulates ``node_share * gain`` per feature.
    """
    tree = _Tree()
    n_total, p = X.shape
    stack = [(np.arange(n_total), 0, None, None)]
    while stack:
        rows, depth, parent, side = stack.pop()
        value = leaf_value(rows)
        node = tree.add(value)
        if parent is not None:
            (tree.left if side == "left" else tree.right)[parent] = node
        if max_depth is not None and depth >= max_depth:
            continue
        if criterion == "gini" and np.max(value) == 1.0:
            continue  # pure node: no split can gain
        if max_features is not None and max_features < p:
            features = np.sort(rng.choice(p, size=max_features, replace=False))
        else:
            features = range(p)
        split = best_split(X[rows], target[rows], features, criterion)
        if split is None:
            continue
        j, thr, gain = split
        tree.feature[node] = j
        tree.threshold[node] = thr
        if importances is not None:
            importances[j] += rows.size / n_total * gain
        mask = X[rows, j] <= thr
        # Push right first so the left subtree is numbered first.
        stack.append((rows[~mask], depth + 1, node, "right"))
        stack.append((rows[mask], depth + 1, node, "left"))
    return tree.finalize()


def _check_training(X, y):
    X = np.asarray(X, dtype=float)
    y = np.asarray(y).astype(int).ravel()
    if X.ndim != 2 or X.shape[0] != y.size:
        raise ValueError("X must be 2-D with one row per label")
    if y.size < MIN_TRAIN_ROWS:
        raise ValueError(f"need at least {MIN_TRAIN_ROWS} training rows, got {y.size}")
    if np.unique(y).size < 2:
        raise DegenerateLabelError("training labels contain a single class")
    return X, y


class _ClassifierBase(BaseEstimator, ClassifierMixin):
    def predict(self, X):
        proba = self.predict_proba(X)
        return self.classes_[np.argmax(proba, axis=1)]

    def _normalize_importances(self, imp):
        total = imp.sum()
        return imp / total if total > 0 else imp


class DecisionTree(_ClassifierBase):
    """CART classifier with Gini impurity."""

    def __init__(self, max_depth=5, max_features=None, random_state=None):
        self.max_depth = max_depth
        self.max_features = max_features
        self.random_state = random_state

    def fit(self, X, y):
        X, y = _check_training(X, y)
        self.classes_, codes = np.unique(y, return_inverse=True)
        return self._fit_codes(X, codes, np.random.default_rng(self.random_state))

    def _fit_codes(self, X, codes, rng):
        onehot = np.eye(self.classes_.size)[codes]
        imp = np.zeros(X.shape[1])
        self.tree_ = grow_tree(X, onehot, "gini", lambda r: onehot[r].mean(axis=0),
                               self.max_depth, self.max_features, rng, imp)
        self.raw_importances_ = imp
        self.feature_importances_ = self._normalize_importances(imp)
        self.n_features_in_ = X.shape[1]
        return self

    def predict_proba(self, X):
        check_is_fitted(self, "tree_")
        X = np.asarray(X, dtype=float)
        return self.tree_.value[self.tree_.apply(X)]


class RandomForest(_ClassifierBase):
    """Bagged Gini trees with ``ceil(sqrt(p))`` candidate features per split.

    Each tree gets its own generator spawned from ``random_state``, so
    predictions do not depend on the order trees are built in.
    """

    def __init__(self, n_estimators=50, max_depth=None, random_state=0):
        self.n_estimators = n_estimators
        self.max_depth = max_depth
        self.random_state = random_state

    def fit(self, X, y):
        X, y = _check_training(X, y)
        self.classes_, codes = np.unique(y, return_inverse=True)
        n, p = X.shape
        m = int(np.ceil(np.sqrt(p)))
        self.estimators_ = []
        imp = np.zeros(p)
        for child in np.random.SeedSequence(self.random_state).spawn(self.n_estimators):
            rng = np.random.default_rng(child)
            rows = rng.integers(0, n, size=n)
            tree = DecisionTree(max_depth=self.max_depth, max_features=m)
            tree.classes_ = self.classes_
            # A bootstrap sample may miss a class; the one-hot width stays fixed.
            tree._fit_codes(X[rows], codes[rows], rng)
            imp += tree.raw_importances_
            self.estimators_.append(tree)
        self.feature_importances_ = self._normalize_importances(imp / self.n_estimators)
        self.n_features_in_ = p
        return self

    def predict_proba(self, X):
        check_is_fitted(self, "estimators_")
        X = np.asarray(X, dtype=float)
        return np.mean([t.predict_proba(X) for t in self.estimators_], axis=0)


def _sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def _log_loss(y, p):
    p = np.clip(p, 1e-15, 1 - 1e-15)
    return float(-np.mean(y * np.log(p) + (1 - y) * np.log(1 - p)))


class GradientBoostedTrees(_ClassifierBase):
    """Binary logistic-loss boosting over small regression trees.

    Trees split on squared error of the negative gradient and store Newton
    leaf values ``sum(g) / sum(h)``.  A seeded 20% slice of the training
    rows is held out; boosting stops once its log-loss has not improved for
    ``patience`` rounds, and the ensemble is cut back to the best round.
    """

    def __init__(self, max_rounds=100, learning_rate=0.1, max_depth=3, patience=10,
                 holdout=0.2, random_state=0):
        self.max_rounds = max_rounds
        self.learning_rate = learning_rate
        self.max_depth = max_depth
        self.patience = patience
        self.holdout = holdout
        self.random_state = random_state

    def fit(self, X, y):
        X, y = _check_training(X, y)
        self.classes_, codes = np.unique(y, return_inverse=True)
        if self.classes_.size != 2:
            raise ValueError("gradient boosting here is binary only")
        rng = np.random.default_rng(self.random_state)
        n = y.size
        perm = rng.permutation(n)
        n_hold = int(round(self.holdout * n))
        hold, train = np.sort(perm[:n_hold]), np.sort(perm[n_hold:])
        if n_hold == 0 or np.unique(codes[train]).size < 2:
            hold, train = np.array([], dtype=int), np.arange(n)
        Xt, yt = X[train], codes[train].astype(float)
        base = np.clip(yt.mean(), 1e-6, 1 - 1e-6)
        self.init_ = float(np.log(base / (1 - base)))
        ft = np.full(yt.size, self.init_)
        fh = np.full(hold.size, self.init_)
        trees, losses = [], []
        imp_rounds = []
        best, since_best = np.inf, 0
        for _ in range(self.max_rounds):
            p = _sigmoid(ft)
            grad = yt - p
            hess = p * (1 - p)
            imp = np.zeros(X.shape[1])
            tree = grow_tree(Xt, grad, "sse",
                             lambda r: float(grad[r].sum() / max(hess[r].sum(), 1e-12)),
                             self.max_depth, importances=imp)
            trees.append(tree)
            imp_rounds.append(imp)
            ft = ft + self.learning_rate * tree.value[tree.apply(Xt)]
            if hold.size:
                fh = fh + self.learning_rate * tree.value[tree.apply(X[hold])]
                loss = _log_loss(codes[hold], _sigmoid(fh))
                losses.append(loss)
                if loss < best - 1e-12:
                    best, since_best = loss, 0
                else:
                    since_best += 1
                    if since_best >= self.patience:
                        break
        n_keep = int(np.argmin(losses)) + 1 if losses else len(trees)
        self.estimators_ = trees[:n_keep]
        self.holdout_losses_ = losses
        self.n_rounds_ = n_keep
        imp = np.sum(imp_rounds[:n_keep], axis=0)
        self.feature_importances_ = self._normalize_importances(imp)
        self.n_features_in_ = X.shape[1]
        return self

    def decision_function(self, X):
        check_is_fitted(self, "estimators_")
        X = np.asarray(X, dtype=float)
        f = np.full(X.shape[0], self.init_)
        for tree in self.estimators_:
            f += self.learning_rate * tree.value[tree.apply(X)]
        return f

    def predict_proba(self, X):
        p1 = _sigmoid(self.decision_function(X))
        return np.column_stack([1 - p1, p1])

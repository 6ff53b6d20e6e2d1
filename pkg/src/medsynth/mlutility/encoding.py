"""Design-matrix encoding fitted on the training table only."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ..exceptions import DegenerateLabelError


class TabularEncoder(BaseEstimator, TransformerMixin):
    """Min-max scale numeric and binary columns, one-hot encode categoricals.

    Scaling bounds and vocabularies come from the table passed to ``fit``;
    at transform time unseen categories map to an all-zero block and
    missing numerics take the training mean.  The label column is excluded.
    """

    def __init__(self, label_column=None):
        self.label_column = label_column

    def fit(self, table, y=None):
        label = self.label_column or table.label_column
        self.label_ = label
        self.columns_ = [c for c in table.schema if c.name != label]
        self.bounds_, self.fill_, self.vocab_ = {}, {}, {}
        names = []
        for col in self.columns_:
            values = table.column(col.name)
            if col.kind == "categorical":
                vocab = sorted({v for v in values if v is not None})
                self.vocab_[col.name] = vocab
                names.extend(f"{col.name}={v}" for v in vocab)
                continue
            ok = values[~np.isnan(values)]
            lo, hi = (float(ok.min()), float(ok.max())) if ok.size else (0.0, 0.0)
            self.bounds_[col.name] = (lo, hi)
            self.fill_[col.name] = float(ok.mean()) if ok.size else 0.0
            names.append(col.name)
        self.feature_names_ = names
        return self

    def transform(self, table):
        check_is_fitted(self, "feature_names_")
        blocks = []
        for col in self.columns_:
            values = table.column(col.name)
            if col.kind == "categorical":
                pos = {v: i for i, v in enumerate(self.vocab_[col.name])}
                block = np.zeros((table.n_rows, len(pos)))
                for r, v in enumerate(values):
                    if v in pos:
                        block[r, pos[v]] = 1.0
                blocks.append(block)
                continue
            lo, hi = self.bounds_[col.name]
            filled = np.where(np.isnan(values), self.fill_[col.name], values)
            scaled = (filled - lo) / (hi - lo) if hi > lo else np.zeros_like(filled)
            blocks.append(scaled[:, None])
        return np.hstack(blocks) if blocks else np.zeros((table.n_rows, 0))


def labels(table, label_column=None):
    """Label vector as ints; rows with a missing label raise."""
    name = label_column or table.label_column
    if name is None:
        raise ValueError("table has no label column")
    y = table.column(name)
    if np.isnan(y).any():
        raise ValueError(f"label column {name!r} has missing values")
    return y.astype(int)


def encode_features(train, test, label_column=None):
    """``(X_train, y_train, X_test, y_test, encoder)`` with the encoder fitted on ``train``."""
    y_train = labels(train, label_column)
    if np.unique(y_train).size < 2:
        raise DegenerateLabelError("training labels contain a single class")
    enc = TabularEncoder(label_column).fit(train)
    return enc.transform(train), y_train, enc.transform(test), labels(test, label_column), enc

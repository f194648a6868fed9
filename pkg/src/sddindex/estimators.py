"""scikit-learn compatible wrappers.

``IndexFeaturizer`` turns a collection of graphs into a feature matrix of
index values, so it can sit in a Pipeline ahead of any regressor.
``CollapseCurve`` fits the size-free curve of <SDD>/n against mean degree
from sweep rows and predicts it for other graph sizes.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_alphas, check_graphs
from .ensembles import DEFAULT_ALPHAS, SweepRow
from .indices import IndexKind, compute, sdd_values


class IndexFeaturizer(TransformerMixin, BaseEstimator):
    """One column per exponent of the chosen degree-based index.

    Parameters
    ----------
    index : str
        Any :class:`~sddindex.indices.IndexKind` value, case-insensitive.
    alphas : sequence of float
        Exponents, one output column each. Ignored for ISI and LOG_NK_STAR,
        which yield a single column.
    normalize : {None, "n", "m"}
        Divide each value by the graph order or edge count.
    """

    def __init__(self, index="sdd", alphas=DEFAULT_ALPHAS, normalize=None):
        self.index = index
        self.alphas = alphas
        self.normalize = normalize

    def fit(self, X, y=None):
        check_graphs(X)
        self.kind_ = IndexKind(str(self.index).upper())
        if self.normalize not in (None, "n", "m"):
            raise ValueError(f"normalize must be None, 'n' or 'm', got {self.normalize!r}")
        if self.kind_ in (IndexKind.ISI, IndexKind.LOG_NK_STAR):
            self.alphas_ = (0.0,)
        else:
            self.alphas_ = check_alphas(self.alphas)
        self.n_features_out_ = len(self.alphas_)
        return self

    def transform(self, X):
        check_is_fitted(self, "kind_")
        graphs = check_graphs(X)
        out = np.empty((len(graphs), self.n_features_out_))
        for i, g in enumerate(graphs):
            if self.kind_ is IndexKind.SDD:
                out[i] = sdd_values(g, self.alphas_)
            else:
                out[i] = [compute(g, self.kind_, a).value for a in self.alphas_]
            if self.normalize == "n" and g.n:
                out[i] /= g.n
            elif self.normalize == "m" and g.m:
                out[i] /= g.m
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "kind_")
        name = self.kind_.value.lower()
        if self.kind_ in (IndexKind.ISI, IndexKind.LOG_NK_STAR):
            return np.array([name], dtype=object)
        return np.array([f"{name}_{a:g}" for a in self.alphas_], dtype=object)


class CollapseCurve(RegressorMixin, BaseEstimator):
    """Interpolated <SDD>/n as a function of (mean degree, alpha).

    ``X`` has two columns, mean degree and alpha; ``y`` is <SDD>/n. The ratio
    ``y / mean_degree``, which stays close to 1, is interpolated piecewise
    linearly in (log) mean degree and clamped outside the fitted range.
    """

    def __init__(self, log_degree=True):
        self.log_degree = log_degree

    def _x(self, d):
        return np.log(d) if self.log_degree else d

    def fit(self, X, y):
        X = check_array(X, ensure_min_features=2)
        y = np.asarray(y, dtype=float)
        if X.shape[1] != 2 or len(y) != len(X):
            raise ValueError("X must be (n_samples, 2) = (mean_degree, alpha) matching y")
        if (X[:, 0] <= 0).any():
            raise ValueError("mean degree must be positive")
        self.curves_ = {}
        for a in np.unique(X[:, 1]):
            sel = X[:, 1] == a
            order = np.argsort(X[sel, 0])
            d = X[sel, 0][order]
            self.curves_[float(a)] = (self._x(d), y[sel][order] / d)
        self.n_features_in_ = 2
        return self

    def predict(self, X):
        check_is_fitted(self, "curves_")
        X = check_array(X)
        out = np.empty(len(X))
        for i, (d, a) in enumerate(X):
            try:
                xs, ys = self.curves_[float(a)]
            except KeyError:
                raise ValueError(f"alpha={a} was not seen during fit") from None
            out[i] = d * np.interp(self._x(d), xs, ys)
        return out

    @staticmethod
    def rows_to_xy(rows):
        rows = [r.as_dict() if isinstance(r, SweepRow) else r for r in rows]
        X = np.array([[float(r["mean_degree"]), float(r["alpha"])] for r in rows])
        y = np.array([float(r["mean_sdd_over_n"]) for r in rows])
        return X, y

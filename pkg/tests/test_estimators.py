import networkx as nx
import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.linear_model import LinearRegression
from sklearn.pipeline import make_pipeline

from sddindex import graph
from sddindex.ensembles import ModelSpec, sweep
from sddindex.estimators import CollapseCurve, IndexFeaturizer


@pytest.fixture
def graphs():
    return [graph.path_graph(3), graph.complete_graph(4), graph.star_graph(3)]


def test_featurizer_values(graphs):
    X = IndexFeaturizer(alphas=(0, 1)).fit_transform(graphs)
    assert X.shape == (3, 2)
    np.testing.assert_allclose(X, [[4, 5], [12, 12], [6, 10]], rtol=1e-12)


def test_featurizer_params_and_clone():
    f = IndexFeaturizer(index="m2", alphas=(1,), normalize="m")
    assert f.get_params() == {"index": "m2", "alphas": (1,), "normalize": "m"}
    g = clone(f).set_params(normalize=None)
    assert g.normalize is None and f.normalize == "m"


def test_featurizer_single_column_indices(graphs):
    f = IndexFeaturizer(index="isi").fit(graphs)
    assert f.transform(graphs).shape == (3, 1)
    assert list(f.get_feature_names_out()) == ["isi"]


def test_featurizer_feature_names(graphs):
    f = IndexFeaturizer(alphas=(0.5, 2)).fit(graphs)
    assert list(f.get_feature_names_out()) == ["sdd_0.5", "sdd_2"]


def test_featurizer_normalize(graphs):
    X = IndexFeaturizer(alphas=(0,), normalize="n").fit_transform(graphs)
    np.testing.assert_allclose(X[:, 0], [4 / 3, 3, 6 / 4])


def test_featurizer_accepts_networkx_and_pairs():
    X = IndexFeaturizer(alphas=(1,)).fit_transform([nx.path_graph(3), [(0, 1), (1, 2)]])
    np.testing.assert_allclose(X[:, 0], [5, 5])


def test_featurizer_validation(graphs):
    with pytest.raises(NotFittedError):
        IndexFeaturizer().transform(graphs)
    with pytest.raises(ValueError):
        IndexFeaturizer(normalize="x").fit(graphs)
    with pytest.raises(ValueError):
        IndexFeaturizer(alphas=()).fit(graphs)
    with pytest.raises(TypeError):
        IndexFeaturizer().fit(graph.path_graph(3))


def test_featurizer_in_pipeline(graphs):
    y = np.array([1.0, 2.0, 3.0])
    pipe = make_pipeline(IndexFeaturizer(alphas=(1,)), LinearRegression()).fit(graphs, y)
    assert pipe.predict(graphs).shape == (3,)


def test_collapse_curve_fit_predict_across_sizes():
    small = sweep(ModelSpec.er(64, 0.0), [p / 63 for p in (4, 8, 16, 32)], (0.5, 1.0), 400, 3)
    big = sweep(ModelSpec.er(128, 0.0), [10 / 127, 20 / 127], (0.5, 1.0), 400, 4)
    X, y = CollapseCurve.rows_to_xy(small)
    curve = CollapseCurve().fit(X, y)
    Xb, yb = CollapseCurve.rows_to_xy(big)
    rel = np.abs(curve.predict(Xb) - yb) / yb
    assert rel.max() < 0.02
    assert curve.score(Xb, yb) > 0.99


def test_collapse_curve_unknown_alpha():
    curve = CollapseCurve().fit([[1.0, 0.0], [2.0, 0.0]], [1.0, 2.0])
    with pytest.raises(ValueError):
        curve.predict([[1.5, 1.0]])
    assert curve.predict([[1.5, 0.0]])[0] == pytest.approx(1.5)
    curve = CollapseCurve().fit([[1.0, 0.0], [4.0, 0.0]], [1.0, 8.0])
    assert curve.predict([[2.0, 0.0]])[0] == pytest.approx(2 * 1.5)

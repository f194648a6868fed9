import io
import math

import numpy as np
import pytest

from sddindex import ensembles
from sddindex.ensembles import (
    CSV_FIELDS,
    EnsembleSpec,
    ModelSpec,
    PredictionKind,
    collapse,
    collapse_spread,
    ensemble_average,
    predict,
    replica_stream,
    run_replicas,
    sample_br,
    sample_er,
    sweep,
)
from sddindex.graph import connected_components, is_regular
from sddindex.indices import sdd_alpha


def _mean_se(xs):
    xs = np.asarray(xs, dtype=float)
    return xs.mean(), xs.std(ddof=1) / math.sqrt(len(xs))


@pytest.mark.parametrize("n", [2, 5, 40])
def test_er_extreme_probabilities(n):
    rng = replica_stream(1, 0)
    assert sample_er(n, 0.0, rng).m == 0
    g = sample_er(n, 1.0, rng)
    assert g.m == n * (n - 1) // 2 and is_regular(g)


@pytest.mark.parametrize("p", [0.1, 0.5])
def test_er_mean_edge_count(p):
    # Binomial(C(100,2), p) mean
    ms = [sample_er(100, p, replica_stream(3, r)).m for r in range(2000)]
    mean, se = _mean_se(ms)
    assert abs(mean - 4950 * p) <= 3 * se


def test_br_mean_edge_count():
    ms = [sample_br(50, 50, 0.2, replica_stream(4, r)).m for r in range(2000)]
    mean, se = _mean_se(ms)
    assert abs(mean - 500) <= 3 * se


def test_br_extremes_and_bipartiteness():
    rng = replica_stream(5, 0)
    assert sample_br(3, 4, 0.0, rng).m == 0
    full = sample_br(3, 4, 1.0, rng)
    assert full.m == 12 and full.degrees.tolist() == [4, 4, 4, 3, 3, 3, 3]
    for r in range(50):
        g = sample_br(7, 9, 0.4, replica_stream(5, r))
        side = g.edges[:, 0] < 7
        assert side.all() and (g.edges[:, 1] >= 7).all()


def test_er_pairs_are_simple_and_in_range():
    for p in (0.05, 0.25, 0.7):
        g = sample_er(60, p, replica_stream(8, 1))
        assert (g.edges[:, 0] < g.edges[:, 1]).all()
        assert len({tuple(e) for e in g.edges.tolist()}) == g.m
        assert g.edges.max() < 60


def test_sparse_and_dense_paths_agree_in_distribution():
    # the threshold switches sampling strategy; both must be Bernoulli(p)
    for p in (ensembles.DENSE_THRESHOLD - 0.01, ensembles.DENSE_THRESHOLD + 0.01):
        ms = [sample_er(30, p, replica_stream(9, r)).m for r in range(3000)]
        mean, se = _mean_se(ms)
        assert abs(mean - 435 * p) <= 3 * se


def test_pair_inclusion_frequencies_uniform():
    counts = np.zeros((12, 12))
    R = 4000
    for r in range(R):
        for u, v in sample_er(12, 0.1, replica_stream(10, r)).edges:
            counts[u, v] += 1
    freq = counts[np.triu_indices(12, 1)] / R
    se = math.sqrt(0.1 * 0.9 / R)
    assert np.abs(freq - 0.1).max() < 5 * se


def test_invalid_parameters():
    rng = replica_stream(0, 0)
    with pytest.raises(ValueError):
        sample_er(1, 0.5, rng)
    with pytest.raises(ValueError):
        sample_er(10, 1.5, rng)
    with pytest.raises(ValueError):
        sample_br(0, 3, 0.5, rng)
    with pytest.raises(ValueError):
        ModelSpec.er(10, -0.1)
    with pytest.raises(ValueError):
        EnsembleSpec(ModelSpec.er(10, 0.1), 0, 1)
    with pytest.raises(ValueError):
        EnsembleSpec(ModelSpec.er(10, 0.1), 5, 1, (-1.0,))


def test_ensemble_sdd0_matches_er_law():
    rows = ensemble_average(EnsembleSpec(ModelSpec.er(100, 0.1), 2000, 11, (0.0,)))
    (row,) = rows
    assert abs(row.mean_sdd - 990) <= 3 * row.stderr_sdd
    assert row.mean_sdd_over_n == row.mean_sdd / 100


def test_ensemble_sdd0_matches_br_law():
    (row,) = ensemble_average(EnsembleSpec(ModelSpec.bipartite(50, 50, 0.2), 2000, 12, (0.0,)))
    assert abs(row.mean_sdd - 1000) <= 3 * row.stderr_sdd
    assert row.n == 100


@pytest.mark.parametrize(
    "model, sdd",
    [
        (ModelSpec.er(9, 1.0), lambda a: 9 * 8),
        (ModelSpec.bipartite(6, 6, 1.0), lambda a: 2 * 36),
        (ModelSpec.bipartite(2, 5, 1.0), lambda a: 10 * ((2 / 5) ** a + (5 / 2) ** a)),
    ],
)
def test_complete_models_are_deterministic(model, sdd):
    rows = ensemble_average(EnsembleSpec(model, 20, 3, (0.0, 1.0, 2.5)))
    for row in rows:
        assert row.mean_sdd == pytest.approx(sdd(row.alpha), rel=1e-12)
        assert row.stderr_sdd == 0.0


def test_sdd0_estimator_is_twice_mean_edges():
    spec = EnsembleSpec(ModelSpec.er(40, 0.2), 300, 5, (0.0, 1.0))
    data = run_replicas(spec)
    assert (data.sdd[:, 0] == 2 * data.edges).all()
    row = ensemble_average(spec)[0]
    assert row.mean_sdd == math.fsum(2.0 * data.edges) / 300
    assert row.mean_sdd_over_n == row.mean_degree


def test_per_replica_monotone_in_alpha():
    data = run_replicas(EnsembleSpec(ModelSpec.er(50, 0.08), 500, 6, (0.5, 1.0, 2.0, 4.0)))
    assert (np.diff(data.sdd, axis=1) >= 0).all()


def test_replica_values_match_graph_path():
    spec = EnsembleSpec(ModelSpec.er(30, 0.15), 5, 99, (1.5,))
    data = run_replicas(spec)
    for r in range(5):
        g = sample_er(30, 0.15, replica_stream(99, r))
        assert data.sdd[r, 0] == sdd_alpha(g, 1.5).value


def test_reproducible_across_workers():
    spec = EnsembleSpec(ModelSpec.er(60, 0.1), 64, 2021, (0.0, 1.0, 3.0))
    serial = ensemble_average(spec, workers=1)
    assert serial == ensemble_average(spec, workers=1)
    assert serial == ensemble_average(spec, workers=3)


def test_stream_independent_of_evaluation_order():
    a = [replica_stream(7, r).random() for r in range(10)]
    b = [replica_stream(7, r).random() for r in reversed(range(10))][::-1]
    assert a == b
    assert len(set(a)) == 10


def test_sweep_cardinality_and_sdd0_law():
    grid = ensembles.log_grid(1e-2, 1, 5)
    rows = sweep(ModelSpec.er(40, 0.0), grid, ensembles.DEFAULT_ALPHAS, 400, 1)
    assert len(rows) == 5 * 9
    for r in rows:
        if r.alpha == 0:
            assert abs(r.mean_sdd - 40 * 39 * r.p) <= 3 * r.stderr_sdd + 1e-12
    by_p = {}
    for r in rows:
        by_p.setdefault(r.p, []).append(r)
    for cells in by_p.values():
        cells = [c for c in cells if c.alpha > 0]
        means = [c.mean_sdd for c in sorted(cells, key=lambda c: c.alpha)]
        assert all(b >= a for a, b in zip(means, means[1:]))


def test_sweep_rejects_unsorted_grid():
    with pytest.raises(ValueError):
        sweep(ModelSpec.er(10, 0.0), [0.5, 0.1], (0.0,), 2, 1)


def test_default_replicas(monkeypatch):
    assert ensembles.default_replicas(500) == 2000
    assert ensembles.default_replicas(3) == 333334
    monkeypatch.setenv(ensembles.REPLICA_BUDGET_ENV, "1000")
    assert ensembles.default_replicas(300) == 4


@pytest.mark.parametrize(
    "kind, model, expected",
    [
        (PredictionKind.ER_MEAN_DEGREE, ModelSpec.er(500, 0.02), 9.98),
        (PredictionKind.ER_SDD0, ModelSpec.er(100, 0.1), 990.0),
        (PredictionKind.ER_LARGE_NP, ModelSpec.er(100, 0.1), 990.0),
        (PredictionKind.BR_SDD0, ModelSpec.bipartite(125, 125, 0.5), 15625.0),
        (PredictionKind.BR_BALANCED, ModelSpec.bipartite(125, 125, 0.5), 15625.0),
        (PredictionKind.BR_MEAN_DEGREE, ModelSpec.bipartite(125, 125, 0.5), 62.5),
    ],
)
def test_predictions(kind, model, expected):
    assert predict(kind, model).value == pytest.approx(expected, rel=1e-12)


def test_general_bipartite_prediction():
    m = ModelSpec.bipartite(20, 80, 0.5)
    assert predict("BR_GENERAL_LARGE_NP", m, 0).value == pytest.approx(1600)
    assert predict("BR_GENERAL_LARGE_NP", m, 1).value == pytest.approx(800 * (4 + 0.25))
    # balanced reduces to 2 n1 n2 p at any alpha
    b = ModelSpec.bipartite(30, 30, 0.3)
    assert predict("BR_GENERAL_LARGE_NP", b, 3).value == pytest.approx(predict("BR_SDD0", b).value)


def test_general_bipartite_prediction_desk_scale():
    # dense unbalanced case: mean-field value within 3% of the ensemble mean
    m = ModelSpec.bipartite(40, 80, 0.6)
    (row,) = ensemble_average(EnsembleSpec(m, 300, 17, (1.0,)))
    pred = predict("BR_GENERAL_LARGE_NP", m, 1.0).value
    assert abs(row.mean_sdd - pred) / pred < 0.03


def test_prediction_model_mismatch():
    with pytest.raises(ValueError):
        predict(PredictionKind.BR_SDD0, ModelSpec.er(10, 0.1))
    with pytest.raises(ValueError):
        predict(PredictionKind.ER_SDD0, ModelSpec.bipartite(3, 3, 0.1))
    with pytest.raises(ValueError):
        predict(PredictionKind.BR_BALANCED, ModelSpec.bipartite(3, 4, 0.1))


def test_collapse_alpha_zero_identity():
    rows = sweep(ModelSpec.er(50, 0.0), [0.05, 0.2], (0.0, 1.0), 100, 3)
    pts = collapse(rows)
    assert len(pts) == len(rows)
    for c in pts:
        if c.alpha == 0:
            assert c.mean_sdd_over_n == pytest.approx(c.mean_degree, rel=1e-12)
            assert c.ratio == pytest.approx(1.0, rel=1e-12)


def test_collapse_sizes_overlap_er():
    pts = []
    for n in (64, 128):
        rows = sweep(ModelSpec.er(n, 0.0), [10 / (n - 1)], (1.0,), 2000, 8)
        pts += collapse(rows)
    a, b = [c.mean_sdd_over_n for c in pts]
    assert abs(a - b) / b < 0.02


def test_collapse_spread_interpolates():
    pts = [
        ensembles.CollapsePoint("er", 10, 1.0, d, d * (1.0 + math.log(d))) for d in (1.0, 4.0, 16.0)
    ] + [ensembles.CollapsePoint("er", 20, 1.0, 2.0, 2.0 * (1.0 + math.log(2.0)) * 1.05)]
    spread = collapse_spread(pts, 1.0)
    # the reference ratio is linear in log-degree, so interpolation is exact at d=2
    assert spread == pytest.approx(0.05, rel=1e-9)


def test_sweep_csv_schema_and_precision():
    rows = sweep(ModelSpec.bipartite(5, 7, 0.0), [0.3], (0.0, 0.5), 10, 2)
    text = ensembles.sweep_csv(rows)
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_FIELDS)
    parsed = ensembles.read_sweep_csv(io.StringIO(text))
    assert parsed[0]["model"] == "br" and parsed[0]["n"] == "12"
    assert parsed[0]["n1"] == "5" and parsed[0]["n2"] == "7"
    for r, d in zip(rows, parsed):
        assert float(d["mean_sdd"]) == r.mean_sdd
        assert float(d["stderr_sdd"]) == r.stderr_sdd


def test_read_sweep_csv_rejects_bad_header():
    with pytest.raises(ValueError):
        ensembles.read_sweep_csv(io.StringIO("a,b\n1,2\n"))


def test_isolated_vertices_count_toward_order():
    (row,) = ensemble_average(EnsembleSpec(ModelSpec.er(200, 0.002), 200, 1, (0.0,)))
    assert row.mean_sdd_over_n == row.mean_sdd / 200
    g = sample_er(200, 0.002, replica_stream(1, 0))
    assert len(connected_components(g)) > 100

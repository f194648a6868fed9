"""Erdős–Rényi and bipartite random graph ensembles of SDD.

Replica ``r`` of an ensemble draws from its own Philox stream keyed by
``(master_seed, r)`` through :class:`numpy.random.SeedSequence`, so results
do not depend on the order in which replicas run or on the worker count.
"""
from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, TextIO

import numpy as np

from .graph import Graph
from .indices import check_exponent, sdd_values

DEFAULT_ALPHAS = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0)
DEFAULT_REPLICA_BUDGET = 10**6
REPLICA_BUDGET_ENV = "SDDINDEX_REPLICA_BUDGET"
DENSE_THRESHOLD = 0.3

CSV_FIELDS = (
    "model", "n", "n1", "n2", "p", "alpha", "replicas",
    "mean_sdd", "stderr_sdd", "mean_degree", "mean_sdd_over_n",
)


class ModelKind(str, Enum):
    ER = "er"
    BIPARTITE = "br"


@dataclass(frozen=True)
class ModelSpec:
    kind: ModelKind
    p: float
    n: int | None = None
    n1: int | None = None
    n2: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        _check_probability(self.p)
        if self.kind is ModelKind.ER:
            if self.n is None or self.n < 2:
                raise ValueError(f"ER model needs n >= 2, got {self.n}")
        else:
            if self.n1 is None or self.n2 is None or self.n1 < 1 or self.n2 < 1:
                raise ValueError(f"bipartite model needs n1, n2 >= 1, got {self.n1}, {self.n2}")

    @classmethod
    def er(cls, n: int, p: float) -> "ModelSpec":
        return cls(ModelKind.ER, p, n=n)

    @classmethod
    def bipartite(cls, n1: int, n2: int, p: float) -> "ModelSpec":
        return cls(ModelKind.BIPARTITE, p, n1=n1, n2=n2)

    @property
    def order(self) -> int:
        return self.n if self.kind is ModelKind.ER else self.n1 + self.n2

    def with_p(self, p: float) -> "ModelSpec":
        return ModelSpec(self.kind, p, self.n, self.n1, self.n2)

    def sample(self, rng: np.random.Generator) -> Graph:
        if self.kind is ModelKind.ER:
            return sample_er(self.n, self.p, rng)
        return sample_br(self.n1, self.n2, self.p, rng)


def default_replicas(n: int) -> int:
    budget = int(os.environ.get(REPLICA_BUDGET_ENV, DEFAULT_REPLICA_BUDGET))
    return max(1, math.ceil(budget / n))


@dataclass(frozen=True)
class EnsembleSpec:
    model: ModelSpec
    replicas: int
    master_seed: int
    alphas: tuple[float, ...] = DEFAULT_ALPHAS

    def __post_init__(self):
        if self.replicas < 1:
            raise ValueError("replicas must be >= 1")
        alphas = tuple(check_exponent(a) for a in self.alphas)
        if not alphas or any(a < 0 for a in alphas):
            raise ValueError("alphas must be a non-empty sequence of values >= 0")
        object.__setattr__(self, "alphas", alphas)


@dataclass(frozen=True)
class SweepRow:
    model: ModelKind
    n: int
    n1: int | None
    n2: int | None
    p: float
    alpha: float
    replicas: int
    mean_sdd: float
    stderr_sdd: float
    mean_degree: float
    mean_sdd_over_n: float

    def as_dict(self) -> dict:
        return {
            "model": self.model.value, "n": self.n, "n1": self.n1, "n2": self.n2,
            "p": self.p, "alpha": self.alpha, "replicas": self.replicas,
            "mean_sdd": self.mean_sdd, "stderr_sdd": self.stderr_sdd,
            "mean_degree": self.mean_degree, "mean_sdd_over_n": self.mean_sdd_over_n,
        }


def _check_probability(p: float) -> None:
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p must lie in [0, 1], got {p}")


def replica_stream(master_seed: int, replica: int) -> np.random.Generator:
    seq = np.random.SeedSequence(master_seed & (2**64 - 1), spawn_key=(replica,))
    return np.random.Generator(np.random.Philox(seq))


# -- sampling -----------------------------------------------------------------


def _select_slots(total: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Sorted indices of the slots kept by independent Bernoulli(p) trials."""
    if total == 0 or p == 0.0:
        return np.empty(0, dtype=np.int64)
    if p == 1.0:
        return np.arange(total, dtype=np.int64)
    if p > DENSE_THRESHOLD:
        return np.flatnonzero(rng.random(total) < p)
    # geometric skipping: gaps between kept slots are Geometric(p)
    chunks = []
    pos = -1
    mean = total * p
    batch = int(mean + 4 * math.sqrt(mean) + 16)
    while pos < total:
        steps = np.cumsum(rng.geometric(p, size=batch)) + pos
        chunks.append(steps)
        pos = int(steps[-1])
    picked = np.concatenate(chunks)
    return picked[picked < total]


def _pair_from_index(k: np.ndarray, n: int) -> np.ndarray:
    # row-major order over pairs u < v: row u starts at u*(2n-u-1)/2
    b = 2 * n - 1
    u = np.floor((b - np.sqrt(b * b - 8.0 * k)) / 2).astype(np.int64)
    start = u * (b - u) // 2
    u = np.where(start > k, u - 1, u)
    start = u * (b - u) // 2
    nxt = (u + 1) * (b - u - 1) // 2
    u = np.where(nxt <= k, u + 1, u)
    start = u * (b - u) // 2
    v = k - start + u + 1
    return np.stack([u, v], axis=1)


def sample_er(n: int, p: float, rng: np.random.Generator) -> Graph:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    _check_probability(p)
    k = _select_slots(n * (n - 1) // 2, p, rng)
    return Graph(n, _pair_from_index(k, n))


def sample_br(n1: int, n2: int, p: float, rng: np.random.Generator) -> Graph:
    """Bipartite sample: vertices ``0..n1-1`` form one side, ``n1..n1+n2-1`` the other."""
    if n1 < 1 or n2 < 1:
        raise ValueError(f"n1 and n2 must be >= 1, got {n1}, {n2}")
    _check_probability(p)
    k = _select_slots(n1 * n2, p, rng)
    return Graph(n1 + n2, np.stack([k // n2, n1 + k % n2], axis=1))


# -- ensemble averages --------------------------------------------------------


@dataclass
class ReplicaData:
    """Per-replica SDD values (rows: replicas, columns: alphas) and edge counts."""

    alphas: tuple[float, ...]
    sdd: np.ndarray
    edges: np.ndarray


def _run_chunk(args) -> tuple[np.ndarray, np.ndarray]:
    model, seed, alphas, start, stop = args
    sdd = np.empty((stop - start, len(alphas)))
    edges = np.empty(stop - start, dtype=np.int64)
    for i, r in enumerate(range(start, stop)):
        g = model.sample(replica_stream(seed, r))
        sdd[i] = sdd_values(g, alphas)
        edges[i] = g.m
    return sdd, edges


def run_replicas(spec: EnsembleSpec, workers: int = 1) -> ReplicaData:
    R = spec.replicas
    if workers <= 1 or R < 2:
        sdd, edges = _run_chunk((spec.model, spec.master_seed, spec.alphas, 0, R))
        return ReplicaData(spec.alphas, sdd, edges)
    bounds = np.linspace(0, R, min(workers * 4, R) + 1).astype(int)
    tasks = [
        (spec.model, spec.master_seed, spec.alphas, int(a), int(b))
        for a, b in zip(bounds[:-1], bounds[1:]) if b > a
    ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_chunk, tasks))
    return ReplicaData(
        spec.alphas,
        np.concatenate([s for s, _ in parts]),
        np.concatenate([e for _, e in parts]),
    )


def _mean_stderr(x: np.ndarray) -> tuple[float, float]:
    values = [float(v) for v in x]
    mean = math.fsum(values) / len(values)
    if len(values) < 2 or min(values) == max(values):
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (len(values) - 1)
    return mean, math.sqrt(var / len(values))


def summarize(model: ModelSpec, data: ReplicaData) -> list[SweepRow]:
    n = model.order
    R = len(data.edges)
    mean_m = math.fsum(float(e) for e in data.edges) / R
    rows = []
    for j, alpha in enumerate(data.alphas):
        mean, se = _mean_stderr(data.sdd[:, j])
        rows.append(
            SweepRow(
                model=model.kind,
                n=n,
                n1=model.n1,
                n2=model.n2,
                p=model.p,
                alpha=alpha,
                replicas=R,
                mean_sdd=mean,
                stderr_sdd=se,
                mean_degree=2 * mean_m / n,
                mean_sdd_over_n=mean / n,
            )
        )
    return rows


def ensemble_average(spec: EnsembleSpec, workers: int = 1) -> list[SweepRow]:
    """Mean and standard error of SDD over the replicas, one row per exponent."""
    return summarize(spec.model, run_replicas(spec, workers))


def sweep(
    model: ModelSpec,
    p_grid: Sequence[float],
    alphas: Sequence[float] = DEFAULT_ALPHAS,
    replicas: int | None = None,
    master_seed: int = 0,
    workers: int = 1,
) -> list[SweepRow]:
    """Ensemble averages over ``p_grid`` x ``alphas``; ``model.p`` is ignored.

    Every cell reuses the replica streams of ``master_seed``.
    """
    p_grid = [float(p) for p in p_grid]
    for p in p_grid:
        _check_probability(p)
    if any(b < a for a, b in zip(p_grid, p_grid[1:])):
        raise ValueError("p_grid must be sorted")
    if replicas is None:
        replicas = default_replicas(model.order)
    rows = []
    for p in p_grid:
        spec = EnsembleSpec(model.with_p(p), replicas, master_seed, tuple(alphas))
        rows.extend(ensemble_average(spec, workers))
    return rows


def log_grid(start: float, stop: float, count: int) -> list[float]:
    return [float(x) for x in np.logspace(math.log10(start), math.log10(stop), count)]


# -- closed-form predictions --------------------------------------------------


class PredictionKind(str, Enum):
    ER_SDD0 = "ER_SDD0"
    ER_LARGE_NP = "ER_LARGE_NP"
    ER_MEAN_DEGREE = "ER_MEAN_DEGREE"
    BR_SDD0 = "BR_SDD0"
    BR_BALANCED = "BR_BALANCED"
    BR_MEAN_DEGREE = "BR_MEAN_DEGREE"
    BR_GENERAL_LARGE_NP = "BR_GENERAL_LARGE_NP"


@dataclass(frozen=True)
class ClosedFormPrediction:
    kind: PredictionKind
    value: float


def predict(kind: PredictionKind | str, model: ModelSpec, alpha: float = 0.0) -> ClosedFormPrediction:
    """Mean-field value of an ensemble quantity.

    ``ER_SDD0``/``ER_LARGE_NP``: n(n-1)p. ``ER_MEAN_DEGREE``: (n-1)p.
    ``BR_SDD0``: 2 n1 n2 p. ``BR_BALANCED``: n^2 p / 2 (needs n1 == n2).
    ``BR_MEAN_DEGREE``: 2 n1 n2 p / n. ``BR_GENERAL_LARGE_NP``: n1 n2 p times
    the edge term at side degrees n2 p and n1 p, evaluated at ``alpha``.
    """
    kind = PredictionKind(kind)
    p = model.p
    if kind.name.startswith("ER") != (model.kind is ModelKind.ER):
        raise ValueError(f"{kind.value} does not apply to a {model.kind.value} model")
    if kind in (PredictionKind.ER_SDD0, PredictionKind.ER_LARGE_NP):
        value = model.n * (model.n - 1) * p
    elif kind is PredictionKind.ER_MEAN_DEGREE:
        value = (model.n - 1) * p
    elif kind is PredictionKind.BR_SDD0:
        value = 2 * model.n1 * model.n2 * p
    elif kind is PredictionKind.BR_BALANCED:
        if model.n1 != model.n2:
            raise ValueError("BR_BALANCED needs n1 == n2")
        value = model.order**2 * p / 2
    elif kind is PredictionKind.BR_MEAN_DEGREE:
        value = 2 * model.n1 * model.n2 * p / model.order
    else:
        edges = model.n1 * model.n2 * p
        if edges == 0:
            value = 0.0
        else:
            r = check_exponent(alpha) * (math.log(model.n2) - math.log(model.n1))
            value = edges * (math.exp(r) + math.exp(-r))
    return ClosedFormPrediction(kind, float(value))


# -- scaling collapse ---------------------------------------------------------


@dataclass(frozen=True)
class CollapsePoint:
    model: str
    n: int
    alpha: float
    mean_degree: float
    mean_sdd_over_n: float

    @property
    def ratio(self) -> float:
        return self.mean_sdd_over_n / self.mean_degree if self.mean_degree else math.nan


def collapse(rows: Iterable[SweepRow | dict]) -> list[CollapsePoint]:
    """Re-key sweep rows by (alpha, empirical mean degree), keeping the source size."""
    pts = []
    for r in rows:
        d = r.as_dict() if isinstance(r, SweepRow) else r
        model = d["model"].value if isinstance(d["model"], ModelKind) else str(d["model"])
        pts.append(
            CollapsePoint(
                model=model,
                n=int(d["n"]),
                alpha=float(d["alpha"]),
                mean_degree=float(d["mean_degree"]),
                mean_sdd_over_n=float(d["mean_sdd_over_n"]),
            )
        )
    pts.sort(key=lambda c: (c.model, c.alpha, c.mean_degree, c.n))
    return pts


def collapse_spread(points: Sequence[CollapsePoint], alpha: float, min_degree: float = 0.0) -> float:
    """Largest relative gap between sizes on the collapsed curve at ``alpha``.

    Each size's ratio ``mean_sdd_over_n / mean_degree`` is interpolated
    linearly in log mean degree and compared with every other size at that
    size's points inside the overlap range.
    """
    by_n: dict[int, list[CollapsePoint]] = {}
    for c in points:
        if c.alpha == alpha and c.mean_degree > 0:
            by_n.setdefault(c.n, []).append(c)
    worst = 0.0
    for n_ref, ref in by_n.items():
        xs = np.log([c.mean_degree for c in ref])
        ys = np.array([c.ratio for c in ref])
        order = np.argsort(xs)
        xs, ys = xs[order], ys[order]
        for n_other, other in by_n.items():
            if n_other == n_ref:
                continue
            for c in other:
                x = math.log(c.mean_degree)
                if c.mean_degree < min_degree or x < xs[0] or x > xs[-1]:
                    continue
                y = float(np.interp(x, xs, ys))
                worst = max(worst, abs(c.ratio - y) / abs(y))
    return worst


# -- CSV / JSON ---------------------------------------------------------------


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def write_rows_csv(rows: Iterable[dict], fields: Sequence[str], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([_fmt(r.get(f)) for f in fields])


def sweep_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    write_rows_csv((r.as_dict() for r in rows), CSV_FIELDS, buf)
    return buf.getvalue()


def read_sweep_csv(source: TextIO) -> list[dict]:
    reader = csv.DictReader(source)
    if reader.fieldnames is None or tuple(reader.fieldnames) != CSV_FIELDS:
        raise ValueError(f"unexpected sweep CSV header {reader.fieldnames}")
    return list(reader)

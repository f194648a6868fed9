"""Degree-based topological indices.

All degree powers are evaluated as ``exp(alpha * log(d))`` so that large
exponents and degree ratios never overflow an intermediate power. The
modified Narumi-Katayama index is only ever handled through its logarithm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .graph import Graph


class IndexKind(str, Enum):
    SDD = "SDD"
    M1 = "M1"
    M2 = "M2"
    ISD = "ISD"
    ISI = "ISI"
    LOG_NK_STAR = "LOG_NK_STAR"


@dataclass(frozen=True)
class IndexResult:
    name: IndexKind
    alpha: float
    value: float

    def __float__(self) -> float:
        return self.value


def check_exponent(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError(f"exponent must be finite, got {alpha}")
    return alpha


def _log_degrees(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    du, dv = g.endpoint_degrees()
    return np.log(du.astype(float)), np.log(dv.astype(float))


def edge_term(du: int, dv: int, alpha: float) -> float:
    """``(du/dv)**alpha + (dv/du)**alpha``; at least 2, symmetric in both senses."""
    if du < 1 or dv < 1:
        raise ValueError("edge endpoint degrees must be positive")
    r = check_exponent(alpha) * (math.log(du) - math.log(dv))
    return math.exp(r) + math.exp(-r)


def sdd_terms(g: Graph, alpha: float) -> np.ndarray:
    lu, lv = _log_degrees(g)
    r = abs(check_exponent(alpha)) * (lu - lv)
    return np.exp(r) + np.exp(-r)


def sdd_values(g: Graph, alphas: Sequence[float]) -> np.ndarray:
    """SDD at several exponents at once; one float per entry of ``alphas``."""
    a = np.abs(np.array([check_exponent(x) for x in alphas], dtype=float))
    if g.m == 0:
        return np.zeros(len(a))
    lu, lv = _log_degrees(g)
    r = np.outer(a, lu - lv)
    return (np.exp(r) + np.exp(-r)).sum(axis=1)


def sdd_alpha(g: Graph, alpha: float) -> IndexResult:
    alpha = abs(check_exponent(alpha))
    value = float(sdd_terms(g, alpha).sum()) if g.m else 0.0
    return IndexResult(IndexKind.SDD, alpha, value)


def m1_alpha(g: Graph, alpha: float) -> IndexResult:
    """Vertex sum of ``d**alpha`` with ``0**0 = 1`` and ``0**alpha = 0`` for alpha > 0."""
    alpha = check_exponent(alpha)
    d = g.degrees
    isolated = int((d == 0).sum())
    if isolated and alpha < 0:
        raise ValueError("negative exponent is undefined on isolated vertices")
    pos = d[d > 0].astype(float)
    value = float(np.exp(alpha * np.log(pos)).sum())
    if alpha == 0:
        value += isolated
    return IndexResult(IndexKind.M1, alpha, value)


def m2_alpha(g: Graph, alpha: float) -> IndexResult:
    alpha = check_exponent(alpha)
    if g.m == 0:
        return IndexResult(IndexKind.M2, alpha, 0.0)
    lu, lv = _log_degrees(g)
    return IndexResult(IndexKind.M2, alpha, float(np.exp(alpha * (lu + lv)).sum()))


def isd_a(g: Graph, a: float) -> IndexResult:
    a = check_exponent(a)
    if g.m == 0:
        return IndexResult(IndexKind.ISD, a, 0.0)
    lu, lv = _log_degrees(g)
    return IndexResult(IndexKind.ISD, a, float((1.0 / (np.exp(a * lu) + np.exp(a * lv))).sum()))


def isi(g: Graph) -> IndexResult:
    """Inverse sum indeg index, i.e. ``isd_a(g, -1)``."""
    return IndexResult(IndexKind.ISI, -1.0, isd_a(g, -1.0).value)


def log_nk_star(g: Graph) -> IndexResult:
    """``ln NK*`` from the edge-product form; 0 for an edgeless graph.

    The exponent slot is unused and reported as 0.
    """
    if g.m == 0:
        return IndexResult(IndexKind.LOG_NK_STAR, 0.0, 0.0)
    lu, lv = _log_degrees(g)
    return IndexResult(IndexKind.LOG_NK_STAR, 0.0, float((lu + lv).sum()))


def compute(g: Graph, kind: IndexKind | str, alpha: float = 1.0) -> IndexResult:
    kind = IndexKind(kind)
    if kind is IndexKind.SDD:
        return sdd_alpha(g, alpha)
    if kind is IndexKind.M1:
        return m1_alpha(g, alpha)
    if kind is IndexKind.M2:
        return m2_alpha(g, alpha)
    if kind is IndexKind.ISD:
        return isd_a(g, alpha)
    if kind is IndexKind.ISI:
        return isi(g)
    return log_nk_star(g)

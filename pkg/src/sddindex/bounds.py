"""Executable versions of the SDD inequalities.

Each checker evaluates one inequality on a concrete graph and returns a
:class:`BoundReport` with the evaluated bounds, the index value, and
satisfaction/equality flags at a relative tolerance of 1e-9 (absolute floor
1e-12). ``min_degree`` is always taken over non-isolated vertices.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, degree_extremes, is_componentwise_regular, is_regular
from .indices import check_exponent, isd_a, log_nk_star, m1_alpha, m2_alpha, sdd_alpha

REL_TOL = 1e-9
ABS_TOL = 1e-12


class ParameterError(ValueError):
    pass


class NotApplicableError(ValueError):
    """The graph does not meet a theorem's degree hypothesis."""


class ParityViolation(AssertionError):
    """Odd count of unequal-degree edges in a graph with max degree = min degree + 1."""


class Theorem(str, Enum):
    MONOTONE = "MONOTONE"
    M2_SANDWICH = "M2_SANDWICH"
    M1_SANDWICH = "M1_SANDWICH"
    ISD_LOWER = "ISD_LOWER"
    NK_LOWER = "NK_LOWER"
    DELTA_PLUS_ONE_EXACT = "DELTA_PLUS_ONE_EXACT"
    DD_TWO_SIDED = "DD_TWO_SIDED"


# theorems whose equality case is "G is regular"
REGULAR_EQUALITY = frozenset(
    {Theorem.M2_SANDWICH, Theorem.M1_SANDWICH, Theorem.ISD_LOWER, Theorem.NK_LOWER}
)


def tolerance(*values: float) -> float:
    return max(REL_TOL * max(abs(v) for v in values), ABS_TOL)


def close(a: float, b: float) -> bool:
    return abs(a - b) <= tolerance(a, b)


@dataclass(frozen=True)
class BoundReport:
    theorem: Theorem
    alpha: float
    value: float = math.nan
    lower: float | None = None
    upper: float | None = None
    beta: float | None = None
    satisfied: bool = True
    equality_lower: bool = False
    equality_upper: bool = False
    slack_lower: float | None = None
    slack_upper: float | None = None
    # what the theorem's equality characterization predicts, when it has one
    expected_equality: bool | None = None
    has_isolated: bool = False
    skipped: bool = False
    note: str = ""

    @property
    def equality(self) -> bool:
        return self.equality_lower or self.equality_upper

    @property
    def equality_consistent(self) -> bool:
        if self.skipped or self.expected_equality is None:
            return True
        flags = [f for f, b in ((self.equality_lower, self.lower), (self.equality_upper, self.upper)) if b is not None]
        return all(f == self.expected_equality for f in flags)

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "alpha": self.alpha,
            "beta": self.beta,
            "lower": self.lower,
            "value": None if self.skipped else self.value,
            "upper": self.upper,
            "satisfied": self.satisfied,
            "equality_lower": self.equality_lower,
            "equality_upper": self.equality_upper,
            "slack_lower": self.slack_lower,
            "slack_upper": self.slack_upper,
            "expected_equality": self.expected_equality,
            "has_isolated": self.has_isolated,
            "skipped": self.skipped,
            "note": self.note,
        }


@dataclass(frozen=True)
class EdgeClassCounts:
    unequal: int  # edges whose endpoints have different degrees
    min_max: int  # one endpoint at min degree, the other at max degree
    min_interior: int  # one endpoint at min degree, the other strictly between
    max_interior: int  # one endpoint at max degree, the other strictly between


def _build(theorem, alpha, value, lower, upper, *, beta=None, expected=None, g=None, note=""):
    ok_lo = lower is None or lower - tolerance(lower, value) <= value
    ok_hi = upper is None or value <= upper + tolerance(upper, value)
    satisfied = ok_lo and ok_hi

    def slack(diff):
        return max(diff, 0.0) if satisfied else diff

    return BoundReport(
        theorem=theorem,
        alpha=alpha,
        beta=beta,
        value=value,
        lower=lower,
        upper=upper,
        satisfied=satisfied,
        equality_lower=lower is not None and close(lower, value),
        equality_upper=upper is not None and close(upper, value),
        slack_lower=None if lower is None else slack(value - lower),
        slack_upper=None if upper is None else slack(upper - value),
        expected_equality=expected,
        has_isolated=bool(g is not None and (g.degrees == 0).any()),
        note=note,
    )


def _positive(alpha: float, name: str = "alpha") -> float:
    alpha = check_exponent(alpha)
    if alpha <= 0:
        raise ParameterError(f"{name} must be positive, got {alpha}")
    return alpha


def _u(ratio_log: float, alpha: float) -> float:
    # t**alpha + t**-alpha given ln t
    return math.exp(alpha * ratio_log) + math.exp(-alpha * ratio_log)


def _pair(a: int, b: int, alpha: float) -> float:
    return _u(math.log(a) - math.log(b), alpha)


def check_monotonicity(g: Graph, alpha: float, beta: float) -> BoundReport:
    alpha, beta = _positive(alpha), _positive(beta, "beta")
    if alpha >= beta:
        raise ParameterError(f"need alpha < beta, got {alpha} >= {beta}")
    degree_extremes(g)
    return _build(
        Theorem.MONOTONE,
        alpha,
        sdd_alpha(g, beta).value,
        sdd_alpha(g, alpha).value,
        None,
        beta=beta,
        expected=is_componentwise_regular(g),
        g=g,
    )


def m2_sandwich(g: Graph, alpha: float) -> BoundReport:
    alpha = _positive(alpha)
    ext = degree_extremes(g)
    m2 = m2_alpha(g, -alpha).value
    return _build(
        Theorem.M2_SANDWICH,
        alpha,
        sdd_alpha(g, alpha).value,
        2 * math.exp(2 * alpha * math.log(ext.min_degree)) * m2,
        2 * math.exp(2 * alpha * math.log(ext.max_degree)) * m2,
        expected=is_regular(g),
        g=g,
    )


def m1_sandwich(g: Graph, alpha: float) -> BoundReport:
    alpha = _positive(alpha)
    ext = degree_extremes(g)
    m1 = m1_alpha(g, 2 * alpha + 1).value
    return _build(
        Theorem.M1_SANDWICH,
        alpha,
        sdd_alpha(g, alpha).value,
        math.exp(-2 * alpha * math.log(ext.max_degree)) * m1,
        math.exp(-2 * alpha * math.log(ext.min_degree)) * m1,
        expected=is_regular(g),
        g=g,
    )


def isd_lower(g: Graph, alpha: float) -> BoundReport:
    alpha = _positive(alpha)
    ext = degree_extremes(g)
    lower = math.exp(alpha * math.log(ext.min_degree)) * g.m**2 / isd_a(g, -alpha).value
    return _build(
        Theorem.ISD_LOWER, alpha, sdd_alpha(g, alpha).value, lower, None,
        expected=is_regular(g), g=g,
    )


def nk_lower(g: Graph, alpha: float) -> BoundReport:
    alpha = _positive(alpha)
    ext = degree_extremes(g)
    log_nk = log_nk_star(g).value
    lower = 2 * g.m * math.exp(2 * alpha * math.log(ext.min_degree) - alpha / g.m * log_nk)
    return _build(
        Theorem.NK_LOWER, alpha, sdd_alpha(g, alpha).value, lower, None,
        expected=is_regular(g), g=g,
    )


def classify_edges(g: Graph) -> EdgeClassCounts:
    ext = degree_extremes(g)
    lo, hi = ext.min_degree, ext.max_degree
    du, dv = g.endpoint_degrees()
    a, b = np.minimum(du, dv), np.maximum(du, dv)
    unequal = a != b
    interior_b = (b > lo) & (b < hi)
    interior_a = (a > lo) & (a < hi)
    return EdgeClassCounts(
        unequal=int(unequal.sum()),
        min_max=int((unequal & (a == lo) & (b == hi)).sum()),
        min_interior=int(((a == lo) & interior_b).sum()),
        max_interior=int(((b == hi) & interior_a).sum()),
    )


def delta_plus_one_exact(g: Graph, alpha: float) -> BoundReport:
    """Closed form of SDD when the max degree is exactly one above the min degree."""
    alpha = _positive(alpha)
    ext = degree_extremes(g)
    if ext.max_degree != ext.min_degree + 1:
        raise NotApplicableError(
            f"requires max degree = min degree + 1, got {ext.min_degree}, {ext.max_degree}"
        )
    counts = classify_edges(g)
    if counts.unequal % 2:
        raise ParityViolation(f"odd unequal-degree edge count {counts.unequal} on {g!r}")
    exact = 2 * g.m + counts.unequal * (_pair(ext.min_degree + 1, ext.min_degree, alpha) - 2)
    return _build(
        Theorem.DELTA_PLUS_ONE_EXACT, alpha, sdd_alpha(g, alpha).value, exact, exact,
        g=g, note=f"A={counts.unequal}",
    )


def dd_two_sided(g: Graph, alpha: float) -> BoundReport:
    """Edge-class bounds for graphs with max degree > min degree + 1."""
    alpha = _positive(alpha)
    ext = degree_extremes(g)
    lo, hi = ext.min_degree, ext.max_degree
    if hi <= lo + 1:
        raise NotApplicableError(
            f"requires max degree > min degree + 1, got {lo}, {hi}"
        )
    c = classify_edges(g)
    m = g.m
    extreme = _pair(hi, lo, alpha)
    upper = (
        (m - c.min_interior - c.max_interior) * extreme
        + c.min_interior * _pair(hi - 1, lo, alpha)
        + c.max_interior * _pair(hi, lo + 1, alpha)
    )
    lower = (
        2 * m
        + c.min_max * (extreme - 2)
        + c.min_interior * (_pair(lo + 1, lo, alpha) - 2)
        + c.max_interior * (_pair(hi, hi - 1, alpha) - 2)
    )
    return _build(
        Theorem.DD_TWO_SIDED, alpha, sdd_alpha(g, alpha).value, lower, upper, g=g,
        note=f"A0={c.min_max} A1={c.min_interior} A2={c.max_interior}",
    )


def _skip(theorem: Theorem, alpha: float, reason: str) -> BoundReport:
    return BoundReport(theorem=theorem, alpha=alpha, satisfied=True, skipped=True, note=reason)


def check_all(g: Graph, alphas: Sequence[float]) -> list[BoundReport]:
    """Run every theorem at every exponent.

    Pairs ``alpha < beta`` drawn from ``alphas`` feed the monotonicity check.
    Theorems whose degree hypothesis fails yield a skipped report.
    """
    alphas = [_positive(a) for a in alphas]
    if not alphas:
        raise ParameterError("at least one exponent is required")
    ext = degree_extremes(g)
    reports = []
    distinct = sorted(set(alphas))
    if len(distinct) < 2:
        reports.append(_skip(Theorem.MONOTONE, distinct[0], "needs two distinct exponents"))
    for a, b in itertools.combinations(distinct, 2):
        reports.append(check_monotonicity(g, a, b))
    for a in alphas:
        reports += [m2_sandwich(g, a), m1_sandwich(g, a), isd_lower(g, a), nk_lower(g, a)]
        if ext.max_degree == ext.min_degree + 1:
            reports.append(delta_plus_one_exact(g, a))
        else:
            reports.append(_skip(Theorem.DELTA_PLUS_ONE_EXACT, a, "max degree != min degree + 1"))
        if ext.max_degree > ext.min_degree + 1:
            reports.append(dd_two_sided(g, a))
        else:
            reports.append(_skip(Theorem.DD_TWO_SIDED, a, "max degree <= min degree + 1"))
    return reports


@dataclass
class CertificationSummary:
    graphs: int = 0
    checks: int = 0
    skipped: int = 0
    violations: int = 0
    equality_mismatches: int = 0
    parity_violations: int = 0
    failures: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.violations or self.equality_mismatches or self.parity_violations)

    def as_dict(self) -> dict:
        return {
            "graphs": self.graphs,
            "checks": self.checks,
            "skipped": self.skipped,
            "violations": self.violations,
            "equality_mismatches": self.equality_mismatches,
            "parity_violations": self.parity_violations,
        }


def certify(graphs: Iterable[Graph], alphas: Sequence[float], keep_failures: int = 20) -> CertificationSummary:
    """Run :func:`check_all` over many graphs and tally every kind of failure.

    Edgeless graphs are ignored. Parity of the unequal-degree edge count is
    tallied directly so that a violation is counted rather than raised.
    """
    out = CertificationSummary()
    for g in graphs:
        if g.m == 0:
            continue
        out.graphs += 1
        ext = degree_extremes(g)
        if ext.max_degree == ext.min_degree + 1 and classify_edges(g).unequal % 2:
            out.parity_violations += 1
            if len(out.failures) < keep_failures:
                out.failures.append((g, "parity"))
            continue
        for r in check_all(g, alphas):
            if r.skipped:
                out.skipped += 1
                continue
            out.checks += 1
            if not r.satisfied:
                out.violations += 1
                if len(out.failures) < keep_failures:
                    out.failures.append((g, r))
            elif not r.equality_consistent:
                out.equality_mismatches += 1
                if len(out.failures) < keep_failures:
                    out.failures.append((g, r))
    return out

"""Turn biclusters of a labeled matrix into quantitative class rules.

A bicluster over labeled rows becomes a rule "antecedent => class": the
antecedent records, for every intent column, the value range the extent
spans there; the class is the majority label of the extent.  Rules carry the
classic frequent-pattern metrics and can be thinned by a relevance filter
(confidence and lift thresholds) followed by a greedy coverage-preserving
selection.
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .datamodel import DataError, MixedMatrix, decode_interval
from .enumerator import Bicluster


@dataclass(frozen=True)
class QuantItem:
    """One antecedent entry: a column and its domain of interest [lo, hi]."""

    column: int
    lo: float
    hi: float


@dataclass(frozen=True)
class Qcar:
    """Quantitative class rule extracted from a bicluster."""

    antecedent: tuple[QuantItem, ...]
    consequent: str
    source: Bicluster


@dataclass(frozen=True)
class MetricBundle:
    """Rule metrics; ``support`` counts rows matching antecedent and class."""

    support: int
    rsup: float
    confidence: float
    completeness: float
    lift: float
    leverage: float


def _require_labels(matrix: MixedMatrix):
    if matrix.row_labels is None:
        raise DataError("dataset has no class labels; rules need a label column")


def build_qcar(bicluster: Bicluster, matrix: MixedMatrix) -> Qcar:
    """Rule for a bicluster: observed per-column ranges imply the majority
    label of the extent (ties break to the smallest label)."""
    _require_labels(matrix)
    rows = np.array(bicluster.extent, dtype=np.int64)
    counts = Counter(matrix.row_labels[i] for i in bicluster.extent)
    top = max(counts.values())
    consequent = min(label for label, c in counts.items() if c == top)
    items = []
    for j in bicluster.intent:
        vals = matrix.values[rows, j]
        items.append(QuantItem(column=j, lo=float(vals.min()), hi=float(vals.max())))
    return Qcar(antecedent=tuple(items), consequent=consequent, source=bicluster)


def antecedent_rows(qcar: Qcar, matrix: MixedMatrix) -> np.ndarray:
    """Boolean mask of all rows matching the antecedent.

    Membership is re-evaluated against the full matrix, so rows outside the
    source extent can match; a missing cell in any antecedent column never
    matches.
    """
    ok = np.ones(matrix.n, dtype=bool)
    for item in qcar.antecedent:
        col_vals = matrix.values[:, item.column]
        ok &= ~matrix.missing[:, item.column]
        ok &= (col_vals >= item.lo) & (col_vals <= item.hi)
    return ok


def compute_metrics(qcar: Qcar, matrix: MixedMatrix) -> MetricBundle:
    """Support, confidence, completeness, lift and leverage of a rule."""
    _require_labels(matrix)
    n = matrix.n
    labels = np.array(matrix.row_labels)
    matches = antecedent_rows(qcar, matrix)
    in_class = labels == qcar.consequent
    sup_ant = int(matches.sum())
    sup_class = int(in_class.sum())
    sup_rule = int((matches & in_class).sum())
    confidence = sup_rule / sup_ant
    return MetricBundle(
        support=sup_rule,
        rsup=sup_rule / n,
        confidence=confidence,
        completeness=sup_rule / sup_class,
        lift=confidence / (sup_class / n),
        leverage=sup_rule / n - (sup_ant / n) * (sup_class / n),
    )


def score_rules(
    biclusters: list[Bicluster], matrix: MixedMatrix
) -> list[tuple[Qcar, MetricBundle]]:
    """Build and score one rule per bicluster, preserving order."""
    out = []
    for b in biclusters:
        q = build_qcar(b, matrix)
        out.append((q, compute_metrics(q, matrix)))
    return out


def filter_relevance(
    scored: list[tuple[Qcar, MetricBundle]],
    min_conf: float,
    min_lift_distance: float,
    *,
    strict_lift: bool = False,
) -> list[tuple[Qcar, MetricBundle]]:
    """Keep rules with confidence >= min_conf whose lift is at least
    min_lift_distance away from 1 (either side).

    ``strict_lift`` switches the lift comparison to strictly-greater; the
    default keeps ties.
    """
    def lift_ok(m: MetricBundle) -> bool:
        d = abs(m.lift - 1.0)
        return d > min_lift_distance if strict_lift else d >= min_lift_distance

    return [
        (q, m) for q, m in scored if m.confidence >= min_conf and lift_ok(m)
    ]


def _covered_rows(qcar: Qcar, matrix: MixedMatrix) -> frozenset[int]:
    # extent rows whose label equals the rule's class
    return frozenset(
        i for i in qcar.source.extent
        if matrix.row_labels[i] == qcar.consequent
    )


def greedy_select(
    scored: list[tuple[Qcar, MetricBundle]], matrix: MixedMatrix
) -> list[tuple[Qcar, MetricBundle]]:
    """Coverage-preserving greedy selection.

    Repeatedly moves the rule with the largest row-coverage gain into the
    output until the output covers every row the input covers.  Ties break
    to the smaller intent, then to input order.  A rule's coverage counts
    only extent rows of its own class.
    """
    _require_labels(matrix)
    if not scored:
        return []
    cover = [_covered_rows(q, matrix) for q, _ in scored]
    target = frozenset().union(*cover)
    remaining = list(range(len(scored)))
    covered: set[int] = set()
    picked: list[int] = []
    while len(covered) < len(target):
        best = min(
            remaining,
            key=lambda idx: (
                -len(cover[idx] - covered),
                len(scored[idx][0].antecedent),
                idx,
            ),
        )
        remaining.remove(best)
        picked.append(best)
        covered |= cover[best]
    return [scored[idx] for idx in picked]


def row_coverage(
    scored: list[tuple[Qcar, MetricBundle]], matrix: MixedMatrix
) -> tuple[float, float]:
    """Fraction of rows covered (class-restricted union of extents) and
    fraction of columns used (union of intents)."""
    if not scored:
        return 0.0, 0.0
    _require_labels(matrix)
    rows: set[int] = set()
    cols: set[int] = set()
    for q, _ in scored:
        rows |= _covered_rows(q, matrix)
        cols.update(item.column for item in q.antecedent)
    return len(rows) / matrix.n, len(cols) / matrix.m


def render_qcar(qcar: Qcar, matrix: MixedMatrix, metrics: MetricBundle | None = None) -> str:
    """Human-readable rule text, e.g. ``a{yes}, b[1.20,3.40] => 1``."""
    body = ", ".join(
        decode_interval(matrix.schema[item.column], item.lo, item.hi)
        for item in qcar.antecedent
    )
    text = f"{body} ⇒ {qcar.consequent}"
    if metrics is not None:
        text += (
            f"  comp={metrics.completeness:.2f} conf={metrics.confidence:.2f}"
            f" lift={metrics.lift:.2f} lev={metrics.leverage:.2f}"
        )
    return text

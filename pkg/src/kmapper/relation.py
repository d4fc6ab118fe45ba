"""Pairwise relationship evidence and the six-way correlation verdict.

Each analyzed pair gets three measures: Pearson correlation (linear
trend), Spearman rank correlation (monotone trend, average ranks on
ties) and a normalized mutual information estimate from an equal-width
histogram (nonlinear association). The verdict takes the larger of the
two trend measures by magnitude as ``m`` and decides, in order:

  1. |m| >= t_strong                      -> Strong Positive/Negative
  2. t_weak <= |m| < t_strong             -> Weak Positive/Negative
  3. |m| < t_weak and nmi >= t_complex    -> Complex
  4. otherwise                            -> NoCorrelation

A constant variable carries no trend evidence: the pair is reported as
NoCorrelation with all measures recorded as 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .dataset import TimeSeriesTable
from .errors import ConstantSeries, TooFewPoints


class RelationClass(Enum):
    STRONG_POSITIVE = "StrongPositive"
    STRONG_NEGATIVE = "StrongNegative"
    WEAK_POSITIVE = "WeakPositive"
    WEAK_NEGATIVE = "WeakNegative"
    COMPLEX = "Complex"
    NO_CORRELATION = "NoCorrelation"


@dataclass(frozen=True)
class RelationThresholds:
    """Cutoffs for the class decision; defaults are conventional
    correlation-strength bands."""

    t_strong: float = 0.8
    t_weak: float = 0.4
    t_complex_nmi: float = 0.3
    min_points: int = 3

    def __post_init__(self):
        if not (0.0 < self.t_weak < self.t_strong <= 1.0):
            raise ValueError("need 0 < t_weak < t_strong <= 1")
        if not (0.0 < self.t_complex_nmi <= 1.0):
            raise ValueError("need 0 < t_complex_nmi <= 1")
        if self.min_points < 3:
            raise ValueError("min_points must be >= 3")


@dataclass(frozen=True)
class PairRelation:
    """Evidence bundle for one variable pair.

    ``bins`` records the histogram resolution used for ``nmi`` so the
    number can be reproduced from the raw data.
    """

    var_a: str
    var_b: str
    n_used: int
    pearson_r: float
    spearman_rho: float
    nmi: float
    bins: int
    rel_class: RelationClass


class ScatterPoint(NamedTuple):
    x: float
    y: float
    label: str


def _as_clean_arrays(x, y) -> tuple[np.ndarray, np.ndarray]:
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != ya.shape or xa.ndim != 1:
        raise TooFewPoints(f"sequences must be 1-d and equal length, got {xa.shape} vs {ya.shape}")
    return xa, ya


def pearson(x, y) -> float:
    """Product-moment correlation of two complete sequences."""
    xa, ya = _as_clean_arrays(x, y)
    n = len(xa)
    if n < 3:
        raise TooFewPoints(f"pearson needs >= 3 points, got {n}")
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise ConstantSeries("zero variance in input sequence")
    return float(dx @ dy) / math.sqrt(sxx * syy)


def average_ranks(v) -> np.ndarray:
    """1-based ranks; tied values share the average of their positions."""
    va = np.asarray(v, dtype=float)
    order = np.argsort(va, kind="stable")
    ranks = np.empty(len(va), dtype=float)
    i = 0
    while i < len(va):
        j = i
        while j + 1 < len(va) and va[order[j + 1]] == va[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(x, y) -> float:
    """Pearson correlation of the rank vectors."""
    xa, ya = _as_clean_arrays(x, y)
    if len(xa) < 3:
        raise TooFewPoints(f"spearman needs >= 3 points, got {len(xa)}")
    return pearson(average_ranks(xa), average_ranks(ya))


def default_bins(n: int) -> int:
    return max(2, int(math.floor(math.sqrt(n))))


def _bin_indices(v: np.ndarray, bins: int) -> np.ndarray:
    """Equal-width bin index per value over [min, max]; the top value
    falls in the last bin. A constant sequence lands entirely in bin 0."""
    lo = float(v.min())
    hi = float(v.max())
    if hi == lo:
        return np.zeros(len(v), dtype=int)
    idx = np.floor((v - lo) / (hi - lo) * bins).astype(int)
    return np.clip(idx, 0, bins - 1)


def _entropy(counts: np.ndarray) -> float:
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log2(p)).sum())


def mutual_information(x, y, bins: int | None = None) -> float:
    """Normalized mutual information over a bins x bins histogram.

    MI is estimated as H(X) + H(Y) - H(X,Y) from equal-width bin counts
    spanning each variable's own range, then normalized by
    max(H(X), H(Y)). Returns 0 when either marginal entropy is 0. The
    log base cancels in the ratio; base 2 is used internally.
    """
    xa, ya = _as_clean_arrays(x, y)
    n = len(xa)
    if n < 3:
        raise TooFewPoints(f"mutual_information needs >= 3 points, got {n}")
    if bins is None:
        bins = default_bins(n)
    if bins < 2:
        raise ValueError(f"bins must be >= 2, got {bins}")

    ix = _bin_indices(xa, bins)
    iy = _bin_indices(ya, bins)
    joint = np.zeros((bins, bins), dtype=float)
    np.add.at(joint, (ix, iy), 1.0)
    hx = _entropy(joint.sum(axis=1))
    hy = _entropy(joint.sum(axis=0))
    if hx == 0.0 or hy == 0.0:
        return 0.0
    hxy = _entropy(joint.reshape(-1))
    mi = max(0.0, hx + hy - hxy)
    return mi / max(hx, hy)


def pairwise_complete(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Drop positions where either value is missing (NaN)."""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    keep = ~(np.isnan(xa) | np.isnan(ya))
    return xa[keep], ya[keep]


def classify_relation(x, y, th: RelationThresholds | None = None,
                      var_a: str = "x", var_b: str = "y") -> PairRelation:
    """Classify one pair into its :class:`RelationClass`.

    Inputs may contain NaN; rows missing either value are dropped
    pairwise before anything is computed. When the two trend measures
    tie in magnitude, Pearson decides the sign.
    """
    if th is None:
        th = RelationThresholds()
    xa, ya = pairwise_complete(x, y)
    n = len(xa)
    if n < th.min_points:
        raise TooFewPoints(
            f"pair {var_a}/{var_b}: {n} complete points < {th.min_points}"
        )
    bins = default_bins(n)
    try:
        r = pearson(xa, ya)
        rho = spearman(xa, ya)
    except ConstantSeries:
        return PairRelation(var_a, var_b, n, 0.0, 0.0, 0.0, bins,
                            RelationClass.NO_CORRELATION)
    nmi = mutual_information(xa, ya, bins)

    m = r if abs(r) >= abs(rho) else rho
    if abs(m) >= th.t_strong:
        cls = RelationClass.STRONG_POSITIVE if m > 0 else RelationClass.STRONG_NEGATIVE
    elif abs(m) >= th.t_weak:
        cls = RelationClass.WEAK_POSITIVE if m > 0 else RelationClass.WEAK_NEGATIVE
    elif nmi >= th.t_complex_nmi:
        cls = RelationClass.COMPLEX
    else:
        cls = RelationClass.NO_CORRELATION
    return PairRelation(var_a, var_b, n, r, rho, nmi, bins, cls)


def scatter_points(table: TimeSeriesTable, var_x: str, var_y: str) -> list[ScatterPoint]:
    """Pairwise-complete points in time order, ready for export."""
    xs = table.column(var_x)
    ys = table.column(var_y)
    return [
        ScatterPoint(float(xv), float(yv), label)
        for xv, yv, label in zip(xs, ys, table.time_labels)
        if not (math.isnan(xv) or math.isnan(yv))
    ]


def scatter_csv(points: list[ScatterPoint], var_x: str, var_y: str) -> str:
    lines = [f"label,{var_x},{var_y}"]
    for p in points:
        lines.append(f"{p.label},{p.x!r},{p.y!r}")
    return "\n".join(lines) + "\n"


def scatter_svg(points: list[ScatterPoint], var_x: str, var_y: str,
                width: int = 480, height: int = 360) -> str:
    """Minimal standalone scatter plot.

    Hand-rolled so repeated runs are byte-identical (plotting libraries
    embed timestamps and session ids).
    """
    margin = 50.0
    plot_w = width - 2 * margin
    plot_h = height - 2 * margin
    if points:
        xs = [p.x for p in points]
        ys = [p.y for p in points]
        lox, hix = min(xs), max(xs)
        loy, hiy = min(ys), max(ys)
    else:
        lox = hix = loy = hiy = 0.0

    def sx(v: float) -> float:
        if hix == lox:
            return margin + plot_w / 2
        return margin + (v - lox) / (hix - lox) * plot_w

    def sy(v: float) -> float:
        if hiy == loy:
            return margin + plot_h / 2
        return height - margin - (v - loy) / (hiy - loy) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" '
        f'stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="{height - 12}" text-anchor="middle" '
        f'font-size="13">{var_x}</text>',
        f'<text x="14" y="{height / 2:.1f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 14 {height / 2:.1f})">{var_y}</text>',
        f'<text x="{margin}" y="{height - margin + 16:.1f}" text-anchor="middle" '
        f'font-size="10">{lox:.6g}</text>',
        f'<text x="{width - margin}" y="{height - margin + 16:.1f}" text-anchor="middle" '
        f'font-size="10">{hix:.6g}</text>',
        f'<text x="{margin - 6}" y="{height - margin:.1f}" text-anchor="end" '
        f'font-size="10">{loy:.6g}</text>',
        f'<text x="{margin - 6}" y="{margin:.1f}" text-anchor="end" '
        f'font-size="10">{hiy:.6g}</text>',
    ]
    for p in points:
        parts.append(
            f'<circle cx="{sx(p.x):.2f}" cy="{sy(p.y):.2f}" r="3.5" '
            f'fill="#3366cc" fill-opacity="0.8"><title>{p.label}</title></circle>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

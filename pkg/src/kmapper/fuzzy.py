"""Triangular fuzzy partitions, rule induction from data, and Mamdani
inference.

Rules are induced Wang-Mendel style: each complete data row votes for
the max-membership label of every variable, producing one IF-THEN rule
whose confidence is the product of those memberships; conflicting rules
(same antecedent cell, different consequent) are resolved by keeping
the highest-confidence one. Inference is the classical Mamdani stack:
AND = min, OR = max, clipped consequents, max aggregation, centroid
defuzzification over a 101-sample universe.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .dataset import TimeSeriesTable
from .errors import (
    ConstantSeries,
    MissingInput,
    NoCompleteRows,
    NoRuleFires,
)

DEFUZZ_SAMPLES = 101


class Connective(Enum):
    AND = "AND"
    OR = "OR"


@dataclass(frozen=True)
class TriangularMF:
    """Triangle (a, b, c) = left foot, peak, right foot.

    ``a == b`` makes a flat-left shoulder (membership 1 for t <= b);
    ``b == c`` a flat-right shoulder.
    """

    label: str
    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a <= self.b <= self.c):
            raise ValueError(f"need a <= b <= c, got ({self.a}, {self.b}, {self.c})")

    def membership(self, t):
        t = np.asarray(t, dtype=float)
        if self.a == self.b and self.b == self.c:
            mu = np.where(t == self.b, 1.0, 0.0)
        elif self.a == self.b:  # left shoulder
            mu = np.where(t <= self.b, 1.0, (self.c - t) / (self.c - self.b))
        elif self.b == self.c:  # right shoulder
            mu = np.where(t >= self.b, 1.0, (t - self.a) / (self.b - self.a))
        else:
            mu = np.where(
                t <= self.b,
                (t - self.a) / (self.b - self.a),
                (self.c - t) / (self.c - self.b),
            )
        mu = np.clip(mu, 0.0, 1.0)
        return float(mu) if mu.ndim == 0 else mu


@dataclass(frozen=True)
class FuzzyPartition:
    """Ordered triangular sets covering one variable's observed range."""

    variable: str
    mfs: tuple[TriangularMF, ...]

    def __post_init__(self):
        peaks = [mf.b for mf in self.mfs]
        if len(peaks) < 2:
            raise ValueError("partition needs at least 2 sets")
        if any(q <= p for p, q in zip(peaks, peaks[1:])):
            raise ValueError("peaks must be strictly increasing")

    @property
    def lo(self) -> float:
        return self.mfs[0].b

    @property
    def hi(self) -> float:
        return self.mfs[-1].b

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(mf.label for mf in self.mfs)

    def mf(self, label: str) -> TriangularMF:
        for mf in self.mfs:
            if mf.label == label:
                return mf
        raise KeyError(f"partition '{self.variable}' has no set '{label}'")

    def membership_of(self, label: str, t: float) -> float:
        return self.mf(label).membership(t)

    def best_label(self, t: float) -> tuple[str, float]:
        """Max-membership label at ``t``; ties go to the lower label."""
        best = self.mfs[0]
        best_mu = best.membership(t)
        for mf in self.mfs[1:]:
            mu = mf.membership(t)
            if mu > best_mu:
                best, best_mu = mf, mu
        return best.label, best_mu


@dataclass(frozen=True)
class FuzzyRule:
    antecedents: tuple[tuple[str, str], ...]  # (variable, label)
    connective: Connective
    consequent: tuple[str, str]
    confidence: float

    def text(self) -> str:
        joiner = f" {self.connective.value} "
        body = joiner.join(f"{var} IS {label}" for var, label in self.antecedents)
        cvar, clabel = self.consequent
        return f"IF {body} THEN {cvar} IS {clabel} (conf={self.confidence:.2f})"


@dataclass(frozen=True)
class FuzzyRuleBase:
    partitions: dict[str, FuzzyPartition]
    rules: tuple[FuzzyRule, ...]


def _default_labels(k: int) -> list[str]:
    if k == 2:
        return ["low", "high"]
    if k == 3:
        return ["low", "medium", "high"]
    if k == 5:
        return ["very_low", "low", "medium", "high", "very_high"]
    return [f"level{i + 1}" for i in range(k)]


def partition_from_range(variable: str, lo: float, hi: float, k: int = 3,
                         labels: Sequence[str] | None = None) -> FuzzyPartition:
    """Evenly spaced peaks on [lo, hi], feet at the neighboring peaks
    (50% overlap), shouldered ends."""
    if k < 2:
        raise ValueError(f"need k >= 2 sets, got {k}")
    if not hi > lo:
        raise ConstantSeries(f"variable '{variable}' has zero range [{lo}, {hi}]")
    if labels is None:
        labels = _default_labels(k)
    elif len(labels) != k:
        raise ValueError(f"got {len(labels)} labels for k={k}")
    peaks = np.linspace(lo, hi, k)
    mfs = []
    for i, (label, peak) in enumerate(zip(labels, peaks)):
        a = peaks[i - 1] if i > 0 else peak
        c = peaks[i + 1] if i < k - 1 else peak
        mfs.append(TriangularMF(label, float(a), float(peak), float(c)))
    return FuzzyPartition(variable, tuple(mfs))


def build_partitions(table: TimeSeriesTable, variable: str, k: int = 3,
                     labels: Sequence[str] | None = None) -> FuzzyPartition:
    """Partition over the variable's observed (non-missing) range."""
    col = table.column(variable)
    present = col[~np.isnan(col)]
    if len(present) == 0:
        raise ConstantSeries(f"variable '{variable}' has no values")
    return partition_from_range(variable, float(present.min()), float(present.max()),
                                k, labels)


def induce_rules(table: TimeSeriesTable, partitions: Mapping[str, FuzzyPartition],
                 antecedent_vars: Sequence[str],
                 consequent_var: str) -> FuzzyRuleBase:
    """Learn one rule per complete data row; keep the best per cell.

    Only rows with every antecedent and the consequent present
    participate. Induced rules always combine antecedents with AND.
    """
    for name in [*antecedent_vars, consequent_var]:
        if name not in partitions:
            raise KeyError(f"no partition supplied for variable '{name}'")
    columns = {name: table.column(name) for name in [*antecedent_vars, consequent_var]}

    best: dict[tuple[tuple[str, str], ...], FuzzyRule] = {}
    n_complete = 0
    for row in range(len(table)):
        cells = {name: float(col[row]) for name, col in columns.items()}
        if any(math.isnan(v) for v in cells.values()):
            continue
        n_complete += 1
        confidence = 1.0
        antecedents = []
        for name in antecedent_vars:
            label, mu = partitions[name].best_label(cells[name])
            antecedents.append((name, label))
            confidence *= mu
        clabel, cmu = partitions[consequent_var].best_label(cells[consequent_var])
        confidence *= cmu
        rule = FuzzyRule(tuple(antecedents), Connective.AND,
                         (consequent_var, clabel), confidence)
        key = rule.antecedents
        if key not in best or rule.confidence > best[key].confidence:
            best[key] = rule
    if n_complete == 0:
        raise NoCompleteRows(
            f"no row has all of {', '.join([*antecedent_vars, consequent_var])}"
        )

    # deterministic rule order: by antecedent labels' partition positions
    def cell_position(rule: FuzzyRule) -> tuple[int, ...]:
        return tuple(
            partitions[var].labels.index(label) for var, label in rule.antecedents
        )

    rules = tuple(sorted(best.values(), key=cell_position))
    used = {name: partitions[name] for name in [*antecedent_vars, consequent_var]}
    return FuzzyRuleBase(used, rules)


def infer(rb: FuzzyRuleBase, inputs: Mapping[str, float]) -> float:
    """Mamdani inference to a crisp value of the rule base's consequent.

    Every rule whose antecedent variables are all present fires at
    min (AND) or max (OR) of the antecedent memberships, scaled by the
    rule's confidence; consequent sets are clipped at that level and
    aggregated by max; the centroid of the aggregate over 101 evenly
    spaced samples of the consequent universe is returned.
    """
    if not rb.rules:
        raise NoRuleFires("rule base is empty")
    consequents = {rule.consequent[0] for rule in rb.rules}
    if len(consequents) != 1:
        raise ValueError(f"rule base mixes consequent variables: {sorted(consequents)}")
    cvar = consequents.pop()
    cpart = rb.partitions[cvar]
    xs = np.linspace(cpart.lo, cpart.hi, DEFUZZ_SAMPLES)
    aggregate = np.zeros(DEFUZZ_SAMPLES)

    any_evaluable = False
    for rule in rb.rules:
        if any(var not in inputs for var, _ in rule.antecedents):
            continue  # inputs do not cover this rule
        strengths = [
            rb.partitions[var].membership_of(label, inputs[var])
            for var, label in rule.antecedents
        ]
        any_evaluable = True
        firing = min(strengths) if rule.connective is Connective.AND else max(strengths)
        level = firing * rule.confidence
        if level <= 0.0:
            continue
        clipped = np.minimum(cpart.mf(rule.consequent[1]).membership(xs), level)
        aggregate = np.maximum(aggregate, clipped)

    if not any_evaluable:
        needed = sorted({var for rule in rb.rules for var, _ in rule.antecedents})
        raise MissingInput(
            f"inputs {sorted(inputs)} cover no rule (antecedent variables: {needed})"
        )
    total = float(aggregate.sum())
    if total == 0.0:
        raise NoRuleFires("all rules fired with zero strength")
    return float((aggregate * xs).sum() / total)


def rules_text(rb: FuzzyRuleBase) -> str:
    return "\n".join(rule.text() for rule in rb.rules) + "\n"


def _partition_doc(p: FuzzyPartition) -> dict:
    return {
        "variable": p.variable,
        "sets": [
            {"label": mf.label, "a": mf.a, "b": mf.b, "c": mf.c} for mf in p.mfs
        ],
    }


def rules_json(rb: FuzzyRuleBase) -> str:
    doc = {
        "schema": "fuzzy-rules-1",
        "partitions": [
            _partition_doc(rb.partitions[name]) for name in sorted(rb.partitions)
        ],
        "rules": [
            {
                "antecedents": [
                    {"variable": var, "set": label} for var, label in rule.antecedents
                ],
                "connective": rule.connective.value,
                "consequent": {
                    "variable": rule.consequent[0],
                    "set": rule.consequent[1],
                },
                "confidence": rule.confidence,
            }
            for rule in rb.rules
        ],
    }
    return json.dumps(doc, indent=2) + "\n"

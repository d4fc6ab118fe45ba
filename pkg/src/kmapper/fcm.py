"""Minimal fuzzy cognitive map engine.

A model is an ordered set of concepts with a signed weight matrix W,
``W[i][j]`` being the causal influence of concept i on concept j.
Inference iterates ``next_j = f(sum_i state_i * W[i][j])`` where f is
a logistic squash or a bivalent threshold. Weights can be learned from
a concept-state sequence with differential Hebbian updates: weights move
toward the product of concurrent concept *changes*, so co-moving
concepts end up positively coupled and counter-moving ones negatively.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import LengthMismatch, TooFewStates


class SquashMode(Enum):
    LOGISTIC = "logistic"
    BIVALENT = "bivalent"


class RunVerdict(Enum):
    FIXED_POINT = "FixedPoint"
    LIMIT_CYCLE = "LimitCycle"
    BUDGET = "Budget"


@dataclass(frozen=True)
class FcmModel:
    concepts: tuple[str, ...]
    weights: np.ndarray  # n x n, entries in [-1, 1], zero diagonal
    squash: SquashMode = SquashMode.LOGISTIC
    lam: float = 1.0  # logistic steepness

    def __post_init__(self):
        n = len(self.concepts)
        if len(set(self.concepts)) != n or n == 0:
            raise ValueError("concepts must be non-empty and unique")
        if self.weights.shape != (n, n):
            raise ValueError(f"weights must be {n}x{n}, got {self.weights.shape}")
        if np.any(np.abs(self.weights) > 1.0):
            raise ValueError("weights must lie in [-1, 1]")
        if np.any(np.diag(self.weights) != 0.0):
            raise ValueError("diagonal weights must be 0")
        if self.lam <= 0:
            raise ValueError("lambda must be positive")
        self.weights.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.concepts)


def _check_state(model: FcmModel, state) -> np.ndarray:
    s = np.asarray(state, dtype=float)
    if s.shape != (model.n,):
        raise LengthMismatch(f"state length {s.shape} != {model.n} concepts")
    if model.squash is SquashMode.BIVALENT:
        if not np.all(np.isin(s, (0.0, 1.0))):
            raise ValueError("bivalent states must be 0/1 vectors")
    elif np.any((s < 0.0) | (s > 1.0)):
        raise ValueError("logistic states must lie in [0, 1]")
    return s


def step(model: FcmModel, state) -> np.ndarray:
    """One synchronous update of every concept."""
    s = _check_state(model, state)
    activation = s @ model.weights
    if model.squash is SquashMode.BIVALENT:
        return (activation > 0.0).astype(float)
    return 1.0 / (1.0 + np.exp(-model.lam * activation))


@dataclass(frozen=True)
class RunResult:
    trajectory: tuple[np.ndarray, ...]
    verdict: RunVerdict

    @property
    def final(self) -> np.ndarray:
        return self.trajectory[-1]


def run(model: FcmModel, initial, max_iters: int = 1000,
        eps: float = 1e-6) -> RunResult:
    """Iterate until a fixed point, a revisited state, or the budget.

    The trajectory starts with the initial state and records every
    computed state; a fixed point is declared when consecutive states
    differ by less than ``eps`` in max norm, a limit cycle when an
    earlier (non-consecutive) state recurs: exactly for bivalent
    models, within ``eps`` otherwise.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    if eps <= 0:
        raise ValueError("eps must be positive")
    current = _check_state(model, initial)
    trajectory = [current]
    exact = model.squash is SquashMode.BIVALENT
    for _ in range(max_iters):
        nxt = step(model, current)
        trajectory.append(nxt)
        if float(np.max(np.abs(nxt - current))) < eps:
            return RunResult(tuple(trajectory), RunVerdict.FIXED_POINT)
        for earlier in trajectory[:-2]:
            same = (np.array_equal(nxt, earlier) if exact
                    else float(np.max(np.abs(nxt - earlier))) < eps)
            if same:
                return RunResult(tuple(trajectory), RunVerdict.LIMIT_CYCLE)
        current = nxt
    return RunResult(tuple(trajectory), RunVerdict.BUDGET)


def dhl_learn(states: Sequence, eta0: float = 0.1) -> np.ndarray:
    """Differential Hebbian weight learning from a state sequence.

    For consecutive pairs t = 1..T with changes dC(t) = C(t) - C(t-1)
    and decaying rate eta_t = eta0 * (1 - t/T), each weight moves by
    ``eta_t * (dC_i * dC_j - w_ij)`` whenever the source concept i
    changed at t. Weights stay clipped to [-1, 1] with a zero diagonal.
    """
    if len(states) < 3:
        raise TooFewStates(f"need >= 3 states, got {len(states)}")
    if not (0.0 < eta0 <= 1.0):
        raise ValueError("eta0 must lie in (0, 1]")
    arrays = [np.asarray(s, dtype=float) for s in states]
    n = len(arrays[0])
    for s in arrays[1:]:
        if s.shape != (n,):
            raise LengthMismatch("states must all have the same length")

    w = np.zeros((n, n))
    T = len(arrays) - 1
    for t in range(1, T + 1):
        delta = arrays[t] - arrays[t - 1]
        eta = eta0 * (1.0 - t / T)
        gate = delta != 0.0  # update only rows whose source concept moved
        outer = np.outer(delta, delta)
        w = np.where(gate[:, None], w + eta * (outer - w), w)
        np.fill_diagonal(w, 0.0)
        w = np.clip(w, -1.0, 1.0)
    return w


# ----------------------------------------------------------------------
# file formats

def dump_model(model: FcmModel) -> str:
    doc = {
        "schema": "fcm-1",
        "concepts": list(model.concepts),
        "weights": [[float(v) for v in row] for row in model.weights],
        "squash": model.squash.value,
        "lambda": model.lam,
    }
    return json.dumps(doc, indent=2) + "\n"


def model_from_doc(doc) -> FcmModel:
    if not isinstance(doc, dict):
        raise ValueError("model document must be a JSON object")
    if doc.get("schema", "fcm-1") != "fcm-1":
        raise ValueError(f"unsupported model schema '{doc.get('schema')}'")
    for key in ("concepts", "weights"):
        if key not in doc:
            raise ValueError(f"model document lacks '{key}'")
    concepts = doc["concepts"]
    if not isinstance(concepts, list) or not all(isinstance(c, str) for c in concepts):
        raise ValueError("concepts must be a list of names")
    try:
        weights = np.asarray(doc["weights"], dtype=float)
    except (TypeError, ValueError):
        raise ValueError("weights must be a numeric matrix") from None
    try:
        squash = SquashMode(doc.get("squash", "logistic"))
    except ValueError:
        raise ValueError(f"unknown squash '{doc.get('squash')}'") from None
    lam = float(doc.get("lambda", 1.0))
    return FcmModel(tuple(concepts), weights, squash, lam)


def load_model(text: str) -> FcmModel:
    return model_from_doc(json.loads(text))


def trajectory_csv(trajectory: Sequence[np.ndarray], concepts: Sequence[str]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["iteration", *concepts])
    for i, state in enumerate(trajectory):
        writer.writerow([i] + [repr(float(v)) for v in state])
    return out.getvalue()


def parse_state(text: str, n: int) -> np.ndarray:
    """Parse a comma-separated initial state like "1,0" or "0.5,0.5"."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise LengthMismatch(f"state has {len(parts)} values, model has {n} concepts")
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"bad state value: {exc}") from None
    if not all(math.isfinite(v) for v in values):
        raise ValueError("state values must be finite")
    return np.asarray(values)

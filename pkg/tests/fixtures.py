"""Deterministic fixture tables shared across the test modules.

Seeds were chosen with the oracle scripts, not with the package, so
expected classes come with comfortable margins.
"""
import numpy as np

from kmapper import FcmModel, SquashMode, TimeSeriesTable

YEARS = tuple(str(y) for y in range(2004, 2014))

# Ten years of steadily growing figures; income and expenses move in
# near lockstep, employee cost wobbles against net sales.
FINANCIAL_COLUMNS = {
    "income": [120, 135, 149, 166, 181, 196, 214, 230, 247, 263],
    "expenses": [98, 111, 122, 137, 148, 161, 175, 188, 203, 216],
    "net_sales": [104, 118, 128, 146, 158, 170, 188, 200, 216, 230],
    "employee_cost": [32, 37, 36, 45, 47, 49, 58, 57, 66, 68],
    "profit_before_tax": [18, 21, 22, 26, 27, 29, 33, 34, 38, 40],
    "tax": [20, 23, 25, 28, 30, 32, 36, 38, 41, 44],
}


def table_of(columns: dict, labels=None) -> TimeSeriesTable:
    names = tuple(columns)
    rows = np.column_stack([np.asarray(columns[name], dtype=float)
                            for name in names])
    if labels is None:
        labels = tuple(str(i) for i in range(len(rows)))
    return TimeSeriesTable(names, tuple(labels), rows, {})


def csv_of(columns: dict, labels=None, time_column="time") -> str:
    names = list(columns)
    n = len(columns[names[0]])
    if labels is None:
        labels = [str(i) for i in range(n)]
    lines = [",".join([time_column, *names])]
    for i in range(n):
        lines.append(",".join([labels[i]] + [repr(float(columns[v][i]))
                                             for v in names]))
    return "\n".join(lines) + "\n"


def financial_table() -> TimeSeriesTable:
    return table_of(FINANCIAL_COLUMNS, YEARS)


def financial_csv() -> str:
    return csv_of(FINANCIAL_COLUMNS, list(YEARS), time_column="year")


def abc_table() -> TimeSeriesTable:
    """A drives B exactly; C is noise with no trend against either."""
    a = np.arange(1.0, 11.0)
    c = np.random.default_rng(2).uniform(0.0, 10.0, 10)
    return table_of({"A": a, "B": 2.0 * a, "C": c})


def regime_change_columns() -> dict:
    """B = 2A for the first 12 rows, then B decouples from A."""
    a = np.arange(1.0, 25.0)
    b = 2.0 * a
    b[12:] = np.random.default_rng(19).uniform(10.0, 20.0, 12)
    return {"A": a, "B": b}


def stationary_columns(seed: int) -> dict:
    a = np.arange(1.0, 25.0)
    b = 2.0 * a + np.random.default_rng(seed).normal(0.0, 0.3, 24)
    return {"A": a, "B": b}


def weak_positive_pair() -> tuple[np.ndarray, np.ndarray]:
    x = np.arange(1.0, 21.0)
    return x, x + np.random.default_rng(1).normal(0.0, 9.0, 20)


def weak_negative_pair() -> tuple[np.ndarray, np.ndarray]:
    x = np.arange(1.0, 21.0)
    return x, -x + np.random.default_rng(2).normal(0.0, 9.0, 20)


def noisy_strong_negative_pair() -> tuple[np.ndarray, np.ndarray]:
    x = np.arange(1.0, 21.0)
    return x, -3.0 * x + np.random.default_rng(7).normal(0.0, 14.0, 20)


def independent_pair() -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(2)
    return rng.uniform(0.0, 1.0, 20), rng.uniform(0.0, 1.0, 20)


def parabola_pair() -> tuple[np.ndarray, np.ndarray]:
    x = np.linspace(-1.0, 1.0, 64)
    return x, x * x


def yx_table(n: int = 9) -> TimeSeriesTable:
    x = np.arange(1.0, n + 1.0)
    return table_of({"x": x, "y": x.copy()})


def predator_model() -> FcmModel:
    """Two concepts: a threat triggers running, running removes it."""
    weights = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return FcmModel(("threat", "run"), weights, SquashMode.BIVALENT)

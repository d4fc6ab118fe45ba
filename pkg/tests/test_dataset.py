import math

import numpy as np
import pytest

from kmapper import (
    DuplicateVariable,
    EmptyTable,
    NonNumericCell,
    OutOfRange,
    RaggedRow,
    Role,
    SpecExceedsTable,
    TimeSeriesTable,
    UnknownVariable,
    WindowSpec,
    WindowTooSmall,
    load_roles,
    load_table,
    select_window,
    sliding_windows,
    to_csv,
)

CSV = """year,income,expenses
2004,120,98
2005,135,111
2006,149,122
"""


def test_load_table_basic():
    t = load_table(CSV)
    assert t.variables == ("income", "expenses")
    assert t.time_labels == ("2004", "2005", "2006")
    assert len(t) == 3
    assert t.column("income").tolist() == [120.0, 135.0, 149.0]
    assert t.column("expenses").tolist() == [98.0, 111.0, 122.0]


def test_load_table_accepts_streams_and_bytes():
    import io

    t1 = load_table(io.StringIO(CSV))
    t2 = load_table(CSV.encode("utf-8"))
    assert t1.variables == t2.variables == ("income", "expenses")
    assert np.array_equal(t1.values, t2.values)


def test_duplicate_variable():
    with pytest.raises(DuplicateVariable):
        load_table("year,income,income\n2004,1,2\n2005,2,3\n2006,3,4\n")


def test_comma_decimal_rejected_with_location():
    text = 'year,a,b\n2004,"12,5",7\n2005,1,2\n2006,3,4\n'
    with pytest.raises(NonNumericCell) as exc:
        load_table(text)
    assert "12,5" in str(exc.value)


def test_ragged_row():
    with pytest.raises(RaggedRow):
        load_table("year,a,b\n2004,1,2\n2005,1\n")


def test_empty_and_headerless():
    with pytest.raises(EmptyTable):
        load_table("")
    with pytest.raises(EmptyTable):
        load_table("year,a,b\n")
    with pytest.raises(EmptyTable):
        load_table("year\n2004\n")


def test_non_finite_cell_rejected():
    with pytest.raises(NonNumericCell):
        load_table("year,a\n2004,nan\n2005,1\n2006,2\n")
    with pytest.raises(NonNumericCell):
        load_table("year,a\n2004,1e999\n2005,1\n2006,2\n")


def test_missing_cells_stored_as_nan_not_zero():
    t = load_table("year,a,b\n2004,1,\n2005,2,5\n2006,3,6\n")
    col = t.column("b")
    assert math.isnan(col[0])
    assert col[1] == 5.0


def test_csv_round_trip_identity():
    text = "year,a,b\n2004,1.5,\n2005,2.25,5\n2006,3,6.125\n"
    t1 = load_table(text)
    t2 = load_table(to_csv(t1, time_column="year"))
    assert t1.variables == t2.variables
    assert t1.time_labels == t2.time_labels
    assert np.array_equal(t1.values, t2.values, equal_nan=True)


def test_values_are_read_only():
    t = load_table(CSV)
    with pytest.raises(ValueError):
        t.values[0, 0] = 99.0


def _ten_rows():
    cols = np.column_stack([np.arange(10.0), np.arange(10.0) * 2])
    return TimeSeriesTable(("a", "b"), tuple(str(i) for i in range(10)), cols, {})


def test_select_window_identity_slice():
    t = _ten_rows()
    w = select_window(t, 0, 10)
    assert w.variables == t.variables
    assert w.time_labels == t.time_labels
    assert np.array_equal(w.values, t.values)


def test_select_window_interior():
    w = select_window(_ten_rows(), 2, 4)
    assert w.time_labels == ("2", "3", "4", "5")
    assert w.column("a").tolist() == [2.0, 3.0, 4.0, 5.0]


def test_select_window_bounds_and_size():
    t = _ten_rows()
    with pytest.raises(OutOfRange):
        select_window(t, 8, 4)
    with pytest.raises(OutOfRange):
        select_window(t, -1, 4)
    with pytest.raises(WindowTooSmall):
        select_window(t, 0, 2)


def test_sliding_window_counts():
    t = _ten_rows()
    assert len(sliding_windows(t, WindowSpec(4, 1))) == 7
    assert len(sliding_windows(t, WindowSpec(10, 1))) == 1
    starts = [w.time_labels[0] for w in sliding_windows(t, WindowSpec(4, 3))]
    assert starts == ["0", "3", "6"]


def test_sliding_windows_match_select_window():
    t = _ten_rows()
    for i, w in enumerate(sliding_windows(t, WindowSpec(3, 2))):
        expected = select_window(t, 2 * i, 3)
        assert w.time_labels == expected.time_labels
        assert np.array_equal(w.values, expected.values)


def test_window_spec_validation():
    t = _ten_rows()
    with pytest.raises(SpecExceedsTable):
        sliding_windows(t, WindowSpec(11, 1))
    with pytest.raises(WindowTooSmall):
        WindowSpec(2, 1)
    with pytest.raises(WindowTooSmall):
        WindowSpec(4, 0)


def test_roles_parse_and_defaults():
    roles = load_roles("role.income=input\nrole.tax=OUTPUT\n# comment\nwindow=5\n")
    assert roles == {"income": Role.INPUT, "tax": Role.OUTPUT}
    t = load_table(CSV).with_roles({"income": roles["income"],
                                    "expenses": Role.INTERNAL})
    assert t.role("income") is Role.INPUT
    assert t.role("expenses") is Role.INTERNAL
    with pytest.raises(ValueError):
        load_roles("role.income=sideways\n")


def test_roles_for_unknown_variable_rejected():
    with pytest.raises(UnknownVariable):
        load_table(CSV).with_roles({"profit": Role.INPUT})


def test_unknown_variable_access():
    with pytest.raises(UnknownVariable):
        load_table(CSV).column("profit")

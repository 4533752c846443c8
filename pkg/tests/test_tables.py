import pytest
from hypothesis import given
from hypothesis import strategies as st

from carmlab.tables import CountTable

cell = st.text(
    alphabet=st.characters(min_codepoint=32, max_codepoint=126),
    max_size=12,
)


def test_add_row_checks_width():
    t = CountTable(name="t", columns=["a", "b"])
    t.add_row([1, 2])
    with pytest.raises(ValueError):
        t.add_row([1, 2, 3])


def test_column_lookup():
    t = CountTable(name="t", columns=["a", "b"])
    t.add_row([1, 2])
    t.add_row([3, 4])
    assert t.column("b") == ["2", "4"]
    with pytest.raises(ValueError):
        t.column("missing")


def test_csv_dialect():
    t = CountTable(name="t", columns=["bound", "value"])
    t.add_row([1000, "2.93319"])
    assert t.to_csv() == "bound,value\n1000,2.93319\n"


@given(
    st.lists(cell, min_size=1, max_size=5).flatmap(
        lambda cols: st.lists(
            st.lists(cell, min_size=len(cols), max_size=len(cols)), max_size=8
        ).map(lambda rows: (cols, rows))
    )
)
def test_csv_roundtrip(cols_rows):
    cols, rows = cols_rows
    t = CountTable(name="t", columns=cols)
    for row in rows:
        t.add_row(row)
    back = CountTable.from_csv("t", t.to_csv())
    assert back == t


def test_json_shape():
    import json

    t = CountTable(name="t", columns=["a"])
    t.add_row([7])
    data = json.loads(t.to_json())
    assert data == {"name": "t", "columns": ["a"], "rows": [["7"]]}

import pytest

from carmlab.dataset import (
    DISCREPANCY_NOTES,
    DatasetError,
    PaperDataset,
    TABLE_FILES,
    load_dataset,
    table_names,
)


def test_load_validates_cleanly():
    ds = load_dataset()
    assert table_names() == sorted(TABLE_FILES) == list(range(1, 9))
    assert len(ds.table(1).rows) == 19
    assert ds.table(1).columns[0] == "bound_exp"


def test_carmichael_count_resolves_split_row():
    ds = load_dataset()
    assert ds.carmichael_count(6) == 43
    # the count every comparison table uses, not the table-1 total column
    assert ds.carmichael_count(18) == 1401644
    with pytest.raises(KeyError):
        ds.carmichael_count(25)


def test_provenance_notes_cover_whitelisted_rows():
    ds = load_dataset()
    assert "585255" in ds.provenance_note(17)
    assert "1401644" in ds.provenance_note(18)
    assert set(DISCREPANCY_NOTES) == {17, 18}


def _tamper(k, row_idx, col_idx, value):
    ds = PaperDataset.load(validate=False)
    ds.table(k).rows[row_idx][col_idx] = value
    return ds


def test_tampered_row_sum_rejected():
    ds = _tamper(1, 5, 1, "999")
    with pytest.raises(DatasetError, match="per-k sum"):
        ds.validate()


def test_tampered_h_rejected():
    ds = _tamper(2, 4, 1, "1.99999")
    with pytest.raises(DatasetError, match="table 2 h"):
        ds.validate()


def test_tampered_beta_rejected():
    ds = _tamper(5, 10, 2, "0.30000")
    with pytest.raises(DatasetError, match="beta"):
        ds.validate()


def test_tampered_ratio_rejected():
    ds = _tamper(7, 3, 3, "0.99")
    with pytest.raises(DatasetError, match="ratio"):
        ds.validate()


def test_tampered_shared_column_rejected():
    ds = _tamper(8, 2, 2, "9999.99")
    with pytest.raises(DatasetError, match="shared columns"):
        ds.validate()


def test_silently_fixed_discrepancy_rejected():
    # the known inconsistencies are part of the record; editing them away
    # is also tampering
    ds = _tamper(1, 15, 11, "1401644")
    with pytest.raises(DatasetError, match="whitelisted"):
        ds.validate()


def test_unknown_table_raises():
    with pytest.raises(KeyError):
        load_dataset().table(9)

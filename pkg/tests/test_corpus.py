import pytest

from artinalg.corpus import CORPUS, entry_by_id, run_entry
from artinalg.field import GF


def test_entry_lookup():
    assert entry_by_id("R1").id == "R1"
    with pytest.raises(KeyError):
        entry_by_id("R99")


def test_entries_build():
    for entry in CORPUS:
        A = entry.build()
        assert A.dim > 1
        assert A.e >= 1


def test_fibre_product_entry_shape():
    entry = entry_by_id("R4")
    A = entry.build()
    assert A.e == 4
    # dim = dim S + dim T - 1 for a fibre product over the residue field
    assert A.dim == 4 + 4 - 1


def test_report_structure_and_mismatch_detection():
    report = run_entry(entry_by_id("R1"))
    assert report["id"] == "R1"
    assert report["ok"] is True
    assert all(c["ok"] for c in report["checks"])
    names = [c["name"] for c in report["checks"]]
    assert "simple summand of syz_3(k)" in names


def test_field_override():
    report = run_entry(entry_by_id("R1"), field=GF(101))
    assert report["field"] == "F_101"
    assert report["ok"] is True

import json
from pathlib import Path

import pytest

from maxaccel import report as rp
from maxaccel.londonsphere import SphereModel
from maxaccel.physcore import CODATA2018 as C

LABEL_FILE = Path(__file__).parent / "data" / "quoted_values.txt"

FLAGGED_LABELS = {
    "Z0 acceleration fraction of electron MA",
    "Z0 production acceleration",
    "J/psi lower bound",
    "J/psi bound ratio",
    "negligibility density",
}
SENSITIVE_LABELS = {
    "surface velocity v0",
    "E_r bound with field",
    "London surface field",
    "MA to London ratio",
}


@pytest.fixture(scope="module")
def rows():
    return rp.run_report()


def quoted_labels():
    lines = LABEL_FILE.read_text().splitlines()
    return [ln for ln in lines if ln and not ln.startswith("#")]


def test_label_set_is_complete(rows):
    labels = [r.label for r in rows]
    assert labels == list(rp.LABELS)
    assert len(set(labels)) == len(labels)
    assert set(labels) == set(quoted_labels())
    assert len(rows) >= 20


def test_every_row_evaluates(rows):
    for r in rows:
        assert r.computed_value is not None, r.note
        assert not r.note.startswith("evaluation failed")


def test_statuses(rows):
    by = {r.label: r for r in rows}
    assert {r.label for r in rows if r.status == rp.FLAGGED} == FLAGGED_LABELS
    assert {r.label for r in rows if r.status == rp.SENSITIVE} == SENSITIVE_LABELS
    for r in rows:
        if r.status == rp.MATCH:
            assert r.within_tolerance
        if r.status == rp.FLAGGED:
            assert not r.within_tolerance
    assert by["electron MA"].status == rp.MATCH
    assert by["NR threshold mass"].computed_value == pytest.approx(6.767176086019611, rel=1e-8)


def test_status_follows_numbers():
    # a row becomes a match only through its numbers
    spec = rp._Spec("probe", "probe", 2.0, "1", "1", lambda ctx: 2.01, tolerance=0.01)
    assert rp._build(spec, None).status == rp.MATCH
    spec = rp._Spec("probe", "probe", 2.0, "1", "1", lambda ctx: 2.5, tolerance=0.01)
    assert rp._build(spec, None).status == rp.FLAGGED
    spec = rp._Spec("probe", "probe", 2.0, "1", "1", lambda ctx: 1.0, comparison=rp.UPPER)
    assert rp._build(spec, None).status == rp.MATCH
    spec = rp._Spec("probe", "probe", 2.0, "1", "1", lambda ctx: 1.0, comparison=rp.FACTOR, tolerance=3.0)
    row = rp._build(spec, None)
    assert row.relative_deviation == 2.0 and row.status == rp.MATCH


def test_failing_row_is_recorded():
    def boom(ctx):
        raise ZeroDivisionError("x")

    row = rp._build(rp._Spec("probe", "probe", 1.0, "1", "1", boom), None)
    assert row.status == rp.FLAGGED and row.computed_value is None
    assert row.note.startswith("evaluation failed")


def test_json_schema_and_order(rows):
    data = json.loads(rp.rows_to_json(rows))
    assert isinstance(data, list) and len(data) == len(rows)
    for item in data:
        assert tuple(item) == rp.ROW_KEYS


def test_table_format(rows):
    lines = rp.format_table(rows).splitlines()
    assert lines[0].split("\t") == list(rp.ROW_KEYS)
    assert len(lines) == len(rows) + 1
    assert all(len(ln.split("\t")) == len(rp.ROW_KEYS) for ln in lines)


def test_deterministic(rows):
    again = rp.run_report()
    assert rp.rows_to_json(again) == rp.rows_to_json(rows)
    assert rp.format_table(again) == rp.format_table(rows)


def test_sphere_override_changes_sensitive_rows(rows):
    dense = rp.run_report(sphere=SphereModel(n=4e22, const=C))
    by_default = {r.label: r.computed_value for r in rows}
    by_dense = {r.label: r.computed_value for r in dense}
    assert by_dense["electron MA"] == by_default["electron MA"]
    assert by_dense["surface velocity v0"] != by_default["surface velocity v0"]

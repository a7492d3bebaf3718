import pytest

from seu.reports import (
    NOT_DECIDABLE,
    SATISFIED,
    VIOLATED,
    Witness,
    build_report,
)


def witness():
    return Witness.build("example", {"left": "f", "right": "g"}, note="details")


class TestWitness:
    def test_get(self):
        w = witness()
        assert w.get("left") == "f"
        with pytest.raises(KeyError):
            w.get("missing")

    def test_to_document_flattens_detail(self):
        assert witness().to_document() == {
            "kind": "example",
            "left": "f",
            "right": "g",
            "note": "details",
        }

    def test_to_document_omits_empty_note(self):
        w = Witness.build("example", {"k": 1})
        assert "note" not in w.to_document()


class TestVerdictPolicy:
    def test_witnesses_force_violated(self):
        report = build_report("X", [witness()], decided=0, undecided=[{"i": 1}])
        assert report.verdict == VIOLATED
        assert not report.ok

    def test_all_undecided_means_not_decidable(self):
        report = build_report("X", [], decided=0, undecided=[{"i": 1}])
        assert report.verdict == NOT_DECIDABLE

    def test_some_decided_clean_means_satisfied(self):
        report = build_report("X", [], decided=1, undecided=[{"i": 1}])
        assert report.verdict == SATISFIED
        assert report.ok

    def test_vacuous_is_satisfied(self):
        assert build_report("X", [], decided=0).verdict == SATISFIED


def test_report_document_shape():
    report = build_report(
        "X", [witness()], decided=2, undecided=[{"i": 1}], detail={"n": 3}
    )
    doc = report.to_document()
    assert doc["axiom"] == "X"
    assert doc["verdict"] == VIOLATED
    assert doc["witnesses"][0]["kind"] == "example"
    assert doc["undecided"] == [{"i": 1}]
    assert doc["detail"] == {"n": 3}


def test_report_document_omits_empty_sections():
    doc = build_report("X", [], decided=1).to_document()
    assert "undecided" not in doc
    assert "detail" not in doc

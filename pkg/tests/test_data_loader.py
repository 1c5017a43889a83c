import pytest

from data_loader import load_human_judgments, load_responses
from errors import DuplicateRecord, InputParseError
from scorer import Response
from conftest import write_lines


def test_load_responses(tmp_path):
    path = write_lines(tmp_path / "r.tsv", ["runA\tQ1\t1\tFisherman: They called it El Niño",
                                            "runA\tQ1\t2\t\"quoted\" text"])
    assert load_responses(path) == [
        Response("runA", "Q1", 1, "Fisherman: They called it El Niño"),
        Response("runA", "Q1", 2, "\"quoted\" text"),
    ]


def test_load_sample_corpus(sample_paths):
    responses = load_responses(sample_paths["responses"])
    assert len(responses) == 17
    assert len(load_human_judgments(sample_paths["judgments"])) == 17


def test_blank_lines_and_crlf(tmp_path):
    path = tmp_path / "r.tsv"
    path.write_bytes(b"runA\tQ1\t1\tPeru\r\n\r\n\nrunB\tQ1\t1\tChile\r\n")
    assert [r.run_id for r in load_responses(path)] == ["runA", "runB"]


def test_empty_file(tmp_path):
    path = tmp_path / "r.tsv"
    path.write_text("", encoding="utf-8")
    assert load_responses(path) == []


def test_extra_field_on_first_line(tmp_path):
    path = write_lines(tmp_path / "r.tsv", ["runA\tQ1\t1\tPeruvian\tfishermen", "runA\tQ2\t1\tNCSA"])
    with pytest.raises(InputParseError) as info:
        load_responses(path)
    assert info.value.line_number == 1
    assert "found 5" in str(info.value)


def test_extra_field_in_single_line_file(tmp_path):
    path = write_lines(tmp_path / "r.tsv", ["runA\tQ1\t1\tPeruvian\tfishermen"])
    with pytest.raises(InputParseError) as info:
        load_responses(path)
    assert info.value.line_number == 1


def test_missing_field_reports_its_line(tmp_path):
    path = write_lines(tmp_path / "r.tsv", ["runA\tQ1\t1\tPeru", "", "runA\tQ2\t1"])
    with pytest.raises(InputParseError) as info:
        load_responses(path)
    assert info.value.line_number == 3


def test_bad_rank(tmp_path):
    path = write_lines(tmp_path / "r.tsv", ["runA\tQ1\t1\tPeru", "runA\tQ2\tzero\tNCSA"])
    with pytest.raises(InputParseError) as info:
        load_responses(path)
    assert info.value.line_number == 2
    with pytest.raises(InputParseError):
        load_responses(write_lines(tmp_path / "z.tsv", ["runA\tQ1\t0\tPeru"]))


def test_duplicate_response(tmp_path):
    path = write_lines(tmp_path / "r.tsv", ["runA\tQ1\t1\tPeru", "runA\tQ1\t1\tChile"])
    with pytest.raises(DuplicateRecord) as info:
        load_responses(path)
    assert info.value.line_number == 2


def test_run_filter(sample_paths):
    responses = load_responses(sample_paths["responses"], run_filter="runB")
    assert {r.run_id for r in responses} == {"runB"}
    judgments = load_human_judgments(sample_paths["judgments"], run_filter="runB")
    assert {j.run_id for j in judgments} == {"runB"}


def test_judgment_values(tmp_path):
    path = write_lines(tmp_path / "j.tsv", ["runA\tQ1\t1\t1", "runA\tQ1\t2\t0"])
    assert [j.correct for j in load_human_judgments(path)] == [True, False]
    with pytest.raises(InputParseError):
        load_human_judgments(write_lines(tmp_path / "bad.tsv", ["runA\tQ1\t1\tyes"]))


def test_missing_file(tmp_path):
    with pytest.raises(InputParseError):
        load_responses(tmp_path / "missing.tsv")


def test_not_utf8(tmp_path):
    path = tmp_path / "r.tsv"
    path.write_bytes(b"runA\tQ1\t1\t\xff\xfe\n")
    with pytest.raises(InputParseError):
        load_responses(path)

from fractions import Fraction

import pytest

from analytics import (
    HumanJudgment,
    RocCurve,
    RocPoint,
    attach_human_judgments,
    bucket_table,
    kendalls_tau,
    rank_runs,
)
from answer_key import key_statistics, parse_answer_key
from report_generator import (
    DisagreementRecord,
    build_disagreements,
    disagreement_partitions,
    fixed,
    get_available_report_types,
    render_bucket_table,
    render_disagreements_tsv,
    render_judge_summary,
    render_judged_tsv,
    render_key_statistics,
    render_ranking_tsv,
    render_roc_csv,
    render_tau_line,
    report_header,
    save_report_to_file,
)
from scorer import Response, judge_batch
from conftest import make_judged

HEADER = "# test"


@pytest.mark.parametrize("value, places, expected", [
    (Fraction(2, 3), 4, "0.6667"),
    (Fraction(0), 4, "0.0000"),
    (Fraction(100), 4, "100.0000"),
    (Fraction(1, 8), 2, "0.12"),
    (Fraction(3, 8), 2, "0.38"),
    (Fraction(-1, 2), 1, "-0.5"),
    (Fraction(5), 0, "5"),
])
def test_fixed(value, places, expected):
    assert fixed(value, places) == expected


def test_report_header(stops):
    header = report_header(Fraction(1, 4), "mrr", stops)
    assert header.startswith("# qa-judge ")
    assert "threshold=1/4" in header
    assert "metric=mrr" in header
    assert header.endswith(f"stoplist={stops.digest()}")


def test_judged_tsv_worked_example(stops):
    key = parse_answer_key(["Q1\tPeruvian fishermen"], stops)
    batch = judge_batch([Response("runA", "Q1", 1, "Fisherman: They called it El Niño")], key, Fraction(1, 4), stops)
    lines = render_judged_tsv(batch.judged, HEADER).splitlines()
    assert lines[0] == HEADER
    assert lines[1] == "runA\tQ1\t1\tFisherman: They called it El Niño\t1/2\t1\t2\t1"


def test_judge_summary_counts_errors(stops):
    key = parse_answer_key(["Q1\tPeruvian fishermen"], stops)
    responses = [Response("r", "Q1", 1, "Peru"), Response("r", "Q1", 2, "Chile"), Response("r", "Q9", 1, "x")]
    summary = render_judge_summary(judge_batch(responses, key, Fraction(1, 4), stops))
    assert summary.splitlines() == ["3 responses", "correct: 1", "incorrect: 1", "unknown-question errors: 1"]


def test_key_statistics_rendering(stops):
    key = parse_answer_key(["Q1\tPeruvian fishermen", "Q2\tNCSA; Supercomputing Center | Netscape"], stops)
    text = render_key_statistics(key_statistics(key))
    assert "answers per question: 1.50" in text
    assert "forms per answer: 1.25" in text


def test_roc_csv():
    curve = RocCurve(points=(
        RocPoint(None, Fraction(100), Fraction(100)),
        RocPoint(Fraction(0), Fraction(8, 9) * 100, Fraction(3, 8) * 100),
        RocPoint(Fraction(1), Fraction(0), Fraction(0)),
    ))
    lines = render_roc_csv(curve, HEADER).splitlines()
    assert lines == [
        HEADER,
        "threshold,hit_rate_pct,false_alarm_pct",
        "accept-all,100.0000,100.0000",
        "0.0000,88.8889,37.5000",
        "1.0000,0.0000,0.0000",
    ]


def test_roc_csv_reference_rows():
    curve = RocCurve(points=(RocPoint(None, Fraction(100), Fraction(100)),))
    text = render_roc_csv(curve, HEADER, best=[(Fraction(100), Fraction(0))], worst=[(Fraction(50), Fraction(50))])
    assert "best,100.0000,0.0000" in text
    assert text.endswith("worst,50.0000,50.0000\n")


def test_bucket_table_rendering():
    judged = [make_judged(0, 1, human=False), make_judged(1, 2, human=True, rank=2), make_judged(1, 1, human=True, rank=3)]
    text = render_bucket_table(bucket_table(judged), HEADER)
    assert text.startswith(HEADER + "\n")
    assert "Recall" in text and "% Correct" in text
    assert "TOTAL" in text
    assert "100.0%" in text
    assert "50.0%" in text


def test_ranking_and_tau_lines():
    auto_scores = {"A": Fraction(4, 5), "B": Fraction(4, 5), "C": Fraction(1, 2)}
    human_scores = {"A": Fraction(1), "B": Fraction(3, 5), "C": Fraction(1, 10)}
    auto, human = rank_runs(auto_scores), rank_runs(human_scores)
    assert render_ranking_tsv(auto, auto_scores, HEADER).splitlines()[1:] == [
        "1\tA\t0.8000", "2\tB\t0.8000", "3\tC\t0.5000",
    ]
    assert render_tau_line(kendalls_tau(auto, human)) == "n=3 concordant=2 discordant=0 tau=0.6667"


def test_disagreements_sorted_and_partitioned():
    judged = [
        make_judged(1, 2, human=False, run_id="runC", question_id="Q5", text="billions"),
        make_judged(0, 1, human=True, run_id="runA", question_id="Q4", text="Chomolungma"),
        make_judged(1, 1, human=True, run_id="runA", question_id="Q1"),
        make_judged(1, 2, human=False, run_id="runB", question_id="Q5", text="1.3 billion"),
    ]
    records = build_disagreements(judged)
    assert [(d.judged.response.question_id, d.judged.response.run_id) for d in records] == [
        ("Q4", "runA"), ("Q5", "runB"), ("Q5", "runC"),
    ]
    assert disagreement_partitions(records) == (1, 2)

    lines = render_disagreements_tsv(records, HEADER).splitlines()
    assert lines[1] == "Q4\trunA\t1\t0/1\t0.00\t0\t1\tChomolungma\t"
    assert lines[2].split("\t")[4] == "0.26 to 0.50"


def test_disagreement_record_needs_a_disagreement():
    with pytest.raises(ValueError):
        DisagreementRecord(make_judged(1, 1, human=True), "1.00")
    with pytest.raises(ValueError):
        DisagreementRecord(make_judged(1, 1, human=None), "1.00")


def test_disagreements_after_join():
    judged = [make_judged(1, 1, run_id="A", question_id="q1"), make_judged(0, 1, run_id="A", question_id="q2")]
    humans = [HumanJudgment("A", "q1", 1, True), HumanJudgment("A", "q2", 1, True)]
    records = build_disagreements(attach_human_judgments(judged, humans))
    assert len(records) == 1
    assert records[0].judged.response.question_id == "q2"


def test_save_report_is_atomic(tmp_path):
    target = tmp_path / "out" / "report.tsv"
    save_report_to_file("first\n", target)
    save_report_to_file("second\n", target)
    assert target.read_text(encoding="utf-8") == "second\n"
    assert [p.name for p in target.parent.iterdir()] == ["report.tsv"]


def test_available_report_types():
    assert set(get_available_report_types()) == {
        "judge", "roc", "rank", "disagreements", "buckets", "key-stats", "agreement",
    }

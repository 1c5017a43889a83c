"""
Report rendering for judging runs: judged responses, ROC data, bucket
tables, rankings, Kendall's Tau lines and disagreement listings.
"""

import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import pandas as pd

from analytics import bucket_label
from config import TOOL_NAME, TOOL_VERSION
from scorer import JudgedResponse


@dataclass(frozen=True)
class DisagreementRecord:
    judged: JudgedResponse
    bucket: str
    category: str = ""  # filled in by hand when the failures are analysed

    def __post_init__(self):
        if self.judged.human is None or self.judged.auto.correct == self.judged.human:
            raise ValueError("a disagreement needs a human judgment that differs from the automatic one")


def fixed(value, places=4):
    """Exact decimal rendering of a Fraction (round half to even)"""
    scaled = round(Fraction(value) * 10 ** places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def report_header(threshold, metric, stops):
    """First line of every written report, so numbers can be reproduced"""
    return (f"# {TOOL_NAME} {TOOL_VERSION} threshold={threshold.numerator}/{threshold.denominator} "
            f"metric={metric} stoplist={stops.digest()}")


def _lines(header, rows):
    return "".join(line + "\n" for line in [header, *rows])


# One line per judged response: run, question, rank, text, recall, matched, key size, 1/0

def render_judged_tsv(judged, header):
    rows = []
    for record in judged:
        r = record.response
        rows.append("\t".join([
            r.run_id, r.question_id, str(r.rank), r.text,
            record.score.as_ratio, str(record.score.matched), str(record.score.key_size),
            "1" if record.auto.correct else "0",
        ]))
    return _lines(header, rows)


# Counts printed after judging

def render_judge_summary(batch):
    correct = sum(1 for record in batch.judged if record.auto.correct)
    lines = [
        f"{len(batch.judged) + len(batch.errors)} responses",
        f"correct: {correct}",
        f"incorrect: {len(batch.judged) - correct}",
        f"unknown-question errors: {len(batch.errors)}",
    ]
    return "\n".join(lines)


def render_key_statistics(stats):
    return "\n".join([
        f"answers per question: {fixed(stats.answers_per_question, 2)}",
        f"forms per answer: {fixed(stats.forms_per_answer, 2)}",
        f"content words per form: {fixed(stats.content_words_per_form, 2)}",
    ])


# ROC and agreement sweeps

def render_roc_csv(curve, header, best=None, worst=None):
    """threshold,hit_rate_pct,false_alarm_pct; reference curves appended as 'best'/'worst' rows"""
    rows = []
    for point in curve.points:
        threshold = "accept-all" if point.threshold is None else fixed(point.threshold)
        rows.append((threshold, fixed(point.hit_rate), fixed(point.false_alarm_rate)))
    for name, reference in (("best", best), ("worst", worst)):
        for hit_rate, false_alarm_rate in reference or []:
            rows.append((name, fixed(hit_rate), fixed(false_alarm_rate)))

    frame = pd.DataFrame(rows, columns=["threshold", "hit_rate_pct", "false_alarm_pct"])
    return header + "\n" + frame.to_csv(index=False, lineterminator="\n")


# Agreement percentage at every threshold of the sweep

def render_agreement_csv(curve, header):
    frame = pd.DataFrame(
        [(fixed(t), fixed(100 * fraction)) for t, fraction in curve],
        columns=["threshold", "agreement_pct"],
    )
    return header + "\n" + frame.to_csv(index=False, lineterminator="\n")


# Agreement and the four cells of the confusion matrix, as printed by the agreement command

def render_confusion(result):
    c = result.confusion
    return "\n".join([
        f"agreement: {fixed(100 * result.agree_fraction, 2)}%",
        f"human correct, auto correct: {c.both_correct}",
        f"human correct, auto incorrect: {c.human_only}",
        f"human incorrect, auto correct: {c.auto_only}",
        f"human incorrect, auto incorrect: {c.both_incorrect}",
    ])


# Bucket table

def render_bucket_table(table, header):
    """Text table: counts and column percentages per recall interval"""
    rows = [*table.rows, table.totals]
    frame = pd.DataFrame(
        [(row.label, row.incorrect, f"{fixed(row.pct_incorrect, 1)}%",
          row.correct, f"{fixed(row.pct_correct, 1)}%") for row in rows],
        columns=["Recall", "# Incorrect", "% Incorrect", "# Correct", "% Correct"],
    )
    return header + "\n" + frame.to_string(index=False) + "\n"


# Rankings: position, run id and score, best run first

def render_ranking_tsv(ranking, scores, header):
    rows = [f"{position}\t{run_id}\t{fixed(scores[run_id])}"
            for position, run_id in enumerate(ranking.order, start=1)]
    return _lines(header, rows)


# Summary line comparing the automatic and human rankings

def render_tau_line(comparison):
    return (f"n={comparison.n} concordant={comparison.concordant} "
            f"discordant={comparison.discordant} tau={fixed(comparison.tau)}")


# Disagreements

def build_disagreements(judged):
    """Every record where the two judgments differ, by (question, run, rank)"""
    records = [DisagreementRecord(record, bucket_label(record.score.value))
               for record in judged if record.auto.correct != record.human]
    return sorted(records, key=lambda d: (d.judged.response.question_id,
                                          d.judged.response.run_id,
                                          d.judged.response.rank))


def disagreement_partitions(records):
    """(human correct but at/below threshold, human incorrect but above threshold)"""
    missed = sum(1 for d in records if d.judged.human)
    false_alarms = len(records) - missed
    return missed, false_alarms


# Category column is left empty for hand annotation

def render_disagreements_tsv(records, header):
    rows = []
    for d in records:
        r = d.judged.response
        rows.append("\t".join([
            r.question_id, r.run_id, str(r.rank), d.judged.score.as_ratio, d.bucket,
            "1" if d.judged.auto.correct else "0", "1" if d.judged.human else "0",
            r.text, d.category,
        ]))
    return _lines(header, rows)


def save_report_to_file(report, filename):
    """Write a report atomically: temp file in the same directory, then rename"""
    path = Path(filename)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(report)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    return path


# Returns a dictionary listing all commands with their descriptions

def get_available_report_types():
    """Return available report types"""
    return {
        "judge": "Score and judge every response against the answer key",
        "roc": "Hit rate vs false-alarm rate over a threshold sweep",
        "rank": "Rank runs by automatic and human judgments, compare with Kendall's Tau",
        "disagreements": "Responses where the automatic and human judgments differ",
        "buckets": "Human judgments by recall interval",
        "key-stats": "Answers per question, forms per answer, content words per form",
        "agreement": "Agreement with human judgments across thresholds",
    }

"""
Load response and human-judgment TSV files
"""

import csv
import io
from pathlib import Path

import pandas as pd

from analytics import HumanJudgment
from errors import DuplicateRecord, InputParseError
from scorer import Response

RESPONSE_COLUMNS = ["run_id", "question_id", "rank", "text"]
JUDGMENT_COLUMNS = ["run_id", "question_id", "rank", "judgment"]


def _read_tsv(path, columns, what):
    """Read a headerless TSV into a DataFrame of strings (file line number as index)"""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            text = f.read()
    except FileNotFoundError:
        raise InputParseError(f"{what} file not found", path)
    except UnicodeDecodeError as e:
        raise InputParseError(f"{what} file is not UTF-8 ({e.reason})", path)

    # field counts are checked here, pandas would take an extra field as an index
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for line_number, line in enumerate(lines, start=1):
        fields = line.count("\t") + 1
        if line.strip() and fields != len(columns):
            raise InputParseError(f"expected {len(columns)} tab-separated fields, found {fields}",
                                  path, line_number)
    numbered = [(line_number, line) for line_number, line in enumerate(lines, start=1) if line.strip()]
    if not numbered:
        return pd.DataFrame(columns=columns)

    try:
        frame = pd.read_csv(
            io.StringIO("".join(line + "\n" for _, line in numbered)),
            sep="\t",
            header=None,
            names=columns,
            index_col=False,
            dtype=str,
            quoting=csv.QUOTE_NONE,  # quotes in response text are literal
            na_filter=False,
            engine="python",
        )
    except pd.errors.ParserError as e:
        raise InputParseError(f"malformed {what} file ({e})", path)

    if len(frame) != len(numbered):
        raise InputParseError(f"malformed {what} file", path)
    frame.index = [line_number for line_number, _ in numbered]

    for line_number, row in frame.iterrows():
        if any(not isinstance(value, str) for value in row):
            raise InputParseError(f"expected {len(columns)} tab-separated fields", path, line_number)
    return frame


def _parse_rank(value, path, line_number):
    try:
        rank = int(value)
    except ValueError:
        raise InputParseError(f"rank {value!r} is not an integer", path, line_number)
    if rank < 1:
        raise InputParseError(f"rank {rank} must be at least 1", path, line_number)
    return rank


def _check_unique(record, seen, path, line_number):
    if record.record_key in seen:
        raise DuplicateRecord(f"duplicate record for {record.record_key}", path, line_number)
    seen.add(record.record_key)


def load_responses(path, run_filter=None):
    """Read run_id, question_id, rank, response text"""
    frame = _read_tsv(path, RESPONSE_COLUMNS, "responses")
    responses = []
    seen = set()
    for line_number, row in frame.iterrows():
        run_id = row["run_id"].strip()
        question_id = row["question_id"].strip()
        if not run_id or not question_id:
            raise InputParseError("empty run id or question id", path, line_number)
        response = Response(
            run_id=run_id,
            question_id=question_id,
            rank=_parse_rank(row["rank"].strip(), path, line_number),
            text=row["text"].rstrip("\r"),
        )
        _check_unique(response, seen, path, line_number)
        if run_filter and not run_id.startswith(run_filter):
            continue
        responses.append(response)
    return responses


def load_human_judgments(path, run_filter=None):
    """Read run_id, question_id, rank, judgment (0 or 1)"""
    frame = _read_tsv(path, JUDGMENT_COLUMNS, "judgments")
    judgments = []
    seen = set()
    for line_number, row in frame.iterrows():
        value = row["judgment"].strip()
        if value not in ("0", "1"):
            raise InputParseError(f"judgment {value!r} must be 0 or 1", path, line_number)
        judgment = HumanJudgment(
            run_id=row["run_id"].strip(),
            question_id=row["question_id"].strip(),
            rank=_parse_rank(row["rank"].strip(), path, line_number),
            correct=value == "1",
        )
        _check_unique(judgment, seen, path, line_number)
        if run_filter and not judgment.run_id.startswith(run_filter):
            continue
        judgments.append(judgment)
    return judgments

"""Shared fixtures for the judge's tests"""

from fractions import Fraction

import pytest

from config import DATA_DIR
from scorer import JudgedResponse, Judgment, RecallScore, Response
from text_norm import StopWordList


@pytest.fixture(scope="session")
def stops():
    return StopWordList.default()


@pytest.fixture
def sample_paths():
    return {
        "key": DATA_DIR / "sample_key.tsv",
        "responses": DATA_DIR / "sample_responses.tsv",
        "judgments": DATA_DIR / "sample_judgments.tsv",
    }


def make_judged(matched, key_size, human=None, threshold=Fraction(1, 4),
                run_id="run", question_id="q", rank=1, text=""):
    """A judged response with a given recall, built without a key"""
    score = RecallScore(Fraction(matched, key_size), 0, 0, matched, key_size)
    return JudgedResponse(
        response=Response(run_id, question_id, rank, text),
        score=score,
        auto=Judgment(score.value > threshold),
        human=human,
    )


def write_lines(path, lines):
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path

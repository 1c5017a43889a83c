from fractions import Fraction

import pytest

from config import Config, parse_threshold
from errors import InvalidThreshold, UsageError


@pytest.mark.parametrize("text, expected", [
    ("1/4", Fraction(1, 4)),
    ("0.25", Fraction(1, 4)),
    (" 2/8 ", Fraction(1, 4)),
    ("0", Fraction(0)),
    ("1", Fraction(1)),
    ("0.1", Fraction(1, 10)),
])
def test_parse_threshold(text, expected):
    assert parse_threshold(text) == expected


@pytest.mark.parametrize("text", ["5/4", "-0.1", "1/0", "quarter", "", "inf", "-inf", "nan"])
def test_parse_threshold_rejects(text):
    with pytest.raises(InvalidThreshold):
        parse_threshold(text)


def test_config_validation():
    with pytest.raises(UsageError):
        Config(roc_steps=0)
    with pytest.raises(UsageError):
        Config(metric="map")


def test_output_for(tmp_path):
    assert Config(out_path=tmp_path / "x.tsv").output_for("judge") == tmp_path / "x.tsv"
    assert Config().output_for("roc").name == "roc.csv"

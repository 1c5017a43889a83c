"""
Configuration for the answer-key judge
"""

import os
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from errors import InvalidThreshold, UsageError

# Load environment variables
load_dotenv()

TOOL_NAME = "qa-judge"
TOOL_VERSION = "0.1.0"

BASE_DIR = Path(__file__).resolve().parent
DATA_DIR = BASE_DIR / "data"
DEFAULT_STOPWORDS_PATH = DATA_DIR / "stopwords_english.txt"

METRICS = ("mrr", "first-answer")

# Judging defaults
THRESHOLD = os.getenv("QAJUDGE_THRESHOLD", "1/4").strip()
METRIC = os.getenv("QAJUDGE_METRIC", "mrr").strip()
ROC_STEPS = int(os.getenv("QAJUDGE_ROC_STEPS", "100"))
STOPWORDS_PATH = os.getenv("QAJUDGE_STOPWORDS", "").strip() or None

# Output / logging
OUTPUT_DIR = os.getenv("QAJUDGE_OUTPUT_DIR", ".").strip()
LOG_FILE = os.getenv("QAJUDGE_LOG_FILE", "").strip() or None
QUIET = os.getenv("QAJUDGE_QUIET", "").strip().lower() in ("1", "true", "yes")

# File each command writes when --out is not given
DEFAULT_OUTPUTS = {
    "judge": "judged.tsv",
    "roc": "roc.csv",
    "rank": "ranking.tsv",
    "disagreements": "disagreements.tsv",
    "buckets": "buckets.txt",
    "agreement": "agreement.csv",
}


def parse_threshold(text):
    """Parse "m/k" or a decimal into an exact Fraction within [0, 1]"""
    raw = str(text).strip()
    try:
        if "/" in raw:
            numerator, denominator = raw.split("/", 1)
            value = Fraction(int(numerator), int(denominator))
        else:
            # Decimal keeps "0.25" exact where float would not
            value = Fraction(Decimal(raw))
    except (ValueError, ZeroDivisionError, InvalidOperation, OverflowError):
        raise InvalidThreshold(f"threshold {raw!r} is not a rational 'm/k' or a decimal")

    if not 0 <= value <= 1:
        raise InvalidThreshold(f"threshold {raw!r} is outside [0, 1]")
    return value


@dataclass(frozen=True)
class Config:
    """Settings for one command run; flags layered over the environment"""

    key_path: Optional[Path] = None
    responses_path: Optional[Path] = None
    judgments_path: Optional[Path] = None
    threshold: Fraction = Fraction(1, 4)
    stopword_path: Optional[Path] = None
    metric: str = "mrr"
    roc_steps: int = 100
    run_filter: Optional[str] = None
    out_path: Optional[Path] = None
    key_stats: bool = False
    best_curve: bool = False
    worst_curve: bool = False
    log_file: Optional[Path] = None
    quiet: bool = False

    def __post_init__(self):
        if not 0 <= self.threshold <= 1:
            raise InvalidThreshold(f"threshold {self.threshold} is outside [0, 1]")
        if self.roc_steps < 1:
            raise UsageError(f"--roc-steps must be at least 1, got {self.roc_steps}")
        if self.metric not in METRICS:
            raise UsageError(f"unknown metric {self.metric!r}; choose from {', '.join(METRICS)}")

    def output_for(self, command):
        """Where a command writes its report"""
        if self.out_path is not None:
            return Path(self.out_path)
        return Path(OUTPUT_DIR) / DEFAULT_OUTPUTS[command]

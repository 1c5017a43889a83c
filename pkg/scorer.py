"""
Answer-key word recall scoring and thresholded judgments
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional

from errors import InvalidThreshold, UnknownQuestion
from text_norm import normalize


@dataclass(frozen=True)
class Response:
    run_id: str
    question_id: str
    rank: int
    text: str

    @property
    def record_key(self):
        return (self.run_id, self.question_id, self.rank)


@dataclass(frozen=True)
class RecallScore:
    value: Fraction
    best_answer_index: int
    best_form_index: int
    matched: int
    key_size: int

    def __post_init__(self):
        if self.key_size < 1 or not 0 <= self.matched <= self.key_size:
            raise ValueError(f"bad recall counts {self.matched}/{self.key_size}")
        if self.value != Fraction(self.matched, self.key_size):
            raise ValueError("recall value does not match its counts")

    @property
    def as_ratio(self):
        """Unreduced "matched/key_size" text, as written to judged files"""
        return f"{self.matched}/{self.key_size}"


@dataclass(frozen=True)
class Judgment:
    correct: bool


@dataclass(frozen=True)
class JudgedResponse:
    response: Response
    score: RecallScore
    auto: Judgment
    human: Optional[bool] = None


@dataclass
class BatchResult:
    judged: List[JudgedResponse]
    errors: List[UnknownQuestion]


def form_recall(response_terms, form):
    """Fraction of the form's terms present in the response"""
    return Fraction(response_terms.overlap(form.terms), len(form.terms))


def score_terms(response_terms, answers):
    """Best recall over every form of every answer; first form wins ties"""
    best = None
    for answer_index, answer in enumerate(answers):
        for form_index, form in enumerate(answer.forms):
            matched = response_terms.overlap(form.terms)
            value = Fraction(matched, len(form.terms))
            if best is None or value > best.value:
                best = RecallScore(value, answer_index, form_index, matched, len(form.terms))
    return best


def score_response(resp, key, stops):
    if resp.question_id not in key:
        raise UnknownQuestion(resp)
    response_terms = normalize(resp.text, stops)
    return score_terms(response_terms, key.answers_for(resp.question_id))


def _check_threshold(threshold):
    if not 0 <= threshold <= 1:
        raise InvalidThreshold(f"threshold {threshold} is outside [0, 1]")


def judge(score, threshold):
    """Correct iff recall is strictly above the threshold"""
    _check_threshold(threshold)
    return Judgment(correct=score.value > threshold)


def judge_batch(responses, key, threshold, stops):
    """Score and judge responses in order; unknown questions go to `errors`"""
    _check_threshold(threshold)
    result = BatchResult(judged=[], errors=[])
    for resp in responses:
        try:
            score = score_response(resp, key, stops)
        except UnknownQuestion as e:
            result.errors.append(e)
            continue
        result.judged.append(JudgedResponse(resp, score, judge(score, threshold)))
    return result


def rejudge(judged, threshold):
    """Re-threshold already scored responses"""
    _check_threshold(threshold)
    return [replace(record, auto=judge(record.score, threshold)) for record in judged]

"""
Answer-key files: parsing, validation, serialization and key statistics.

One question per line:

    QID<TAB>answer form; other form | second answer

"|" separates different answers, ";" separates alternative forms of one
answer. Lines starting with "#" are comments.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, NamedTuple, Tuple

import run_log
from errors import DuplicateQuestionId, EmptyAnswerSet, InputParseError, MissingTab
from text_norm import NormalizedTermSet, normalize

ANSWER_SEPARATOR = "|"
FORM_SEPARATOR = ";"


@dataclass(frozen=True)
class AnswerForm:
    raw: str
    terms: NormalizedTermSet

    def __post_init__(self):
        if len(self.terms) == 0:
            raise ValueError(f"answer form {self.raw!r} has no content terms")


@dataclass(frozen=True)
class Answer:
    forms: Tuple[AnswerForm, ...]

    def __post_init__(self):
        if not self.forms:
            raise ValueError("an answer needs at least one form")


@dataclass(frozen=True)
class AnswerKey:
    entries: Mapping[str, Tuple[Answer, ...]]
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    def __contains__(self, question_id):
        return question_id in self.entries

    def __len__(self):
        return len(self.entries)

    def answers_for(self, question_id):
        return self.entries[question_id]

    def question_ids(self):
        return list(self.entries)


class KeyStatistics(NamedTuple):
    answers_per_question: Fraction
    forms_per_answer: Fraction
    content_words_per_form: Fraction


def parse_key_line(line, stops, line_number=None, source=None, warnings=None):
    """Parse one "QID<TAB>answers" record into (question id, answers)"""
    record = line.rstrip("\r\n")
    if "\t" not in record:
        raise MissingTab("no tab between question id and answers", source, line_number)

    question_id, answers_text = record.split("\t", 1)
    question_id = question_id.strip()
    if not question_id:
        raise MissingTab("empty question id", source, line_number)

    answers = []
    for answer_text in answers_text.split(ANSWER_SEPARATOR):
        forms = []
        for form_text in answer_text.split(FORM_SEPARATOR):
            raw = form_text.strip()
            terms = normalize(raw, stops)
            if len(terms) == 0:
                message = f"{question_id}: form {raw!r} has no content words, skipped"
                if line_number is not None:
                    message = f"line {line_number}: {message}"
                if warnings is not None:
                    warnings.append(message)
                continue
            forms.append(AnswerForm(raw=raw, terms=terms))
        if forms:
            answers.append(Answer(forms=tuple(forms)))

    if not answers:
        raise EmptyAnswerSet(f"{question_id}: every answer form is empty after normalization",
                             source, line_number)
    return question_id, answers


def parse_answer_key(lines, stops, source=None):
    """Parse the lines of an answer-key file"""
    entries = {}
    warnings = []
    for line_number, line in enumerate(lines, start=1):
        record = line.rstrip("\r\n")
        if not record.strip() or record.lstrip().startswith("#"):
            continue

        question_id, answers = parse_key_line(record, stops, line_number, source, warnings)
        if question_id in entries:
            raise DuplicateQuestionId(f"question {question_id!r} appears twice", source, line_number)
        entries[question_id] = tuple(answers)

    return AnswerKey(entries=entries, warnings=tuple(warnings))


def load_answer_key(path, stops):
    """Read and parse an answer-key file, logging skipped forms"""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            lines = f.read().splitlines()
    except FileNotFoundError:
        raise InputParseError("answer-key file not found", path)
    except UnicodeDecodeError as e:
        raise InputParseError(f"answer-key file is not UTF-8 ({e.reason})", path)

    key = parse_answer_key(lines, stops, source=path)
    for message in key.warnings:
        run_log.warn(message)
    return key


def serialize_answer_key(key):
    """Write a key back out in the file grammar"""
    lines = []
    for question_id, answers in key.entries.items():
        answers_text = f" {ANSWER_SEPARATOR} ".join(
            f"{FORM_SEPARATOR} ".join(form.raw for form in answer.forms) for answer in answers
        )
        lines.append(f"{question_id}\t{answers_text}")
    return "".join(line + "\n" for line in lines)


def key_statistics(key):
    """Mean answers per question, forms per answer and content words per form"""
    if len(key) == 0:
        raise ValueError("key_statistics needs a non-empty key")

    n_questions = len(key)
    n_answers = 0
    n_forms = 0
    n_terms = 0
    forms_per_answer_by_question = []

    for answers in key.entries.values():
        question_forms = sum(len(answer.forms) for answer in answers)
        n_answers += len(answers)
        n_forms += question_forms
        n_terms += sum(len(form.terms) for answer in answers for form in answer.forms)
        forms_per_answer_by_question.append(Fraction(question_forms, len(answers)))

    return KeyStatistics(
        answers_per_question=Fraction(n_answers, n_questions),
        forms_per_answer=sum(forms_per_answer_by_question, Fraction(0)) / n_questions,
        content_words_per_form=Fraction(n_terms, n_forms),
    )

"""
Evaluating the automatic judge against human judgments: agreement,
recall-bucket tables, ROC sweeps, per-run scores and Kendall's Tau.
"""

from collections import defaultdict
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from errors import (
    DuplicateRank,
    InputParseError,
    MismatchedRunSets,
    MissingHumanJudgment,
    NoHumanCorrect,
    NoHumanIncorrect,
    TooFewRuns,
    UsageError,
)
from scorer import rejudge

HUNDRED = Fraction(100)

BUCKET_LABELS = ("0.00", "0.01 to 0.25", "0.26 to 0.50", "0.51 to 0.75", "0.76 to 0.99", "1.00")


@dataclass(frozen=True)
class HumanJudgment:
    run_id: str
    question_id: str
    rank: int
    correct: bool

    @property
    def record_key(self):
        return (self.run_id, self.question_id, self.rank)


@dataclass(frozen=True)
class Confusion:
    """Counts indexed as (human correct, auto correct)"""

    both_correct: int = 0
    human_only: int = 0
    auto_only: int = 0
    both_incorrect: int = 0

    @property
    def total(self):
        return self.both_correct + self.human_only + self.auto_only + self.both_incorrect

    def cell(self, human, auto):
        return {
            (True, True): self.both_correct,
            (True, False): self.human_only,
            (False, True): self.auto_only,
            (False, False): self.both_incorrect,
        }[(human, auto)]


@dataclass(frozen=True)
class Agreement:
    agree_fraction: Fraction
    confusion: Confusion


@dataclass(frozen=True)
class BucketRow:
    label: str
    incorrect: int
    pct_incorrect: Fraction
    correct: int
    pct_correct: Fraction


@dataclass(frozen=True)
class BucketTable:
    rows: Tuple[BucketRow, ...]
    totals: BucketRow


@dataclass(frozen=True)
class RocPoint:
    threshold: Optional[Fraction]  # None marks the accept-all point
    hit_rate: Fraction
    false_alarm_rate: Fraction


@dataclass(frozen=True)
class RocCurve:
    points: Tuple[RocPoint, ...]


@dataclass(frozen=True)
class RunRanking:
    order: Tuple[str, ...]
    tie_groups: Tuple[frozenset, ...]

    def group_index(self):
        """run_id -> position of its tie group (tied runs share an index)"""
        return {run_id: i for i, group in enumerate(self.tie_groups) for run_id in group}


@dataclass(frozen=True)
class RankingComparison:
    ranking_a: RunRanking
    ranking_b: RunRanking
    concordant: int
    discordant: int
    tied: int
    tau: Fraction

    @property
    def n(self):
        return len(self.ranking_a.order)


# ---------------------------------------------------------------------------
# joining human judgments
# ---------------------------------------------------------------------------

def attach_human_judgments(judged, humans):
    """Copy each human judgment onto the judged response with the same key"""
    by_key = {}
    for human in humans:
        if human.record_key in by_key:
            raise InputParseError(f"duplicate human judgment for {human.record_key}")
        by_key[human.record_key] = human.correct

    joined = []
    for record in judged:
        human = by_key.get(record.response.record_key)
        joined.append(replace(record, human=human))
    return joined


def _require_human(judged):
    for record in judged:
        if record.human is None:
            r = record.response
            raise MissingHumanJudgment(
                f"no human judgment for run {r.run_id!r}, question {r.question_id!r}, rank {r.rank}"
            )


# ---------------------------------------------------------------------------
# agreement and buckets
# ---------------------------------------------------------------------------

def confusion_matrix(judged):
    _require_human(judged)
    counts = defaultdict(int)
    for record in judged:
        counts[(record.human, record.auto.correct)] += 1
    return Confusion(
        both_correct=counts[(True, True)],
        human_only=counts[(True, False)],
        auto_only=counts[(False, True)],
        both_incorrect=counts[(False, False)],
    )


def agreement(judged):
    """Fraction of records where the automatic and human judgments agree"""
    confusion = confusion_matrix(judged)
    if confusion.total == 0:
        raise MissingHumanJudgment("no judged records to compare")
    agreed = confusion.both_correct + confusion.both_incorrect
    return Agreement(Fraction(agreed, confusion.total), confusion)


def agreement_curve(judged, thresholds):
    """Agreement at each threshold, as (threshold, agree_fraction) pairs"""
    _require_human(judged)
    return [(t, agreement(rejudge(judged, t)).agree_fraction) for t in thresholds]


def bucket_label(value):
    """Recall interval a score falls into"""
    if value == 0:
        return BUCKET_LABELS[0]
    if value <= Fraction(1, 4):
        return BUCKET_LABELS[1]
    if value <= Fraction(1, 2):
        return BUCKET_LABELS[2]
    if value <= Fraction(3, 4):
        return BUCKET_LABELS[3]
    if value < 1:
        return BUCKET_LABELS[4]
    return BUCKET_LABELS[5]


def _percent(count, total):
    return HUNDRED * count / total if total else Fraction(0)


def bucket_table(judged):
    """Counts of human-incorrect / human-correct records per recall interval"""
    _require_human(judged)
    incorrect = dict.fromkeys(BUCKET_LABELS, 0)
    correct = dict.fromkeys(BUCKET_LABELS, 0)
    for record in judged:
        label = bucket_label(record.score.value)
        if record.human:
            correct[label] += 1
        else:
            incorrect[label] += 1

    total_incorrect = sum(incorrect.values())
    total_correct = sum(correct.values())
    rows = tuple(
        BucketRow(
            label=label,
            incorrect=incorrect[label],
            pct_incorrect=_percent(incorrect[label], total_incorrect),
            correct=correct[label],
            pct_correct=_percent(correct[label], total_correct),
        )
        for label in BUCKET_LABELS
    )
    totals = BucketRow(
        label="TOTAL",
        incorrect=total_incorrect,
        pct_incorrect=HUNDRED if total_incorrect else Fraction(0),
        correct=total_correct,
        pct_correct=HUNDRED if total_correct else Fraction(0),
    )
    return BucketTable(rows=rows, totals=totals)


# ---------------------------------------------------------------------------
# ROC
# ---------------------------------------------------------------------------

def default_threshold_grid(steps=100):
    """Evenly spaced thresholds k/steps for k = 0..steps"""
    if steps < 1:
        raise UsageError("threshold grid needs at least one step")
    return [Fraction(k, steps) for k in range(steps + 1)]


def roc_curve(judged, thresholds):
    """Hit rate and false-alarm rate (percent) per threshold, accept-all first"""
    _require_human(judged)
    thresholds = [Fraction(t) for t in thresholds]
    if any(not 0 <= t <= 1 for t in thresholds):
        raise UsageError("ROC thresholds must lie within [0, 1]")
    if thresholds != sorted(thresholds):
        raise UsageError("ROC thresholds must be sorted ascending")

    positives = [record.score.value for record in judged if record.human]
    negatives = [record.score.value for record in judged if not record.human]
    if not positives:
        raise NoHumanCorrect("hit rate is undefined: no response was judged correct by a human")
    if not negatives:
        raise NoHumanIncorrect("false-alarm rate is undefined: no response was judged incorrect by a human")

    points = [RocPoint(threshold=None, hit_rate=HUNDRED, false_alarm_rate=HUNDRED)]
    for t in thresholds:
        hits = sum(1 for value in positives if value > t)
        false_alarms = sum(1 for value in negatives if value > t)
        points.append(RocPoint(t, _percent(hits, len(positives)), _percent(false_alarms, len(negatives))))
    return RocCurve(points=tuple(points))


def best_possible_curve():
    """(hit, false alarm) corners of a perfect judge"""
    return [(Fraction(0), Fraction(0)), (HUNDRED, Fraction(0)), (HUNDRED, HUNDRED)]


def worst_possible_curve(thresholds):
    """Diagonal of a judge that calls a response correct p% of the time at random"""
    return [(HUNDRED * (1 - Fraction(t)), HUNDRED * (1 - Fraction(t))) for t in thresholds]


# ---------------------------------------------------------------------------
# run scores, rankings, Kendall's Tau
# ---------------------------------------------------------------------------

def _judgment_of(record, source):
    if source == "auto":
        return record.auto.correct
    if record.human is None:
        r = record.response
        raise MissingHumanJudgment(
            f"no human judgment for run {r.run_id!r}, question {r.question_id!r}, rank {r.rank}"
        )
    return record.human


def run_scores(judged, metric="mrr", judgment_source="auto", question_ids=None):
    """Score every run: mean reciprocal rank or first-answer accuracy"""
    if metric not in ("mrr", "first-answer"):
        raise UsageError(f"unknown metric {metric!r}")
    if judgment_source not in ("auto", "human"):
        raise UsageError(f"unknown judgment source {judgment_source!r}")

    if question_ids is None:
        question_ids = {record.response.question_id for record in judged}
    question_ids = set(question_ids)

    # run -> question -> rank -> correct
    by_run: Dict[str, Dict[str, Dict[int, bool]]] = defaultdict(lambda: defaultdict(dict))
    for record in judged:
        r = record.response
        ranks = by_run[r.run_id][r.question_id]
        if r.rank in ranks:
            raise DuplicateRank(f"run {r.run_id!r} has two responses at rank {r.rank} for {r.question_id!r}")
        ranks[r.rank] = _judgment_of(record, judgment_source)

    if not question_ids:
        return {run_id: Fraction(0) for run_id in by_run}

    scores = {}
    for run_id, questions in by_run.items():
        total = Fraction(0)
        for question_id in question_ids:
            ranks = questions.get(question_id, {})
            if metric == "mrr":
                correct_ranks = [rank for rank, correct in ranks.items() if correct]
                if correct_ranks:
                    total += Fraction(1, min(correct_ranks))
            elif ranks.get(1):
                total += 1
        scores[run_id] = total / len(question_ids)
    return scores


def rank_runs(scores):
    """Order runs best first; equal scores form a tie group ordered by run id"""
    order = sorted(scores, key=lambda run_id: (-scores[run_id], run_id))
    groups: List[frozenset] = []
    previous = None
    for run_id in order:
        if groups and scores[run_id] == previous:
            groups[-1] = groups[-1] | {run_id}
        else:
            groups.append(frozenset({run_id}))
        previous = scores[run_id]
    return RunRanking(order=tuple(order), tie_groups=tuple(groups))


def as_ranking(ordering):
    """Accept a RunRanking or a plain sequence of run ids (no ties)"""
    if isinstance(ordering, RunRanking):
        return ordering
    order = tuple(ordering)
    return RunRanking(order=order, tie_groups=tuple(frozenset({run_id}) for run_id in order))


def _sign(x):
    return (x > 0) - (x < 0)


def kendalls_tau(a, b):
    """(concordant - discordant) / (n(n-1)/2); tied pairs count as neither"""
    a = as_ranking(a)
    b = as_ranking(b)
    for ranking in (a, b):
        if len(set(ranking.order)) != len(ranking.order):
            repeated = sorted({run_id for run_id in ranking.order if ranking.order.count(run_id) > 1})
            raise MismatchedRunSets(f"a ranking lists the same run more than once: {repeated}")
    if set(a.order) != set(b.order) or len(a.order) != len(b.order):
        missing_in_b = sorted(set(a.order) - set(b.order))
        missing_in_a = sorted(set(b.order) - set(a.order))
        raise MismatchedRunSets(f"rankings cover different runs (only in first: {missing_in_b}, "
                                f"only in second: {missing_in_a})")
    n = len(a.order)
    if n < 2:
        raise TooFewRuns(f"Kendall's Tau needs at least 2 runs, got {n}")

    position_a = a.group_index()
    position_b = b.group_index()
    concordant = discordant = tied = 0
    for x, y in combinations(a.order, 2):
        direction = _sign(position_a[x] - position_a[y]) * _sign(position_b[x] - position_b[y])
        if direction > 0:
            concordant += 1
        elif direction < 0:
            discordant += 1
        else:
            tied += 1

    pairs = n * (n - 1) // 2
    return RankingComparison(a, b, concordant, discordant, tied, Fraction(concordant - discordant, pairs))

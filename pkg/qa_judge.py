"""
Command-line entry point: judge responses against an answer key and
evaluate the judge against human judgments.

    python qa_judge.py judge --key key.tsv --responses responses.tsv
    python qa_judge.py roc --key key.tsv --responses responses.tsv --judgments qrels.tsv

Exit status: 0 success, 1 usage error, 2 input parse error,
3 analytic precondition failed.
"""

import argparse
import sys
from pathlib import Path

import config
import run_log
from analytics import (
    agreement,
    agreement_curve,
    attach_human_judgments,
    best_possible_curve,
    bucket_table,
    confusion_matrix,
    default_threshold_grid,
    kendalls_tau,
    rank_runs,
    roc_curve,
    run_scores,
    worst_possible_curve,
)
from answer_key import key_statistics, load_answer_key
from data_loader import load_human_judgments, load_responses
from errors import InputParseError, QAJudgeError, UsageError
from report_generator import (
    build_disagreements,
    disagreement_partitions,
    get_available_report_types,
    render_agreement_csv,
    render_bucket_table,
    render_confusion,
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
from scorer import judge_batch
from text_norm import StopWordList


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; 2 is reserved for input parse errors here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _threshold_arg(text):
    return config.parse_threshold(text)


# One subcommand per report type, sharing the input and threshold flags

def build_parser():
    parser = _Parser(prog="qa_judge", description="Answer-key recall judge for question answering runs")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    for name, description in get_available_report_types().items():
        cmd = sub.add_parser(name, help=description, description=description)
        cmd.add_argument("--key", type=Path, required=True, help="answer-key TSV")
        if name != "key-stats":
            cmd.add_argument("--responses", type=Path, required=True, help="responses TSV")
        if name not in ("judge", "key-stats"):
            cmd.add_argument("--judgments", type=Path, required=True, help="human judgments TSV")
        cmd.add_argument("--threshold", type=_threshold_arg, default=None,
                         help="recall threshold, 'm/k' or decimal (default %s)" % config.THRESHOLD)
        cmd.add_argument("--stopwords", type=Path, default=None, help="stop-word override file")
        cmd.add_argument("--metric", choices=config.METRICS, default=None)
        cmd.add_argument("--roc-steps", type=int, default=None)
        cmd.add_argument("--run-filter", default=None, help="only use runs whose id starts with PREFIX")
        cmd.add_argument("--out", type=Path, default=None, help="output file")
        cmd.add_argument("--log-file", type=Path, default=None, help="also save the run log here")
        cmd.add_argument("--quiet", action="store_true", help="only print warnings and errors")
        if name == "judge":
            cmd.add_argument("--key-stats", action="store_true", help="print key statistics too")
        if name == "roc":
            cmd.add_argument("--best-curve", action="store_true", help="append the best-possible curve")
            cmd.add_argument("--worst-curve", action="store_true", help="append the random-judge diagonal")
    return parser


def config_from_args(args):
    """Layer command-line flags over the environment defaults"""
    stopwords = args.stopwords or (Path(config.STOPWORDS_PATH) if config.STOPWORDS_PATH else None)
    return config.Config(
        key_path=args.key,
        responses_path=getattr(args, "responses", None),
        judgments_path=getattr(args, "judgments", None),
        threshold=args.threshold if args.threshold is not None else config.parse_threshold(config.THRESHOLD),
        stopword_path=stopwords,
        metric=args.metric or config.METRIC,
        roc_steps=args.roc_steps if args.roc_steps is not None else config.ROC_STEPS,
        run_filter=args.run_filter,
        out_path=args.out,
        key_stats=getattr(args, "key_stats", False),
        best_curve=getattr(args, "best_curve", False),
        worst_curve=getattr(args, "worst_curve", False),
        log_file=args.log_file or (Path(config.LOG_FILE) if config.LOG_FILE else None),
        quiet=args.quiet or config.QUIET,
    )


# ---------------------------------------------------------------------------
# shared loading
# ---------------------------------------------------------------------------

def _load_stops(cfg):
    if cfg.stopword_path is None:
        return StopWordList.default()
    return StopWordList.from_file(cfg.stopword_path)


# Loads the answer key; an empty key is an input error

def _load_key(cfg, stops):
    run_log.info(f"Answer key: {cfg.key_path}")
    key = load_answer_key(cfg.key_path, stops)
    if len(key) == 0:
        raise InputParseError("answer key has no questions", cfg.key_path)
    run_log.ok(f"{len(key)} questions")
    return key


def _judge(cfg, key, stops):
    run_log.info(f"Responses: {cfg.responses_path}")
    responses = load_responses(cfg.responses_path, cfg.run_filter)
    batch = judge_batch(responses, key, cfg.threshold, stops)
    for error in batch.errors:
        run_log.warn(str(error))
    run_log.ok(f"{len(batch.judged)} responses judged at threshold {cfg.threshold}")
    return batch


# Judging plus human judgments, for every command that evaluates the judge

def _judge_with_humans(cfg, key, stops):
    """Judged responses that answer a key question, joined with human judgments"""
    batch = _judge(cfg, key, stops)
    if batch.errors:
        run_log.warn(f"{len(batch.errors)} responses left out: question not in the key")
    humans = load_human_judgments(cfg.judgments_path, cfg.run_filter)
    run_log.ok(f"{len(humans)} human judgments loaded")
    return attach_human_judgments(batch.judged, humans)


def _header(cfg, stops):
    return report_header(cfg.threshold, cfg.metric, stops)


def _save(report, path):
    saved = save_report_to_file(report, path)
    run_log.ok(f"Saved: {saved}")
    return saved


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

# Scores and judges every response, writes the judged file and prints counts

def cmd_judge(cfg):
    run_log.banner("JUDGING RESPONSES")
    stops = _load_stops(cfg)
    key = _load_key(cfg, stops)
    batch = _judge(cfg, key, stops)

    _save(render_judged_tsv(batch.judged, _header(cfg, stops)), cfg.output_for("judge"))

    print(render_judge_summary(batch))
    if cfg.key_stats:
        print(render_key_statistics(key_statistics(key)))
    return 0


def cmd_key_stats(cfg):
    stops = _load_stops(cfg)
    key = _load_key(cfg, stops)
    print(render_key_statistics(key_statistics(key)))
    return 0


# Sweeps the threshold and writes hit rate and false-alarm rate per step

def cmd_roc(cfg):
    run_log.banner("ROC SWEEP")
    stops = _load_stops(cfg)
    key = _load_key(cfg, stops)
    judged = _judge_with_humans(cfg, key, stops)

    thresholds = default_threshold_grid(cfg.roc_steps)
    curve = roc_curve(judged, thresholds)
    best = best_possible_curve() if cfg.best_curve else None
    worst = worst_possible_curve(thresholds) if cfg.worst_curve else None

    _save(render_roc_csv(curve, _header(cfg, stops), best, worst), cfg.output_for("roc"))
    print(f"{len(curve.points)} ROC points")
    return 0


# Ranks runs twice (automatic and human judgments) and compares the rankings

def cmd_rank(cfg):
    run_log.banner("RANKING RUNS")
    stops = _load_stops(cfg)
    key = _load_key(cfg, stops)
    judged = _judge_with_humans(cfg, key, stops)

    header = _header(cfg, stops)
    out = cfg.output_for("rank")
    rankings = {}
    for index, source in enumerate(("auto", "human"), start=1):
        run_log.step(index, 2, f"Scoring runs by {source} judgments ({cfg.metric})")
        scores = run_scores(judged, cfg.metric, source, key.question_ids())
        rankings[source] = rank_runs(scores)
        _save(render_ranking_tsv(rankings[source], scores, header),
              out.with_name(f"{out.stem}.{source}{out.suffix}"))

    print(render_tau_line(kendalls_tau(rankings["auto"], rankings["human"])))
    return 0


# Lists every response where the judge and the human disagree

def cmd_disagreements(cfg):
    run_log.banner("DISAGREEMENTS")
    stops = _load_stops(cfg)
    key = _load_key(cfg, stops)
    judged = _judge_with_humans(cfg, key, stops)

    # every record must carry a human judgment
    confusion_matrix(judged)
    records = build_disagreements(judged)
    _save(render_disagreements_tsv(records, _header(cfg, stops)), cfg.output_for("disagreements"))

    missed, false_alarms = disagreement_partitions(records)
    print(f"{len(records)} disagreements")
    print(f"human correct, recall <= threshold: {missed}")
    print(f"human incorrect, recall > threshold: {false_alarms}")
    return 0


# Human judgments broken down by recall interval

def cmd_buckets(cfg):
    run_log.banner("RECALL BUCKETS")
    stops = _load_stops(cfg)
    key = _load_key(cfg, stops)
    judged = _judge_with_humans(cfg, key, stops)

    report = render_bucket_table(bucket_table(judged), _header(cfg, stops))
    _save(report, cfg.output_for("buckets"))
    print(report, end="")
    return 0


def cmd_agreement(cfg):
    run_log.banner("AGREEMENT WITH HUMAN JUDGMENTS")
    stops = _load_stops(cfg)
    key = _load_key(cfg, stops)
    judged = _judge_with_humans(cfg, key, stops)

    curve = agreement_curve(judged, default_threshold_grid(cfg.roc_steps))
    _save(render_agreement_csv(curve, _header(cfg, stops)), cfg.output_for("agreement"))
    print(render_confusion(agreement(judged)))
    return 0


COMMANDS = {
    "judge": cmd_judge,
    "roc": cmd_roc,
    "rank": cmd_rank,
    "disagreements": cmd_disagreements,
    "buckets": cmd_buckets,
    "key-stats": cmd_key_stats,
    "agreement": cmd_agreement,
}


# Parses flags, runs the command and turns errors into exit codes

def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
    except QAJudgeError as e:
        print(f"✗ {e}", file=sys.stderr)
        return e.exit_code

    run_log.configure(quiet=cfg.quiet)
    try:
        with run_log.saved_to(cfg.log_file):
            try:
                return COMMANDS[args.command](cfg)
            except QAJudgeError as e:
                run_log.fail(str(e))
                return e.exit_code
    except OSError as e:
        print(f"✗ {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""
Exceptions raised by the judge, each carrying the process exit code the CLI uses
"""


class QAJudgeError(Exception):
    exit_code = 1


# --- usage (exit 1) ---

class UsageError(QAJudgeError):
    exit_code = 1


class InvalidThreshold(UsageError, ValueError):
    pass


# --- input files (exit 2) ---

class InputParseError(QAJudgeError):
    exit_code = 2

    def __init__(self, message, path=None, line_number=None):
        self.path = path
        self.line_number = line_number
        location = ""
        if path is not None and line_number is not None:
            location = f"{path}:{line_number}: "
        elif path is not None:
            location = f"{path}: "
        elif line_number is not None:
            location = f"line {line_number}: "
        super().__init__(location + message)


class MissingTab(InputParseError):
    pass


class EmptyAnswerSet(InputParseError):
    pass


class DuplicateQuestionId(InputParseError):
    pass


class DuplicateRecord(InputParseError):
    pass


# --- analytic preconditions (exit 3) ---

class AnalyticsError(QAJudgeError):
    exit_code = 3


class UnknownQuestion(AnalyticsError):
    def __init__(self, response):
        self.response = response
        super().__init__(
            f"question {response.question_id!r} is not in the answer key "
            f"(run {response.run_id!r}, rank {response.rank})"
        )


class MissingHumanJudgment(AnalyticsError):
    pass


class NoHumanCorrect(AnalyticsError):
    pass


class NoHumanIncorrect(AnalyticsError):
    pass


class DuplicateRank(AnalyticsError):
    pass


class MismatchedRunSets(AnalyticsError):
    pass


class TooFewRuns(AnalyticsError):
    pass

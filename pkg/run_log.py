"""
Console log for judging runs, optionally saved to a file
"""
# Everything here prints to stderr: stdout is reserved for the command summary,
# which has to stay byte-identical between runs.

import sys
from contextlib import contextmanager

_state = {"quiet": False, "log_file": None}


def configure(quiet=False):
    _state["quiet"] = quiet


def _emit(line, always=False):
    if always or not _state["quiet"]:
        print(line, file=sys.stderr)
    if _state["log_file"] is not None:
        _state["log_file"].write(line + "\n")


def banner(title):
    """Print a section banner"""
    _emit("\n" + "=" * 80)
    _emit(title)
    _emit("=" * 80)


def step(index, total, message):
    _emit(f"\n[{index}/{total}] {message}")


def info(message):
    _emit(message)


def ok(message):
    _emit(f"✓ {message}")


def warn(message):
    _emit(f"! {message}", always=True)


def fail(message):
    _emit(f"✗ {message}", always=True)


@contextmanager
def saved_to(path):
    """Save every log line emitted inside the block to `path` as well"""
    if path is None:
        yield
        return

    with open(path, "w", encoding="utf-8") as f:
        previous = _state["log_file"]
        _state["log_file"] = f
        try:
            yield
        finally:
            _state["log_file"] = previous

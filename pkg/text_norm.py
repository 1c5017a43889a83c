"""
Text normalization: turns key forms and system responses into sets of
stemmed content terms.

Pipeline: tokenize -> case-fold -> drop stop-words -> stem -> set.
Tokens written entirely in capitals (length >= 2) are never dropped as
stop-words, so "IN" (Indiana) survives where "in" does not.
"""

import hashlib
import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from nltk.stem.porter import PorterStemmer

from config import DEFAULT_STOPWORDS_PATH
from errors import InputParseError

# Runs of Unicode letters/digits; an apostrophe or period is kept only
# between two such characters ("O'Brien", "1.39", "U.S").
TOKEN_PATTERN = re.compile(r"[^\W_]+(?:['’.][^\W_]+)*")

# Irregular forms suffix stripping cannot reach, applied before Porter.
STEM_EXCEPTIONS = {
    "fishermen": "fisherman",
    "women": "woman",
    "men": "man",
    "children": "child",
    "feet": "foot",
    "peruvian": "peru",
}

_porter = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)

# Step 1a can leave "john's" as "john'"; the tokenizer never ends a token on these.
TRAILING_PUNCTUATION = "'’."


@dataclass(frozen=True)
class Token:
    surface: str
    was_all_uppercase: bool

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")

    @classmethod
    def from_surface(cls, surface):
        # str.isupper(): every cased character is uppercase and there is one
        return cls(surface, len(surface) >= 2 and surface.isupper())


@dataclass(frozen=True)
class StopWordList:
    words: frozenset

    def __post_init__(self):
        for word in self.words:
            if not word or word != word.lower() or word.strip() != word:
                raise ValueError(f"stop-word {word!r} must be non-empty, lowercase and unpadded")

    def __contains__(self, word):
        return word in self.words

    def __len__(self):
        return len(self.words)

    @classmethod
    def from_lines(cls, lines, source=None):
        """Build from override-file lines: one word per line, '#' comments"""
        words = set()
        for line_number, line in enumerate(lines, start=1):
            word = line.strip()
            if not word or word.startswith("#"):
                continue
            if word != word.lower():
                raise InputParseError(f"stop-word {word!r} is not lowercase", source, line_number)
            if word in words:
                raise InputParseError(f"duplicate stop-word {word!r}", source, line_number)
            words.add(word)
        return cls(frozenset(words))

    @classmethod
    def from_file(cls, path):
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise InputParseError("stop-word file not found", path)
        return cls.from_lines(text.splitlines(), source=path)

    @classmethod
    def default(cls):
        return cls.from_file(DEFAULT_STOPWORDS_PATH)

    def digest(self):
        """Short content hash, recorded in report headers"""
        joined = "\n".join(sorted(self.words)).encode("utf-8")
        return hashlib.sha256(joined).hexdigest()[:12]


@dataclass(frozen=True)
class NormalizedTermSet:
    terms: frozenset = frozenset()

    def __post_init__(self):
        for term in self.terms:
            if not term or term != term.lower() or any(c.isspace() for c in term):
                raise ValueError(f"invalid normalized term {term!r}")

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms))

    def __contains__(self, term):
        return term in self.terms

    def overlap(self, other):
        """Number of terms shared with another set"""
        return len(self.terms & other.terms)


def tokenize(text):
    """Split text into tokens, keeping text order"""
    # NFC so a decomposed "n" + combining tilde stays one letter
    composed = unicodedata.normalize("NFC", text or "")
    return [Token.from_surface(match.group(0)) for match in TOKEN_PATTERN.finditer(composed)]


@lru_cache(maxsize=65536)
def stem(word):
    """Porter stem of a case-folded word, iterated to a fixed point"""
    if word in STEM_EXCEPTIONS:
        return STEM_EXCEPTIONS[word]
    # words of one or two letters are left alone, as in the reference Porter code
    if len(word) <= 2:
        return word

    # One Porter pass is not always a fixed point ("agreed" -> "agre" -> "agr").
    # Passes never lengthen a word and never turn an "i" back into "y", so this ends.
    current = word
    while True:
        stemmed = current if len(current) <= 2 else _porter.stem(current)
        stemmed = stemmed.rstrip(TRAILING_PUNCTUATION)
        if stemmed == current or not stemmed:
            return current
        current = stemmed


def _has_digit(word):
    return any(c.isdigit() for c in word)


def normalize(text, stops):
    """Normalize text into its set of stemmed content terms"""
    terms = set()
    for token in tokenize(text):
        folded = token.surface.lower()

        # numbers are content as written
        if _has_digit(folded):
            terms.add(folded)
            continue

        # acronyms stay ("IN"), though re-normalizing the lowercase term drops it
        exempt = token.was_all_uppercase
        if not exempt and folded in stops:
            continue

        term = stem(folded)
        # "doing" stems to "do"; dropping it keeps normalize stable on its own output
        if not exempt and term in stops:
            continue
        terms.add(term)

    return NormalizedTermSet(frozenset(terms))

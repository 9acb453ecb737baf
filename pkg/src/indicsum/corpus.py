"""ILSUM-style CSV ingestion, text cleaning and corpus statistics.

Dataset files are UTF-8 CSV with RFC-style quoting (articles contain
commas and newlines).  Train files carry ``id,Link,Heading,Article,
Summary``; validation and test files carry ``id,Link,Heading,Article``.
"""

import csv
import sys
import unicodedata
from dataclasses import dataclass, field
from importlib import resources

from . import segment
from .errors import (
    DuplicateId,
    EmptyArticle,
    EmptySplit,
    MissingColumn,
    MissingGoldSummary,
)

SPLIT_KINDS = ("train", "validation", "test")
LANGUAGES = segment.LANGUAGES

TRAIN_COLUMNS = ("id", "Link", "Heading", "Article", "Summary")
EVAL_COLUMNS = ("id", "Link", "Heading", "Article")

# News articles routinely exceed the csv module's default field cap.
csv.field_size_limit(min(sys.maxsize, 2 ** 27))


@dataclass(frozen=True)
class ArticleRecord:
    """One dataset row; ``summary`` is None for validation/test rows."""

    id: str
    article: str
    link: str = ""
    heading: str = ""
    summary: str | None = None


@dataclass(frozen=True)
class DatasetSplit:
    kind: str
    language: str
    records: tuple[ArticleRecord, ...]

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


@dataclass(frozen=True)
class CleanOptions:
    """Text-cleaning switches.

    The default keeps case and drops only punctuation; seq2seq inputs
    should not be lowercased or stopword-stripped because the targets
    are raw text.  ``aggressive()`` reproduces the full cleaning recipe
    (lowercase, punctuation, stopwords) used for matching-style work.
    """

    lowercase: bool = False
    strip_punctuation: bool = True
    remove_stopwords: bool = False
    stopword_list: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.remove_stopwords and not self.stopword_list:
            raise ValueError("remove_stopwords=True requires a stopword_list")

    @classmethod
    def aggressive(cls, language: str) -> "CleanOptions":
        words = load_stopwords(language)
        return cls(
            lowercase=True,
            strip_punctuation=True,
            remove_stopwords=bool(words),
            stopword_list=words,
        )

    @classmethod
    def matching(cls) -> "CleanOptions":
        """Normalization used when comparing sentences for equality."""
        return cls(lowercase=True, strip_punctuation=True)


def load_stopwords(language: str) -> frozenset[str]:
    """Load the bundled stopword list for ``language``.

    The English list is mandatory; an absent Hindi/Gujarati list yields
    an empty set, which makes stopword removal a no-op.
    """
    if language not in LANGUAGES:
        raise ValueError(f"unknown language: {language!r}")
    res = resources.files("indicsum").joinpath(f"data/stopwords_{language}.txt")
    if not res.is_file():
        if language == "english":
            raise FileNotFoundError("bundled English stopword list is missing")
        return frozenset()
    words = set()
    for line in res.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


def clean_text(text: str, opts: CleanOptions) -> str:
    """Clean ``text`` per ``opts``; deterministic and idempotent.

    Order: canonical Unicode composition, lowercasing, replacement of
    characters that are neither letters, combining marks nor digits
    with spaces, then stopword removal over whitespace tokens.  Runs
    of whitespace collapse to single spaces.
    """
    text = unicodedata.normalize("NFC", text)
    if opts.lowercase:
        text = text.lower()
    if opts.strip_punctuation:
        text = segment.strip_punctuation(text)
    tokens = text.split()
    if opts.remove_stopwords:
        tokens = [t for t in tokens if t not in opts.stopword_list]
    return " ".join(tokens)


def load_csv(path, kind: str, language: str) -> DatasetSplit:
    """Load one dataset split from ``path``.

    Raises MissingColumn when ``id``/``Article`` (or ``Summary`` for a
    train file) is absent from the header, DuplicateId on repeated ids,
    EmptyArticle on a blank Article cell and MissingGoldSummary on a
    train row with a blank Summary cell.  Row order is preserved.
    """
    if kind not in SPLIT_KINDS:
        raise ValueError(f"unknown split kind: {kind!r}")
    if language not in LANGUAGES:
        raise ValueError(f"unknown language: {language!r}")

    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MissingColumn(f"{path}: file has no header row") from None
        index = {}
        for pos, name in enumerate(header):
            index.setdefault(name.strip(), pos)

        required = ["id", "Article"] + (["Summary"] if kind == "train" else [])
        for name in required:
            if name not in index:
                raise MissingColumn(f"{path}: required column {name!r} is missing")

        def cell(row, name):
            pos = index.get(name)
            if pos is None or pos >= len(row):
                return ""
            return row[pos]

        records = []
        seen = set()
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            rec_id = cell(row, "id").strip()
            if not rec_id:
                raise EmptyArticle(f"{path}:{lineno}: row has a blank id")
            if rec_id in seen:
                raise DuplicateId(f"{path}:{lineno}: duplicate id {rec_id!r}")
            seen.add(rec_id)
            article = cell(row, "Article")
            if not article.strip():
                raise EmptyArticle(f"{path}:{lineno}: blank Article for id {rec_id!r}")
            summary = cell(row, "Summary") if "Summary" in index else ""
            if kind == "train" and not summary.strip():
                raise MissingGoldSummary(
                    f"{path}:{lineno}: train row {rec_id!r} has no Summary"
                )
            records.append(
                ArticleRecord(
                    id=rec_id,
                    article=article,
                    link=cell(row, "Link"),
                    heading=cell(row, "Heading"),
                    summary=summary if summary.strip() else None,
                )
            )

    return DatasetSplit(kind=kind, language=language, records=tuple(records))


def save_csv(split: DatasetSplit, path) -> None:
    """Write ``split`` back out in the canonical column layout."""
    columns = TRAIN_COLUMNS if split.kind == "train" else EVAL_COLUMNS
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for rec in split.records:
            row = [rec.id, rec.link, rec.heading, rec.article]
            if split.kind == "train":
                row.append(rec.summary or "")
            writer.writerow(row)


@dataclass(frozen=True)
class CorpusStats:
    records: int
    mean_sentences_per_article: float
    mean_summary_words: float


def corpus_stats(split: DatasetSplit) -> CorpusStats:
    """Record count, mean sentences per article, mean summary words."""
    if not split.records:
        raise EmptySplit("cannot compute statistics of an empty split")
    sentence_counts = [
        len(segment.split_sentences(rec.article, split.language))
        for rec in split.records
    ]
    summaries = [rec.summary for rec in split.records if rec.summary]
    mean_summary = (
        sum(len(segment.tokenize_words(s)) for s in summaries) / len(summaries)
        if summaries
        else 0.0
    )
    return CorpusStats(
        records=len(split.records),
        mean_sentences_per_article=sum(sentence_counts) / len(sentence_counts),
        mean_summary_words=mean_summary,
    )

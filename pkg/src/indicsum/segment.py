"""Sentence segmentation, word tokenization and batch padding.

Segmentation is a deliberate plain delimiter split (no abbreviation
handling): English and Gujarati sentences end on ``.``, ``?`` or ``!``;
Hindi additionally ends on the danda ``।``.
"""

import unicodedata
from dataclasses import dataclass

from .errors import EmptyBatch

LANGUAGES = ("english", "hindi", "gujarati")

_TERMINATORS = {
    "english": ".?!",
    "gujarati": ".?!",
    "hindi": ".?!।",
}


@dataclass(frozen=True)
class SentenceList:
    """Sentences in document order plus their character spans.

    ``source_spans[i]`` is the ``(start, end)`` offset pair such that
    ``text[start:end] == sentences[i]`` in the original text.
    """

    sentences: tuple[str, ...]
    source_spans: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def __getitem__(self, i):
        return self.sentences[i]


def split_sentences(text: str, language: str = "english") -> SentenceList:
    """Split ``text`` into sentences on the language's terminators.

    A run of consecutive terminators stays with its sentence ("What?!"
    is one sentence), trailing text without a terminator forms a final
    sentence, and blank segments are dropped.
    """
    if language not in _TERMINATORS:
        raise ValueError(f"unknown language: {language!r}")
    terminators = _TERMINATORS[language]
    sentences: list[str] = []
    spans: list[tuple[int, int]] = []

    def push(lo: int, hi: int) -> None:
        chunk = text[lo:hi]
        stripped = chunk.strip()
        if not stripped:
            return
        begin = lo + (len(chunk) - len(chunk.lstrip()))
        sentences.append(stripped)
        spans.append((begin, begin + len(stripped)))

    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in terminators:
            j = i + 1
            while j < n and text[j] in terminators:
                j += 1
            push(start, j)
            start = j
            i = j
        else:
            i += 1
    push(start, n)
    return SentenceList(tuple(sentences), tuple(spans))


def tokenize_words(text: str) -> list[str]:
    """Split on Unicode whitespace; never yields empty tokens."""
    return text.split()


# Word characters are letters, combining marks and digits.  Combining
# marks matter: Indic vowel signs, nukta and virama are category Mn/Mc
# and must survive punctuation stripping or Hindi/Gujarati words get
# mangled.
_KEEP: dict[str, bool] = {}


def strip_punctuation(text: str) -> str:
    """Replace every non-word character (see above) with a space."""
    out = []
    for ch in text:
        keep = _KEEP.get(ch)
        if keep is None:
            keep = unicodedata.category(ch)[0] in "LMN"
            _KEEP[ch] = keep
        out.append(ch if keep else " ")
    return "".join(out)


def pad_batch(sequences, pad_id):
    """Right-pad integer-id sequences to the longest row.

    Returns ``(rows, mask)`` where mask rows hold 1 for real tokens and
    0 for padding.
    """
    sequences = list(sequences)
    if not sequences:
        raise EmptyBatch("pad_batch needs at least one sequence")
    width = max(len(seq) for seq in sequences)
    rows = [list(seq) + [pad_id] * (width - len(seq)) for seq in sequences]
    mask = [[1] * len(seq) + [0] * (width - len(seq)) for seq in sequences]
    return rows, mask

import csv
import random
import sys
from pathlib import Path

import pytest

from indicsum.corpus import ArticleRecord

STUB_PATH = Path(__file__).resolve().parent / "adapter_stub.py"
DATA_DIR = Path(__file__).resolve().parent / "data"

_WORDS = (
    "storm market river council school cricket farmers rain harvest road "
    "city night morning report week water price election festival train "
    "bridge doctor village coast winter summer office police museum court"
).split()

_GUJARATI_WORDS = (
    "સમાચાર શહેર વરસાદ સરકાર લોકો રમત બજાર પાણી શાળા રસ્તો "
    "ગામ નેતા વેપાર ખેડૂત મેળો આજે કાલે મોટું નવું જૂનું"
).split()


def _english_sentence(rng, tag=None):
    words = rng.sample(_WORDS, k=rng.randint(4, 7))
    if tag is not None:
        words.append(tag)
    return " ".join(words).capitalize() + "."


@pytest.fixture(scope="session")
def stub_argv():
    """Command-line builder for the out-of-process adapter stub."""

    def build(*flags):
        return [sys.executable, str(STUB_PATH), *flags]

    return build


@pytest.fixture(scope="session")
def fixture_50(tmp_path_factory):
    """A deterministic 50-row English train CSV."""
    rng = random.Random(2024)
    path = tmp_path_factory.mktemp("fixture") / "train50.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "Link", "Heading", "Article", "Summary"])
        for i in range(50):
            sentences = [
                _english_sentence(rng, f"t{i}x{j}")
                for j in range(rng.randint(3, 6))
            ]
            writer.writerow(
                [
                    f"rec-{i:03d}",
                    f"https://news.example/{i}",
                    _english_sentence(rng),
                    " ".join(sentences),
                    sentences[rng.randrange(len(sentences))],
                ]
            )
    return path


@pytest.fixture(scope="session")
def gujarati_records():
    """100 synthetic Gujarati records; summary = first article sentence."""
    rng = random.Random(404)
    records = []
    for i in range(100):
        sentences = []
        for _ in range(rng.randint(3, 5)):
            words = rng.sample(_GUJARATI_WORDS, k=rng.randint(4, 7))
            sentences.append(" ".join(words) + ".")
        records.append(
            ArticleRecord(
                id=f"guj-{i:03d}",
                article=" ".join(sentences),
                summary=sentences[0],
            )
        )
    return records


@pytest.fixture
def write_csv(tmp_path):
    """Write rows under a header to a temp CSV and return its path."""
    counter = {"n": 0}

    def _write(rows, header=("id", "Link", "Heading", "Article", "Summary"),
               name=None):
        if name is None:
            counter["n"] += 1
            name = f"data{counter['n']}.csv"
        path = tmp_path / name
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
        return path

    return _write

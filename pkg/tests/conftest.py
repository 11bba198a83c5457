"""Shared fixtures: paths to the bundled demo data and small corpora."""

from datetime import datetime, timezone
from pathlib import Path

import pytest

from tweetsent.corpus import RawTweet, save_corpus
from tweetsent.datagen import make_toy_training_set

REPO_ROOT = Path(__file__).resolve().parent.parent
DEMO_DIR = REPO_ROOT / "data" / "demo"


@pytest.fixture(scope="session")
def demo_dir() -> Path:
    assert DEMO_DIR.is_dir(), "bundled demo data is missing; run python -m tweetsent.datagen"
    return DEMO_DIR


@pytest.fixture()
def toy_training_set():
    return make_toy_training_set()


@pytest.fixture()
def tiny_lexicon(tmp_path: Path) -> Path:
    path = tmp_path / "lexicon.tsv"
    path.write_text(
        "# test lexicon\n"
        "good\t1.0\n"
        "great\t2.0\n"
        "bad\t-1.0\n"
        "awful\t-2.0\n",
        encoding="utf-8",
    )
    return path


@pytest.fixture()
def tiny_corpus(tmp_path: Path) -> Path:
    tweets = [
        RawTweet(
            id="t-001",
            text="Good stuff, really good! http://t.co/abc #demo",
            created_at=datetime(2024, 1, 1, 9, 30, tzinfo=timezone.utc),
            topic="demo",
        ),
        RawTweet(
            id="t-002",
            text="@somebody this was awful...",
            created_at=datetime(2024, 1, 1, 21, 5, tzinfo=timezone.utc),
            topic="demo",
        ),
        RawTweet(
            id="t-003",
            text="just a plain update",
            created_at=datetime(2024, 1, 2, 9, 45, tzinfo=timezone.utc),
            topic="demo",
        ),
    ]
    path = tmp_path / "corpus.jsonl"
    save_corpus(tweets, path)
    return path

"""Tweet corpus ingestion, text normalization, and time-of-day exploration.

Corpora are flat files, one record per tweet, in either of two formats:

* JSONL: one object per line with exactly the fields ``id``, ``text``,
  ``created_at`` (ISO-8601 UTC), ``topic``.
* CSV: RFC-4180 with a header row carrying the same four column names.

Text normalization is a fixed rule sequence (lowercase, URL removal,
mention removal, "#" stripping, punctuation/emoji removal, whitespace
collapse) so that cleaning is deterministic and idempotent.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .exceptions import CorpusError

__all__ = [
    "RawTweet",
    "CleanDocument",
    "HourHistogram",
    "load_corpus",
    "save_corpus",
    "load_stopwords",
    "clean_text",
    "tokenize",
    "clean_corpus",
    "hourly_histogram",
]

CORPUS_FIELDS = ("id", "text", "created_at", "topic")


@dataclass(frozen=True)
class RawTweet:
    """One social-media post as found in the input file."""

    id: str
    text: str
    created_at: datetime  # always timezone-aware, UTC
    topic: str


@dataclass(frozen=True)
class CleanDocument:
    """A tweet after normalization and tokenization."""

    id: str
    tokens: tuple[str, ...]
    topic: str
    created_at: datetime


@dataclass(frozen=True)
class HourHistogram:
    """Tweet counts per UTC hour of day (24 bins)."""

    bins: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.bins)


def _parse_timestamp(value: str) -> datetime:
    """Parse an ISO-8601 instant and normalize it to UTC.

    Accepts a trailing "Z" as well as explicit offsets; a naive timestamp
    is taken to already be UTC.
    """
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        return dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def _format_timestamp(dt: datetime) -> str:
    out = dt.astimezone(timezone.utc).isoformat()
    return out.replace("+00:00", "Z")


def _validate_record(raw: dict, where: str) -> RawTweet:
    missing = [f for f in CORPUS_FIELDS if f not in raw]
    if missing:
        raise CorpusError(f"{where}: missing field '{missing[0]}'")
    extra = [k for k in raw if k not in CORPUS_FIELDS]
    if extra:
        raise CorpusError(f"{where}: unexpected field(s) {extra}")
    for field in CORPUS_FIELDS:
        if not isinstance(raw[field], str):
            raise CorpusError(f"{where}: field '{field}' must be a string")
    if not raw["id"]:
        raise CorpusError(f"{where}: field 'id' must be non-empty")
    try:
        created = _parse_timestamp(raw["created_at"])
    except ValueError as exc:
        raise CorpusError(
            f"{where}: invalid created_at {raw['created_at']!r} ({exc})"
        ) from exc
    return RawTweet(
        id=raw["id"], text=raw["text"], created_at=created, topic=raw["topic"]
    )


def _load_jsonl(path: Path) -> list[RawTweet]:
    tweets = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if lineno == 1 and line.startswith("﻿"):
                line = line.lstrip("﻿")
            stripped = line.strip()
            if not stripped:
                raise CorpusError(f"line {lineno}: blank line in JSONL corpus")
            try:
                record = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {lineno}: malformed JSON ({exc.msg})") from exc
            if not isinstance(record, dict):
                raise CorpusError(f"line {lineno}: record is not an object")
            tweets.append(_validate_record(record, f"line {lineno}"))
    return tweets


def _load_csv(path: Path) -> list[RawTweet]:
    tweets = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []  # zero-byte file: empty corpus
        if sorted(reader.fieldnames) != sorted(CORPUS_FIELDS):
            raise CorpusError(
                f"header: expected columns {list(CORPUS_FIELDS)}, "
                f"got {list(reader.fieldnames)}"
            )
        for recno, row in enumerate(reader, start=1):
            where = f"row {recno}"
            if None in row or any(v is None for v in row.values()):
                raise CorpusError(f"{where}: wrong number of columns")
            tweets.append(_validate_record(dict(row), where))
    return tweets


def load_corpus(path: str | Path, format: str | None = None) -> list[RawTweet]:
    """Load a tweet corpus file.

    Args:
        path: corpus file location.
        format: "jsonl" or "csv"; when None the file suffix decides
            (".csv" means CSV, anything else JSONL).

    Returns:
        Tweets in file order. An empty file yields an empty list.

    Raises:
        CorpusError: missing file, malformed record (named by line/row),
            missing or unexpected field, or duplicate tweet id.
    """
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"corpus file not found: {path}")
    if format is None:
        format = "csv" if path.suffix.lower() == ".csv" else "jsonl"
    if format == "jsonl":
        tweets = _load_jsonl(path)
    elif format == "csv":
        tweets = _load_csv(path)
    else:
        raise ValueError(f"unknown corpus format {format!r}")

    seen: set[str] = set()
    for tweet in tweets:
        if tweet.id in seen:
            raise CorpusError(f"duplicate tweet id {tweet.id!r}")
        seen.add(tweet.id)
    return tweets


def save_corpus(tweets: Sequence[RawTweet], path: str | Path, format: str = "jsonl") -> None:
    """Write tweets back out in one of the two corpus formats.

    A corpus round-trips: loading a saved file yields an equal tweet
    sequence (timestamps are normalized to UTC "Z" notation).
    """
    path = Path(path)
    if format == "jsonl":
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for t in tweets:
                record = {
                    "id": t.id,
                    "text": t.text,
                    "created_at": _format_timestamp(t.created_at),
                    "topic": t.topic,
                }
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    elif format == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CORPUS_FIELDS)
            for t in tweets:
                writer.writerow(
                    [t.id, t.text, _format_timestamp(t.created_at), t.topic]
                )
    else:
        raise ValueError(f"unknown corpus format {format!r}")


def load_stopwords(path: str | Path | None) -> frozenset[str]:
    """Read a stopword file (one token per line, "#" lines are comments).

    None yields the empty default set.
    """
    if path is None:
        return frozenset()
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"stopword file not found: {path}")
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if word and not word.startswith("#"):
                words.add(word.lower())
    return frozenset(words)


# Cleaning rule order is fixed; see clean_text.
_URL_RE = re.compile(r"https?://\S+|www\.\S+|\bt\.co/\S+")
_MENTION_RE = re.compile(r"@\w+")
_NONWORD_RE = re.compile(r"[^\w\s]|_")
_WS_RE = re.compile(r"\s+")


def clean_text(raw: str) -> str:
    """Normalize raw tweet text.

    Applies, in order: lowercasing, URL removal (http/https, www.,
    t.co), @mention removal, "#" stripping (the hashtag word itself is
    kept), punctuation and emoji removal, whitespace collapse and trim.
    Total and idempotent: cleaning already-clean text is a no-op.
    """
    s = raw.lower()
    s = _URL_RE.sub(" ", s)
    s = _MENTION_RE.sub(" ", s)
    s = s.replace("#", "")
    s = _NONWORD_RE.sub(" ", s)
    s = _WS_RE.sub(" ", s)
    return s.strip()


def tokenize(clean: str, stopwords: frozenset[str] | set[str] = frozenset()) -> list[str]:
    """Split cleaned text on spaces and drop stopwords.

    Order and multiplicity of the surviving tokens are preserved. The
    input is expected to have passed through clean_text already.
    """
    return [tok for tok in clean.split() if tok not in stopwords]


def clean_corpus(
    tweets: Iterable[RawTweet], stopwords: frozenset[str] | set[str] = frozenset()
) -> list[CleanDocument]:
    """Normalize and tokenize every tweet, preserving ids and metadata."""
    return [
        CleanDocument(
            id=t.id,
            tokens=tuple(tokenize(clean_text(t.text), stopwords)),
            topic=t.topic,
            created_at=t.created_at,
        )
        for t in tweets
    ]


def hourly_histogram(docs: Iterable[CleanDocument | RawTweet]) -> HourHistogram:
    """Count documents per UTC hour of day.

    The bin sum always equals the number of documents histogrammed.
    """
    bins = np.zeros(24, dtype=np.int64)
    for doc in docs:
        bins[doc.created_at.astimezone(timezone.utc).hour] += 1
    return HourHistogram(bins=tuple(int(b) for b in bins))

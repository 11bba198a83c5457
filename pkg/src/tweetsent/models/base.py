"""Shared training-set container and prediction contract for all models.

Every trainer is a pure function of (data, hyperparameters, seed). Where
randomness is needed it comes from numpy's PCG64 generator seeded through
SeedSequence; ensemble member m draws from the substream
SeedSequence([seed, m]) so adding members never perturbs earlier ones.

Ties are always broken by the canonical class order
Positive < Neutral < Negative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..exceptions import TrainingError
from ..features import DocTermMatrix, SparseVector
from ..lexicon import SentimentLabel

__all__ = ["TrainingSet", "Prediction", "member_rng", "check_columns"]


def _canonical(labels: Sequence[SentimentLabel]) -> tuple[SentimentLabel, ...]:
    return tuple(sorted(set(labels)))


@dataclass(frozen=True)
class TrainingSet:
    """A vectorized corpus with aligned labels.

    ``classes`` defaults to the distinct labels present, in canonical
    order; it may list extra classes explicitly, but trainers reject
    classes with no documents.
    """

    matrix: DocTermMatrix
    labels: tuple[SentimentLabel, ...]
    classes: tuple[SentimentLabel, ...] = field(default=())

    def __post_init__(self):
        if len(self.labels) != self.matrix.n_docs:
            raise TrainingError(
                f"{len(self.labels)} labels for a {self.matrix.n_docs}-row matrix"
            )
        if not self.classes:
            if not self.labels:
                raise TrainingError("training set has no documents")
            object.__setattr__(self, "classes", _canonical(self.labels))
        missing = set(self.labels) - set(self.classes)
        if missing:
            raise TrainingError(f"labels outside the class set: {sorted(missing)}")

    @property
    def n_docs(self) -> int:
        return self.matrix.n_docs

    def y(self) -> np.ndarray:
        """Labels as indices into ``classes``."""
        lookup = {c: i for i, c in enumerate(self.classes)}
        return np.array([lookup[l] for l in self.labels], dtype=np.int64)

    def take(self, rows: Sequence[int] | np.ndarray) -> "TrainingSet":
        """Row subset; the class set is recomputed from surviving labels."""
        rows = np.asarray(rows, dtype=np.int64)
        return TrainingSet(
            matrix=self.matrix.take(rows),
            labels=tuple(self.labels[i] for i in rows),
        )


@dataclass(frozen=True)
class Prediction:
    """Predicted label plus a per-class score (posterior, margin, or vote share)."""

    label: SentimentLabel
    scores: dict[SentimentLabel, float]


def member_rng(seed: int, member: int) -> np.random.Generator:
    """Deterministic per-member generator: PCG64 over SeedSequence([seed, member])."""
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return np.random.default_rng(np.random.SeedSequence([seed, member]))


def check_columns(vec: SparseVector, n_terms: int) -> None:
    """Reject vectors whose columns exceed the model's vocabulary size."""
    if vec.nnz and int(vec.cols.max()) >= n_terms:
        raise ValueError(
            f"vector column {int(vec.cols.max())} out of range for "
            f"{n_terms}-term vocabulary"
        )

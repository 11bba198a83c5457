"""Bootstrap ensembles of decision trees: bagging and random forest.

Member ``m`` of an ensemble seeded with ``seed`` draws all of its
randomness — the bootstrap resample and, for random forest, the per-split
column subsets — from the dedicated substream ``SeedSequence([seed, m])``,
so members are independent of each other and reproducible in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import floor, sqrt

import numpy as np

from ..features import SparseVector
from ..lexicon import SentimentLabel
from .base import Prediction, TrainingSet, check_columns, member_rng
from .tree import DecisionTreeModel, grow_tree

BAGGING = "bagging"
RANDOM_FOREST = "random_forest"


@dataclass(frozen=True)
class EnsembleModel:
    """A majority-vote committee of decision trees."""

    kind: str
    classes: tuple[SentimentLabel, ...]
    terms: tuple[str, ...]
    members: tuple[DecisionTreeModel, ...]
    hyper: dict = field(default_factory=dict)

    def vote_counts(self, vec: SparseVector) -> np.ndarray:
        """Number of members voting for each class, in ``classes`` order."""
        check_columns(vec, len(self.terms))
        position = {cls: i for i, cls in enumerate(self.classes)}
        counts = np.zeros(len(self.classes), dtype=np.float64)
        for member in self.members:
            counts[position[member.predict(vec).label]] += 1.0
        return counts

    def predict(self, vec: SparseVector) -> Prediction:
        counts = self.vote_counts(vec)
        shares = counts / len(self.members)
        best = int(np.argmax(shares))
        return Prediction(
            label=self.classes[best],
            scores={cls: float(s) for cls, s in zip(self.classes, shares)},
        )


def _train_ensemble(
    kind: str,
    training: TrainingSet,
    *,
    n_members: int,
    max_depth: int | None,
    min_samples_split: int,
    seed: int,
    bootstrap: bool,
    n_features_per_split: int | None,
) -> EnsembleModel:
    if n_members < 1:
        raise ValueError(f"n_members must be at least 1, got {n_members}")
    if n_features_per_split is not None and n_features_per_split < 1:
        raise ValueError(
            f"n_features_per_split must be at least 1, got {n_features_per_split}"
        )

    x = training.matrix.toarray()
    y = training.y()
    n_docs, n_terms = x.shape
    n_classes = len(training.classes)

    members = []
    for m in range(n_members):
        rng = member_rng(seed, m)
        rows = rng.integers(0, n_docs, size=n_docs) if bootstrap else np.arange(n_docs)

        if n_features_per_split is None or n_features_per_split >= n_terms:
            sampler = None
        else:
            k = n_features_per_split

            def sampler(rng=rng, k=k):
                return np.sort(rng.choice(n_terms, size=k, replace=False))

        root = grow_tree(
            x[rows],
            y[rows],
            n_classes,
            max_depth=max_depth,
            min_samples_split=min_samples_split,
            column_sampler=sampler,
        )
        members.append(
            DecisionTreeModel(
                classes=training.classes,
                terms=training.matrix.vocab.terms,
                root=root,
                hyper={"max_depth": max_depth, "min_samples_split": min_samples_split},
            )
        )

    hyper = {
        "n_members": n_members,
        "max_depth": max_depth,
        "min_samples_split": min_samples_split,
        "seed": seed,
        "bootstrap": bootstrap,
    }
    if kind == RANDOM_FOREST:
        hyper["n_features_per_split"] = n_features_per_split
    return EnsembleModel(
        kind=kind,
        classes=training.classes,
        terms=training.matrix.vocab.terms,
        members=tuple(members),
        hyper=hyper,
    )


def train_bagging(
    training: TrainingSet,
    *,
    n_members: int = 15,
    max_depth: int | None = None,
    min_samples_split: int = 2,
    seed: int = 0,
    bootstrap: bool = True,
) -> EnsembleModel:
    """Bagged trees: each member sees a bootstrap resample, all columns."""
    return _train_ensemble(
        BAGGING,
        training,
        n_members=n_members,
        max_depth=max_depth,
        min_samples_split=min_samples_split,
        seed=seed,
        bootstrap=bootstrap,
        n_features_per_split=None,
    )


def train_random_forest(
    training: TrainingSet,
    *,
    n_members: int = 25,
    max_depth: int | None = None,
    min_samples_split: int = 2,
    seed: int = 0,
    bootstrap: bool = True,
    n_features_per_split: int | None = None,
) -> EnsembleModel:
    """Random forest: bagging plus a fresh column subset at every split.

    ``n_features_per_split`` defaults to ``floor(sqrt(n_terms))`` (at least
    one).  When it reaches the vocabulary size the subset covers every
    column and member trees coincide with plain bagged trees.
    """
    if n_features_per_split is None:
        n_features_per_split = max(1, floor(sqrt(training.matrix.n_terms)))
    return _train_ensemble(
        RANDOM_FOREST,
        training,
        n_members=n_members,
        max_depth=max_depth,
        min_samples_split=min_samples_split,
        seed=seed,
        bootstrap=bootstrap,
        n_features_per_split=n_features_per_split,
    )

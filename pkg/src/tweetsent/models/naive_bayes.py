"""Multinomial naive Bayes over raw term counts, with Laplace smoothing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exceptions import TrainingError
from ..features import SparseVector
from ..lexicon import SentimentLabel
from .base import Prediction, TrainingSet, check_columns

__all__ = ["NaiveBayesModel", "train_naive_bayes"]


def _logsumexp(x: np.ndarray) -> float:
    m = float(np.max(x))
    return m + float(np.log(np.sum(np.exp(x - m))))


@dataclass(frozen=True)
class NaiveBayesModel:
    """Per-class log priors and Laplace-smoothed per-term log likelihoods.

    For every class the smoothed term likelihoods sum to one over the
    vocabulary by construction.
    """

    classes: tuple[SentimentLabel, ...]
    terms: tuple[str, ...]
    class_log_prior: np.ndarray  # (C,)
    term_log_likelihood: np.ndarray  # (C, V)
    alpha: float

    def predict(self, vec: SparseVector) -> Prediction:
        """Posterior over classes for one count vector (posteriors sum to 1)."""
        check_columns(vec, len(self.terms))
        joint = self.class_log_prior.copy()
        if vec.nnz:
            joint = joint + self.term_log_likelihood[:, vec.cols] @ vec.weights
        log_norm = _logsumexp(joint)
        posterior = np.exp(joint - log_norm)
        posterior = posterior / posterior.sum()
        best = int(np.argmax(posterior))
        scores = {c: float(p) for c, p in zip(self.classes, posterior)}
        return Prediction(label=self.classes[best], scores=scores)


def train_naive_bayes(ts: TrainingSet, alpha: float = 1.0) -> NaiveBayesModel:
    """Fit multinomial naive Bayes from a counts-weighted training set.

    prior(c) is the fraction of documents in class c; likelihood(t | c)
    is (count(t, c) + alpha) / (total_count(c) + alpha * V). Both are
    stored as logs.

    Raises:
        TrainingError: some class in the class set has no documents.
        ValueError: alpha <= 0.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    m = ts.matrix
    y = ts.y()
    n_classes = len(ts.classes)
    n_terms = m.n_terms

    doc_counts = np.bincount(y, minlength=n_classes)
    for label, n_c in zip(ts.classes, doc_counts):
        if n_c == 0:
            raise TrainingError(f"class {label} has no training documents")

    term_counts = np.zeros((n_classes, n_terms), dtype=np.float64)
    row_ids = np.repeat(np.arange(m.n_docs), np.diff(m.indptr))
    if m.nnz:
        np.add.at(term_counts, (y[row_ids], m.indices), m.data)

    if n_terms:
        totals = term_counts.sum(axis=1, keepdims=True)
        log_likelihood = np.log(term_counts + alpha) - np.log(totals + alpha * n_terms)
    else:
        log_likelihood = np.zeros((n_classes, 0), dtype=np.float64)
    log_prior = np.log(doc_counts / m.n_docs)
    return NaiveBayesModel(
        classes=ts.classes,
        terms=m.vocab.terms,
        class_log_prior=log_prior,
        term_log_likelihood=log_likelihood,
        alpha=float(alpha),
    )

"""Save and load trained models as a versioned JSON document.

Every file carries ``format_version``, ``model_kind``, the class list (as
lowercase tags), the vocabulary, and a kind-specific ``params`` block.
Floats are written with full ``repr`` precision, so a load followed by a
save reproduces the parameters bit for bit.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..exceptions import ModelFormatError
from ..lexicon import SentimentLabel
from .ensemble import BAGGING, RANDOM_FOREST, EnsembleModel
from .linear import MAXENT, SVM, LinearModel
from .naive_bayes import NaiveBayesModel
from .tree import DecisionTreeModel, TreeNode

FORMAT_VERSION = 1

NAIVE_BAYES = "naive_bayes"
DECISION_TREE = "decision_tree"

Model = NaiveBayesModel | LinearModel | DecisionTreeModel | EnsembleModel


def model_kind(model: Model) -> str:
    """The ``model_kind`` tag a model serialises under."""
    if isinstance(model, NaiveBayesModel):
        return NAIVE_BAYES
    if isinstance(model, LinearModel):
        return model.kind
    if isinstance(model, DecisionTreeModel):
        return DECISION_TREE
    if isinstance(model, EnsembleModel):
        return model.kind
    raise TypeError(f"cannot serialise object of type {type(model).__name__}")


def _encode_node(node: TreeNode) -> dict:
    encoded: dict = {"counts": [float(c) for c in node.counts]}
    if not node.is_leaf:
        encoded["column"] = int(node.column)
        encoded["threshold"] = float(node.threshold)
        encoded["left"] = _encode_node(node.left)
        encoded["right"] = _encode_node(node.right)
    return encoded


def _decode_node(data: dict) -> TreeNode:
    counts = np.asarray(data["counts"], dtype=np.float64)
    if "column" not in data:
        return TreeNode(counts=counts)
    return TreeNode(
        counts=counts,
        column=int(data["column"]),
        threshold=float(data["threshold"]),
        left=_decode_node(data["left"]),
        right=_decode_node(data["right"]),
    )


def _encode_params(model: Model) -> dict:
    if isinstance(model, NaiveBayesModel):
        return {
            "alpha": model.alpha,
            "class_log_prior": model.class_log_prior.tolist(),
            "term_log_likelihood": model.term_log_likelihood.tolist(),
        }
    if isinstance(model, LinearModel):
        return {
            "weights": model.weights.tolist(),
            "bias": model.bias.tolist(),
            "hyper": model.hyper,
            "loss_trace": list(model.loss_trace) if model.loss_trace is not None else None,
        }
    if isinstance(model, DecisionTreeModel):
        return {"hyper": model.hyper, "tree": _encode_node(model.root)}
    return {
        "hyper": model.hyper,
        "trees": [_encode_node(member.root) for member in model.members],
    }


def save_model(model: Model, path: str | Path) -> None:
    """Write ``model`` to ``path`` as deterministic JSON."""
    document = {
        "format_version": FORMAT_VERSION,
        "model_kind": model_kind(model),
        "classes": [cls.tag for cls in model.classes],
        "vocabulary": list(model.terms),
        "params": _encode_params(model),
    }
    text = json.dumps(document, ensure_ascii=False, sort_keys=True, indent=1)
    Path(path).write_text(text + "\n", encoding="utf-8")


def _decode_model(kind: str, classes, terms, params: dict) -> Model:
    if kind == NAIVE_BAYES:
        return NaiveBayesModel(
            classes=classes,
            terms=terms,
            class_log_prior=np.asarray(params["class_log_prior"], dtype=np.float64),
            term_log_likelihood=np.asarray(
                params["term_log_likelihood"], dtype=np.float64
            ).reshape(len(classes), len(terms)),
            alpha=float(params["alpha"]),
        )
    if kind in (MAXENT, SVM):
        trace = params["loss_trace"]
        return LinearModel(
            kind=kind,
            classes=classes,
            terms=terms,
            weights=np.asarray(params["weights"], dtype=np.float64).reshape(
                len(classes), len(terms)
            ),
            bias=np.asarray(params["bias"], dtype=np.float64),
            hyper=dict(params["hyper"]),
            loss_trace=tuple(trace) if trace is not None else None,
        )
    if kind == DECISION_TREE:
        return DecisionTreeModel(
            classes=classes,
            terms=terms,
            root=_decode_node(params["tree"]),
            hyper=dict(params["hyper"]),
        )
    if kind in (BAGGING, RANDOM_FOREST):
        hyper = dict(params["hyper"])
        member_hyper = {
            "max_depth": hyper.get("max_depth"),
            "min_samples_split": hyper.get("min_samples_split", 2),
        }
        members = tuple(
            DecisionTreeModel(
                classes=classes, terms=terms, root=_decode_node(t), hyper=member_hyper
            )
            for t in params["trees"]
        )
        return EnsembleModel(
            kind=kind, classes=classes, terms=terms, members=members, hyper=hyper
        )
    raise ModelFormatError(f"unknown model kind {kind!r}")


def load_model(path: str | Path) -> Model:
    """Read a model document written by :func:`save_model`."""
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: not a valid model file: {exc}") from exc
    if not isinstance(document, dict):
        raise ModelFormatError(f"{path}: expected a JSON object at top level")

    try:
        version = document["format_version"]
        if version != FORMAT_VERSION:
            raise ModelFormatError(
                f"{path}: unsupported model format version {version!r} "
                f"(this build reads version {FORMAT_VERSION})"
            )
        kind = document["model_kind"]
        classes = tuple(SentimentLabel.from_tag(tag) for tag in document["classes"])
        terms = tuple(str(t) for t in document["vocabulary"])
        return _decode_model(kind, classes, terms, document["params"])
    except KeyError as exc:
        raise ModelFormatError(f"{path}: model file is missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise ModelFormatError(f"{path}: malformed model file: {exc}") from exc

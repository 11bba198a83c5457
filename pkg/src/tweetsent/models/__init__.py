"""Classifier implementations sharing one training-set and prediction API."""

from ..features import SparseVector
from .base import Prediction, TrainingSet, check_columns, member_rng
from .ensemble import (
    BAGGING,
    RANDOM_FOREST,
    EnsembleModel,
    train_bagging,
    train_random_forest,
)
from .io import (
    DECISION_TREE,
    FORMAT_VERSION,
    NAIVE_BAYES,
    Model,
    load_model,
    model_kind,
    save_model,
)
from .linear import (
    MAXENT,
    SVM,
    LinearModel,
    maxent_loss_and_grad,
    train_linear_svm,
    train_maxent,
)
from .naive_bayes import NaiveBayesModel, train_naive_bayes
from .tree import (
    DecisionTreeModel,
    TreeNode,
    gini_impurity,
    grow_tree,
    train_decision_tree,
)


def predict(model: Model, vec: SparseVector) -> Prediction:
    """Predict one document vector with any trained model."""
    return model.predict(vec)


__all__ = [
    "BAGGING",
    "DECISION_TREE",
    "FORMAT_VERSION",
    "MAXENT",
    "NAIVE_BAYES",
    "RANDOM_FOREST",
    "SVM",
    "DecisionTreeModel",
    "EnsembleModel",
    "LinearModel",
    "Model",
    "NaiveBayesModel",
    "Prediction",
    "TrainingSet",
    "TreeNode",
    "check_columns",
    "gini_impurity",
    "grow_tree",
    "load_model",
    "maxent_loss_and_grad",
    "member_rng",
    "model_kind",
    "predict",
    "save_model",
    "train_bagging",
    "train_decision_tree",
    "train_linear_svm",
    "train_maxent",
    "train_naive_bayes",
    "train_random_forest",
]

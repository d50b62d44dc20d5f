import logging
from typing import Dict, Sequence

import numpy as np
from sklearn.metrics import accuracy_score, f1_score, precision_score, recall_score, roc_auc_score

from ...shared.errors import ValidationError

logger = logging.getLogger(__name__)

METRIC_NAMES = ("accuracy", "precision", "recall", "f1", "roc_auc")


def roc_auc(y_true: np.ndarray, scores: np.ndarray) -> float:
    """ROC-AUC, or 0.5 when only one class is present."""
    if np.unique(y_true).size < 2:
        logger.warning("ROC-AUC undefined with a single class in the test labels; reporting 0.5")
        return 0.5
    return float(roc_auc_score(y_true, scores))


def classification_metrics(y_true: Sequence[int], y_pred: Sequence[int], scores: Sequence[float]) -> Dict[str, float]:
    """Accuracy, precision, recall, F1 (class 1 positive) and ROC-AUC of one run."""
    y_true = np.asarray(y_true, dtype=int)
    y_pred = np.asarray(y_pred, dtype=int)
    scores = np.asarray(scores, dtype=float)
    if y_true.size == 0:
        raise ValidationError("Cannot score an empty test set")
    if y_pred.shape != y_true.shape or scores.shape != y_true.shape:
        raise ValidationError(
            f"Shape mismatch: {y_true.shape} labels, {y_pred.shape} predictions, {scores.shape} scores"
        )
    return {
        "accuracy": float(accuracy_score(y_true, y_pred)),
        "precision": float(precision_score(y_true, y_pred, zero_division=0)),
        "recall": float(recall_score(y_true, y_pred, zero_division=0)),
        "f1": float(f1_score(y_true, y_pred, zero_division=0)),
        "roc_auc": roc_auc(y_true, scores),
    }


def mean_and_std(values: Sequence[float]) -> tuple:
    """Mean and population standard deviation over runs."""
    values = np.asarray(values, dtype=float)
    return float(values.mean()), float(values.std())

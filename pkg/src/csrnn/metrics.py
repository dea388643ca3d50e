"""Scoring: token accuracy, per-label precision/recall/F1, macro and micro
F1, confusion matrix, and error-rate-reduction arithmetic.

All zero-denominator cases follow the 0/0 -> 0 convention.  Reports score
the full active label scheme and say so in their header.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .corpus import Dataset, LabelScheme
from .errors import AlignmentError
from .rnn import Prediction


@dataclass(frozen=True)
class LabelScores:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class EvalReport:
    scheme: LabelScheme
    accuracy: float
    per_label: Mapping[str, LabelScores]
    macro_f1: float
    micro_f1: float
    confusion: np.ndarray  # (L, L) ints; entry (gold, predicted)


def _f1(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def evaluate(preds: Sequence[Prediction], gold: Dataset) -> EvalReport:
    """Score predictions token-for-token against gold labels."""
    if len(preds) != len(gold.sentences):
        raise AlignmentError(
            f"{len(preds)} predicted sentences vs {len(gold.sentences)} gold"
        )
    num = len(gold.scheme)
    confusion = np.zeros((num, num), dtype=np.int64)
    for i, (pred, sent) in enumerate(zip(preds, gold.sentences)):
        if len(pred.labels) != len(sent.tokens):
            raise AlignmentError(
                f"sentence {i}: {len(pred.labels)} predictions for "
                f"{len(sent.tokens)} tokens"
            )
        for p, t in zip(pred.labels, sent.tokens):
            if t.gold_label is None:
                raise AlignmentError(f"sentence {i}: gold label missing")
            confusion[t.gold_label, int(p)] += 1

    total = int(confusion.sum())
    correct = int(np.trace(confusion))
    accuracy = correct / total if total else 0.0

    per_label: dict[str, LabelScores] = {}
    for li, label in enumerate(gold.scheme.labels):
        tp = int(confusion[li, li])
        fp = int(confusion[:, li].sum()) - tp
        fn = int(confusion[li, :].sum()) - tp
        p = tp / (tp + fp) if tp + fp > 0 else 0.0
        r = tp / (tp + fn) if tp + fn > 0 else 0.0
        per_label[label] = LabelScores(p, r, _f1(p, r), tp + fn)

    macro_f1 = sum(s.f1 for s in per_label.values()) / num
    # over the full label set micro precision = micro recall = accuracy
    micro_f1 = _f1(accuracy, accuracy)
    return EvalReport(gold.scheme, accuracy, per_label, macro_f1, micro_f1, confusion)


def error_rate_reduction(acc_base: float, acc_new: float) -> float:
    """Relative shrinkage of (1 - accuracy) going from a baseline system to
    a new one."""
    for name, v in (("acc_base", acc_base), ("acc_new", acc_new)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {v}")
    if acc_base == 1.0:
        raise ValueError("error rate reduction is undefined for acc_base = 1")
    return (acc_new - acc_base) / (1.0 - acc_base)


def format_report_text(r: EvalReport) -> str:
    """One metric per line, prefixed by a header naming the scored labels."""
    lines = [
        "# scored over full scheme: " + ",".join(r.scheme.labels),
        f"accuracy = {r.accuracy:.6f}",
        f"micro_f1 = {r.micro_f1:.6f}",
        f"macro_f1 = {r.macro_f1:.6f}",
    ]
    for label, s in r.per_label.items():
        lines.append(
            f"{label}.precision = {s.precision:.6f}"
        )
        lines.append(f"{label}.recall = {s.recall:.6f}")
        lines.append(f"{label}.f1 = {s.f1:.6f}")
        lines.append(f"{label}.support = {s.support}")
    return "\n".join(lines) + "\n"


def report_to_dict(r: EvalReport) -> dict:
    return {
        "labels_scored": list(r.scheme.labels),
        "accuracy": r.accuracy,
        "micro_f1": r.micro_f1,
        "macro_f1": r.macro_f1,
        "per_label": {
            label: {
                "precision": s.precision,
                "recall": s.recall,
                "f1": s.f1,
                "support": s.support,
            }
            for label, s in r.per_label.items()
        },
        "confusion": r.confusion.tolist(),
    }


def format_report_json(r: EvalReport) -> str:
    return json.dumps(report_to_dict(r), indent=2, sort_keys=True) + "\n"


def confusion_to_tsv(r: EvalReport) -> str:
    """Confusion matrix as TSV: gold labels down the rows, predicted across."""
    labels = r.scheme.labels
    lines = ["gold\\pred\t" + "\t".join(labels)]
    for li, label in enumerate(labels):
        lines.append(label + "\t" + "\t".join(str(int(v)) for v in r.confusion[li]))
    return "\n".join(lines) + "\n"

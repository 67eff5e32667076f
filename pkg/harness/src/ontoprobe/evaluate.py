"""Accuracy evaluation of an adapter over a prompt dataset."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .data import PromptExample
from .scoring import LabelWordSet, class_probability


class AdapterError(RuntimeError):
    def __init__(self, index: int, cause: Exception):
        super().__init__(f"adapter failed on sample {index}: {cause}")
        self.index = index


@dataclass
class EvalReport:
    accuracy: float
    n: int
    per_label: dict[str, dict[str, int]]
    seed: int | None = None
    template: str | None = None
    labels: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")


def predict(adapter, example: PromptExample, labels: LabelWordSet) -> bool:
    """Predicted class for one example; ties resolve to positive."""
    p_pos, p_neg = class_probability(adapter.score(example.prompt), labels)
    return p_pos >= p_neg


def evaluate(
    dataset: list[PromptExample],
    adapter,
    labels: LabelWordSet,
    template: str | None = None,
    seed: int | None = None,
) -> EvalReport:
    """Argmax accuracy of the adapter's class probabilities over the dataset."""
    per_label = {
        "positive": {"n": 0, "correct": 0},
        "negative": {"n": 0, "correct": 0},
    }
    correct = 0
    for i, example in enumerate(dataset):
        try:
            prediction = predict(adapter, example, labels)
        except Exception as exc:
            raise AdapterError(i, exc) from exc
        bucket = per_label["positive" if example.positive else "negative"]
        bucket["n"] += 1
        if prediction == example.positive:
            bucket["correct"] += 1
            correct += 1
    n = len(dataset)
    return EvalReport(
        accuracy=correct / n if n else 0.0,
        n=n,
        per_label=per_label,
        seed=seed,
        template=template,
        labels=labels.id,
    )


def aggregate(reports: list[EvalReport]) -> dict:
    """Mean and standard deviation of accuracy over a batch of runs."""
    if not reports:
        raise ValueError("no reports to aggregate")
    accs = [r.accuracy for r in reports]
    mean = sum(accs) / len(accs)
    var = sum((a - mean) ** 2 for a in accs) / len(accs)
    return {"runs": len(accs), "mean_accuracy": mean, "std_accuracy": var**0.5}

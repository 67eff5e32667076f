"""Mask-position scores and the grouped-softmax class probability.

A model adapter returns one logit per label word at the mask position; the
probability of a class is the softmax mass of its words against all words:

    p(class) = sum_{v in class words} exp(logit_v) / sum_{w in all words} exp(logit_w)

Both class probabilities therefore sum to one by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class LabelWordSet:
    id: str
    positive: tuple[str, ...]
    negative: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.positive or not self.negative:
            raise ValueError("label word lists must be non-empty")
        if set(self.positive) & set(self.negative):
            raise ValueError("label word lists must be disjoint")

    def all_words(self) -> tuple[str, ...]:
        return self.positive + self.negative


LABEL_SETS = {
    "L1": LabelWordSet("L1", ("Yes",), ("No",)),
    "L2": LabelWordSet("L2", ("Right",), ("Wrong",)),
    "L3": LabelWordSet("L3", ("Yes", "Right"), ("No", "Wrong")),
}


def label_words(set_id: str) -> LabelWordSet:
    try:
        return LABEL_SETS[set_id]
    except KeyError:
        raise ValueError(f"unknown label word set {set_id!r}") from None


@dataclass(frozen=True)
class MaskScore:
    """Pre-softmax scores of the label words at the masked position."""

    logits: dict[str, float]

    def logit(self, word: str) -> float:
        try:
            return self.logits[word]
        except KeyError:
            raise ValueError(f"no logit for label word {word!r}") from None


def class_probability(score: MaskScore, labels: LabelWordSet) -> tuple[float, float]:
    """(p_positive, p_negative) from the mask logits, numerically stable."""
    pos = [score.logit(w) for w in labels.positive]
    neg = [score.logit(w) for w in labels.negative]
    shift = max(pos + neg)
    pos_mass = sum(math.exp(v - shift) for v in pos)
    neg_mass = sum(math.exp(v - shift) for v in neg)
    total = pos_mass + neg_mass
    return pos_mass / total, neg_mass / total

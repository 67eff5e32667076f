"""Model adapters: prompt text in, label-word logits out.

The evaluation loop only needs ``score(prompt) -> MaskScore``, so plain
deterministic stubs work without any ML runtime.  Trainable adapters are
torch modules that additionally expose ``word_logits`` for batched,
differentiable scoring.
"""

from __future__ import annotations

from typing import Callable

import torch

from .scoring import MaskScore


class ConstantAdapter:
    """Returns the same logits for every prompt."""

    def __init__(self, logits: dict[str, float]):
        self._logits = dict(logits)

    def score(self, prompt: str) -> MaskScore:
        return MaskScore(dict(self._logits))


class FunctionAdapter:
    """Computes logits with a user-supplied function of the prompt."""

    def __init__(self, fn: Callable[[str], dict[str, float]]):
        self._fn = fn

    def score(self, prompt: str) -> MaskScore:
        return MaskScore(self._fn(prompt))


class TrainableAdapter(torch.nn.Module):
    """Base class for adapters that fine-tuning can optimise."""

    words: tuple[str, ...]

    def word_logits(self, prompts: list[str]) -> torch.Tensor:
        """Differentiable logits, shape (len(prompts), len(self.words))."""
        raise NotImplementedError

    def score(self, prompt: str) -> MaskScore:
        with torch.no_grad():
            row = self.word_logits([prompt])[0]
        return MaskScore({w: float(v) for w, v in zip(self.words, row)})


class SyntheticLinearAdapter(TrainableAdapter):
    """One weight per label word over a scalar prompt feature.

    With the default feature (+1 when the prompt contains the marker token,
    -1 otherwise) this is the minimal linearly separable test bed: two
    parameters for a Yes/No word set.
    """

    def __init__(
        self,
        words: tuple[str, ...] = ("Yes", "No"),
        feature: Callable[[str], float] | None = None,
        marker: str = "alpha",
    ):
        super().__init__()
        self.words = words
        self._feature = feature or (lambda p: 1.0 if marker in p else -1.0)
        self.weight = torch.nn.Parameter(torch.zeros(len(words), dtype=torch.float64))

    def word_logits(self, prompts: list[str]) -> torch.Tensor:
        phi = torch.tensor([self._feature(p) for p in prompts], dtype=torch.float64)
        return phi[:, None] * self.weight[None, :]

"""Few-shot fine-tuning of a trainable adapter.

Cross-entropy over the grouped label-word softmax, AdamW with linear warmup,
and best-development-accuracy checkpoint selection across epochs.  Defaults
follow the probing protocol: learning rate 1e-5, weight decay 1e-2, 50
warm-up steps, 10 epochs.
"""

from __future__ import annotations

import copy

import torch

from .adapters import TrainableAdapter
from .data import PromptExample
from .evaluate import evaluate
from .scoring import LabelWordSet


def _class_log_probs(logits: torch.Tensor, labels: LabelWordSet, words) -> torch.Tensor:
    word_index = {w: i for i, w in enumerate(words)}
    pos_idx = [word_index[w] for w in labels.positive]
    neg_idx = [word_index[w] for w in labels.negative]
    total = torch.logsumexp(logits, dim=1)
    log_pos = torch.logsumexp(logits[:, pos_idx], dim=1) - total
    log_neg = torch.logsumexp(logits[:, neg_idx], dim=1) - total
    return torch.stack([log_pos, log_neg], dim=1)


def finetune_kshot(
    train_k: list[PromptExample],
    dev_k: list[PromptExample],
    adapter: TrainableAdapter,
    labels: LabelWordSet,
    epochs: int = 10,
    lr: float = 1e-5,
    wd: float = 1e-2,
    warmup: int = 50,
    batch_size: int = 4,
    seed: int = 0,
) -> TrainableAdapter:
    """Train on the K-shot subsets and return the best-dev checkpoint."""
    if not isinstance(adapter, TrainableAdapter):
        raise TypeError("adapter is not trainable")
    for word in labels.all_words():
        if word not in adapter.words:
            raise ValueError(f"adapter does not score label word {word!r}")
    if epochs == 0:
        return adapter

    torch.manual_seed(seed)
    optimiser = torch.optim.AdamW(adapter.parameters(), lr=lr, weight_decay=wd)
    schedule = torch.optim.lr_scheduler.LambdaLR(
        optimiser, lambda step: min(1.0, (step + 1) / warmup) if warmup else 1.0
    )

    best_state = copy.deepcopy(adapter.state_dict())
    best_accuracy = evaluate(dev_k, adapter, labels).accuracy if dev_k else 0.0

    order = list(range(len(train_k)))
    generator = torch.Generator().manual_seed(seed)
    for _ in range(epochs):
        perm = torch.randperm(len(order), generator=generator).tolist()
        for start in range(0, len(perm), batch_size):
            batch = [train_k[order[i]] for i in perm[start : start + batch_size]]
            if not batch:
                continue
            prompts = [ex.prompt for ex in batch]
            targets = torch.tensor(
                [0 if ex.positive else 1 for ex in batch], dtype=torch.long
            )
            log_probs = _class_log_probs(
                adapter.word_logits(prompts), labels, adapter.words
            )
            loss = torch.nn.functional.nll_loss(log_probs, targets)
            optimiser.zero_grad()
            loss.backward()
            optimiser.step()
            schedule.step()
        if dev_k:
            accuracy = evaluate(dev_k, adapter, labels).accuracy
            if accuracy > best_accuracy:
                best_accuracy = accuracy
                best_state = copy.deepcopy(adapter.state_dict())

    if dev_k:
        adapter.load_state_dict(best_state)
    return adapter

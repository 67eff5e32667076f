import copy

import pytest
import torch

from ontoprobe.adapters import ConstantAdapter, SyntheticLinearAdapter
from ontoprobe.data import PromptExample
from ontoprobe.evaluate import evaluate
from ontoprobe.finetune import finetune_kshot
from ontoprobe.scoring import label_words

L1 = label_words("L1")


def separable_fixture(k: int) -> tuple[list[PromptExample], list[PromptExample]]:
    train = []
    dev = []
    for i in range(k):
        train.append(PromptExample(f"train alpha sample {i}", True))
        train.append(PromptExample(f"train beta sample {i}", False))
        dev.append(PromptExample(f"dev alpha sample {i}", True))
        dev.append(PromptExample(f"dev beta sample {i}", False))
    return train, dev


class TestFinetuneKshot:
    def test_zero_epochs_returns_adapter_unchanged(self):
        train, dev = separable_fixture(4)
        adapter = SyntheticLinearAdapter()
        before = copy.deepcopy(adapter.state_dict())
        out = finetune_kshot(train, dev, adapter, L1, epochs=0)
        assert out is adapter
        for key, tensor in out.state_dict().items():
            assert torch.equal(tensor, before[key])

    def test_defaults_match_protocol(self):
        import inspect

        signature = inspect.signature(finetune_kshot)
        assert signature.parameters["epochs"].default == 10
        assert signature.parameters["lr"].default == 1e-5
        assert signature.parameters["wd"].default == 1e-2
        assert signature.parameters["warmup"].default == 50

    def test_separable_fixture_reaches_perfect_dev_accuracy(self):
        train, dev = separable_fixture(8)
        adapter = finetune_kshot(train, dev, SyntheticLinearAdapter(), L1)
        report = evaluate(dev, adapter, L1)
        assert report.accuracy == 1.0

    def test_two_parameters_only(self):
        adapter = SyntheticLinearAdapter()
        assert sum(p.numel() for p in adapter.parameters()) == 2

    def test_non_trainable_adapter_rejected(self):
        train, dev = separable_fixture(2)
        with pytest.raises(TypeError):
            finetune_kshot(train, dev, ConstantAdapter({"Yes": 0.0, "No": 0.0}), L1)

    def test_adapter_must_cover_label_words(self):
        train, dev = separable_fixture(2)
        adapter = SyntheticLinearAdapter(words=("Yes", "Maybe"))
        with pytest.raises(ValueError):
            finetune_kshot(train, dev, adapter, L1)

    def test_deterministic_given_seed(self):
        train, dev = separable_fixture(4)
        a = finetune_kshot(train, dev, SyntheticLinearAdapter(), L1, seed=3)
        b = finetune_kshot(train, dev, SyntheticLinearAdapter(), L1, seed=3)
        assert torch.equal(a.weight, b.weight)

    def test_best_dev_checkpoint_is_kept(self):
        # dev labels inverted relative to train: accuracy can only fall once
        # training moves the weights, so the selected checkpoint must be the
        # pre-training tie state or better
        train, _ = separable_fixture(4)
        dev = [PromptExample("dev alpha sample", False), PromptExample("dev beta sample", True)]
        adapter = finetune_kshot(train, dev, SyntheticLinearAdapter(), L1)
        report = evaluate(dev, adapter, L1)
        assert report.accuracy >= 0.5

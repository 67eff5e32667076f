"""Probe masked language models with subsumption-inference prompt datasets."""

from .adapters import (
    ConstantAdapter,
    FunctionAdapter,
    SyntheticLinearAdapter,
    TrainableAdapter,
)
from .data import PromptExample, read_prompt_records
from .evaluate import AdapterError, EvalReport, aggregate, evaluate
from .finetune import finetune_kshot
from .scoring import LabelWordSet, MaskScore, class_probability, label_words

__version__ = "0.1.0"

__all__ = [
    "AdapterError",
    "ConstantAdapter",
    "EvalReport",
    "FunctionAdapter",
    "LabelWordSet",
    "MaskScore",
    "PromptExample",
    "SyntheticLinearAdapter",
    "TrainableAdapter",
    "aggregate",
    "class_probability",
    "evaluate",
    "finetune_kshot",
    "label_words",
    "read_prompt_records",
]

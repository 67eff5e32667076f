"""Reading rendered prompt datasets (JSONL with prompt/label fields)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

POSITIVE_TEXT = "entailment"
NEGATIVE_TEXT = "non-entailment"


@dataclass(frozen=True)
class PromptExample:
    prompt: str
    positive: bool
    labels_id: str | None = None


def read_prompt_records(path: str | Path) -> list[PromptExample]:
    """Load examples from a dataset produced by the generation pipeline."""
    examples: list[PromptExample] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                prompt = record["prompt"]
                label = record["label"]
            except (json.JSONDecodeError, KeyError) as exc:
                raise ValueError(f"{path}:{lineno}: malformed record ({exc})") from exc
            if label not in (POSITIVE_TEXT, NEGATIVE_TEXT):
                raise ValueError(f"{path}:{lineno}: unknown label {label!r}")
            examples.append(
                PromptExample(
                    prompt=prompt,
                    positive=label == POSITIVE_TEXT,
                    labels_id=record.get("labels"),
                )
            )
    return examples

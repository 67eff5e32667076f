"""Cloze-template rendering for premise/hypothesis pairs.

Two templates wrap the verbalised pair around a mask placeholder:

* ``T1``: ``It is <a/an> {premise}? <MASK>, it is <a/an> {hypothesis}.``
* ``T2``: the same with the premise and hypothesis sentences quoted.

The article is ``an`` before a vowel, omitted before ``something``, and
``a`` otherwise.  Three label-word sets map the mask prediction to the
two classes: Yes/No, Right/Wrong, or both combined.
"""

from __future__ import annotations

from dataclasses import dataclass

from .verbaliser import article

_TRAILING_PUNCT = ".,;:!?"


@dataclass(frozen=True)
class Template:
    id: str = "T1"
    mask_token: str = "<MASK>"

    def __post_init__(self) -> None:
        if self.id not in ("T1", "T2"):
            raise ValueError(f"unknown template {self.id!r}")


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


_LABEL_SETS = {
    "L1": LabelWordSet("L1", ("Yes",), ("No",)),
    "L2": LabelWordSet("L2", ("Right",), ("Wrong",)),
    "L3": LabelWordSet("L3", ("Yes", "Right"), ("No", "Wrong")),
}


def label_words(set_id: str) -> LabelWordSet:
    try:
        return _LABEL_SETS[set_id]
    except KeyError:
        raise ValueError(f"unknown label word set {set_id!r}") from None


def _clean(text: str) -> str:
    return text.strip().rstrip(_TRAILING_PUNCT).strip()


def _with_article(text: str, capital: bool) -> str:
    lead = "It is" if capital else "it is"
    art = article(text.split(None, 1)[0])
    if art:
        return f"{lead} {art} {text}"
    return f"{lead} {text}"


def render(v_sub: str, v_super: str, template: Template = Template()) -> str:
    """One prompt string with exactly one mask token, premise first."""
    premise = _clean(v_sub)
    hypothesis = _clean(v_super)
    if not premise or not hypothesis:
        raise ValueError("premise and hypothesis must be non-empty")
    if template.mask_token in premise or template.mask_token in hypothesis:
        raise ValueError("inputs must not contain the mask token")
    p = _with_article(premise, capital=True)
    h = _with_article(hypothesis, capital=False)
    if template.id == "T1":
        return f"{p}? {template.mask_token}, {h}."
    return f'"{p}"? {template.mask_token}, "{h}".'

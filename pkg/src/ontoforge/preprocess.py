"""Ontology cleanup before sampling: pruning and label normalisation.

General cleanup removes obsolete concepts and normalises annotation texts
(lower-casing, underscore removal, optional camel-case splitting).  Source
ontologies with unnatural label conventions supply regex rewrite rules and a
concept blocklist through a JSON config; the shipped presets cover the common
cases.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from .core import Iri, Ontology, atoms_of

_CAMEL_RE = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")
_WS_RE = re.compile(r"\s+")


class UnusableLabelError(ValueError):
    """Normalisation produced empty text; the concept cannot be verbalised."""


@dataclass(frozen=True)
class RegexRewrite:
    pattern: str
    keep: int = 1

    def apply(self, label: str) -> str | None:
        m = re.search(self.pattern, label)
        if m is None:
            return None
        return m.group(self.keep)


@dataclass(frozen=True)
class PreprocessConfig:
    """Cleanup switches and per-ontology rewrite rules.

    ``regex_rewrites`` run first and in order; the first matching rule wins
    and its kept capture group replaces the whole label.
    """

    remove_deprecated: bool = True
    lowercase_labels: bool = True
    strip_underscores: bool = True
    camel_case_split: bool = False
    regex_rewrites: tuple[RegexRewrite, ...] = ()
    concept_blocklist: frozenset[Iri] = frozenset()

    @staticmethod
    def from_dict(data: dict) -> "PreprocessConfig":
        rewrites = tuple(
            RegexRewrite(rule["pattern"], rule.get("keep", 1))
            for rule in data.get("regex_rewrites", [])
        )
        return PreprocessConfig(
            remove_deprecated=data.get("remove_deprecated", True),
            lowercase_labels=data.get("lowercase_labels", True),
            strip_underscores=data.get("strip_underscores", True),
            camel_case_split=data.get("camel_case_split", False),
            regex_rewrites=rewrites,
            concept_blocklist=frozenset(data.get("concept_blocklist", [])),
        )

    @staticmethod
    def from_file(path: str | Path) -> "PreprocessConfig":
        with open(path, encoding="utf-8") as fh:
            return PreprocessConfig.from_dict(json.load(fh))


def load_preset(name: str) -> PreprocessConfig:
    """Load a shipped preset (``general``, ``foodon``, ``schemaorg``) by name."""
    ref = resources.files("ontoforge").joinpath(f"presets/{name}.json")
    if not ref.is_file():
        raise FileNotFoundError(f"no preset named {name!r}")
    return PreprocessConfig.from_dict(json.loads(ref.read_text(encoding="utf-8")))


def normalise_label(raw: str, cfg: PreprocessConfig) -> str:
    """Normalise one annotation text.

    Order: regex rewrites, camel-case split, lower-casing, underscore
    removal, whitespace trim.  Splitting precedes lower-casing because the
    case boundaries are the only splitting signal.  Idempotent on its own
    output.  Raises :class:`UnusableLabelError` when nothing remains.
    """
    if not raw:
        raise UnusableLabelError("empty label")
    text = raw
    for rule in cfg.regex_rewrites:
        kept = rule.apply(text)
        if kept is not None:
            text = kept
            break
    if cfg.camel_case_split:
        text = _CAMEL_RE.sub(" ", text)
    if cfg.lowercase_labels:
        text = text.lower()
    if cfg.strip_underscores:
        text = text.replace("_", " ")
    text = _WS_RE.sub(" ", text).strip()
    if not text:
        raise UnusableLabelError(f"label {raw!r} normalised to empty text")
    return text


def prune(onto: Ontology, cfg: PreprocessConfig) -> tuple[Ontology, list[str]]:
    """Drop obsolete and blocklisted concepts together with their axioms."""
    removed: set[Iri] = set(cfg.concept_blocklist & onto.concepts)
    if cfg.remove_deprecated:
        removed |= onto.deprecated & onto.concepts
    return _remove_concepts(onto, removed, reason="pruned")


def _remove_concepts(
    onto: Ontology, removed: set[Iri], reason: str
) -> tuple[Ontology, list[str]]:
    if not removed:
        return onto, []
    warnings = [f"{reason} concept {iri}" for iri in sorted(removed)]
    axioms = tuple(
        ax
        for ax in onto.axioms
        if not _mentions(ax, removed)
    )
    labels = {iri: names for iri, names in onto.labels.items() if iri not in removed}
    pruned = replace(
        onto,
        concepts=onto.concepts - removed,
        axioms=axioms,
        labels=labels,
        deprecated=onto.deprecated - removed,
    )
    return pruned, warnings


def _mentions(axiom, removed: set[Iri]) -> bool:
    from .core import ClassAssertion, EquivalentClasses, SubClassOf

    if isinstance(axiom, SubClassOf):
        exprs = (axiom.sub, axiom.sup)
    elif isinstance(axiom, EquivalentClasses):
        exprs = (axiom.left, axiom.right)
    elif isinstance(axiom, ClassAssertion):
        exprs = (axiom.concept,)
    else:
        return False
    return any(iri in removed for e in exprs for iri in atoms_of(e))


def apply(onto: Ontology, cfg: PreprocessConfig) -> tuple[Ontology, list[str]]:
    """Full preprocessing pass: prune, then normalise every label.

    Annotation texts that normalise to nothing are dropped; concepts left
    without any usable label are pruned as well (they cannot appear in
    samples), each with a warning.  Properties keep their (possibly empty)
    label sets; samplers exclude restrictions over unlabelled properties.
    """
    onto, warnings = prune(onto, cfg)

    labels: dict[Iri, tuple[str, ...]] = {}
    for iri in sorted(onto.labels):
        cleaned: list[str] = []
        for raw in onto.labels[iri]:
            try:
                cleaned.append(normalise_label(raw, cfg))
            except UnusableLabelError:
                warnings.append(f"dropped unusable label {raw!r} of {iri}")
        if cleaned:
            labels[iri] = tuple(cleaned)

    onto = replace(onto, labels=labels)
    unlabelled = {iri for iri in onto.concepts if iri not in labels}
    onto, more = _remove_concepts(onto, unlabelled, reason="removed unlabelled")
    return onto, warnings + more


def display_names(onto: Ontology) -> dict[Iri, str]:
    """Best label per entity, for verbalisation."""
    return {iri: names[0] for iri, names in onto.labels.items() if names}

"""Turn OWL ontologies into balanced subsumption-inference probing datasets."""

from .core import (
    And,
    Atomic,
    Bottom,
    ClassAssertion,
    ConceptExpr,
    EquivalentClasses,
    Exists,
    Forall,
    Not,
    Ontology,
    Or,
    SubClassOf,
    Top,
    canonical_form,
    merge_restrictions,
)
from .parser import ParseOptions, parse_concept, parse_ontology
from .preprocess import PreprocessConfig, load_preset, normalise_label, prune
from .prompt import LabelWordSet, Template, label_words, render
from .reasoner import ToldGraph, build
from .sampler import (
    DatasetSplit,
    SubsumptionSample,
    complex_samples,
    k_shot,
    negative_atomic,
    positive_atomic,
    split,
)
from .verbaliser import VerbaliserLexicon, article, verbalise, verbalise_property

__version__ = "0.1.0"

__all__ = [
    "And",
    "Atomic",
    "Bottom",
    "ClassAssertion",
    "ConceptExpr",
    "DatasetSplit",
    "EquivalentClasses",
    "Exists",
    "Forall",
    "LabelWordSet",
    "Not",
    "Ontology",
    "Or",
    "ParseOptions",
    "PreprocessConfig",
    "SubClassOf",
    "SubsumptionSample",
    "Template",
    "ToldGraph",
    "Top",
    "VerbaliserLexicon",
    "article",
    "build",
    "canonical_form",
    "complex_samples",
    "k_shot",
    "label_words",
    "load_preset",
    "merge_restrictions",
    "negative_atomic",
    "normalise_label",
    "parse_concept",
    "parse_ontology",
    "positive_atomic",
    "prune",
    "render",
    "split",
    "verbalise",
    "verbalise_property",
]

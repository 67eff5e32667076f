import numpy as np
import pytest

from ontoforge.core import Atomic, Ontology, SubClassOf
from ontoforge.parser import parse_ontology
from ontoforge.preprocess import (
    PreprocessConfig,
    RegexRewrite,
    UnusableLabelError,
    apply,
    load_preset,
    normalise_label,
    prune,
)

GENERAL = load_preset("general")
FOODON = load_preset("foodon")
SCHEMAORG = load_preset("schemaorg")


class TestNormaliseLabel:
    def test_camel_case_then_lowercase(self):
        assert normalise_label("APIReference", SCHEMAORG) == "api reference"

    def test_foodon_code_pattern(self):
        raw = "001 - chicken breast (skinless)"
        assert normalise_label(raw, FOODON) == "chicken breast"

    def test_underscores_become_spaces(self):
        assert normalise_label("gene_expression", GENERAL) == "gene expression"

    def test_plain_label_lowercased(self):
        assert normalise_label("Apple (Whole or Parts)", GENERAL) == "apple (whole or parts)"

    def test_first_matching_rewrite_wins(self):
        cfg = PreprocessConfig(
            regex_rewrites=(
                RegexRewrite(r"x(\d+)x"),
                RegexRewrite(r"(\d+)"),
            )
        )
        assert normalise_label("x42x", cfg) == "42"

    def test_empty_result_is_an_error(self):
        cfg = PreprocessConfig(regex_rewrites=(RegexRewrite(r"(\s*)\w+"),))
        with pytest.raises(UnusableLabelError):
            normalise_label("word", cfg)
        with pytest.raises(UnusableLabelError):
            normalise_label("", GENERAL)

    def test_idempotent_on_own_output(self):
        rng = np.random.default_rng(3)
        alphabet = list("abcXYZ_09 -()")
        for _ in range(300):
            raw = "".join(
                rng.choice(alphabet) for _ in range(int(rng.integers(1, 25)))
            )
            for cfg in (GENERAL, FOODON, SCHEMAORG):
                try:
                    once = normalise_label(raw, cfg)
                except UnusableLabelError:
                    continue
                assert normalise_label(once, cfg) == once


def _tiny(axioms, concepts, labels, deprecated=()):
    return Ontology(
        concepts=frozenset(concepts),
        properties=frozenset(),
        individuals=frozenset(),
        axioms=tuple(axioms),
        labels={k: tuple(v) for k, v in labels.items()},
        deprecated=frozenset(deprecated),
    )


class TestPrune:
    def test_deprecated_concept_and_axiom_removed(self):
        onto = _tiny(
            [SubClassOf(Atomic("Old"), Atomic("Root"))],
            ["Old", "Root"],
            {"Old": ["old"], "Root": ["root"]},
            deprecated=["Old"],
        )
        pruned, warnings = prune(onto, GENERAL)
        assert pruned.concepts == {"Root"}
        assert pruned.axioms == ()
        assert len(warnings) == 1

    def test_blocklisted_root_removed(self):
        onto = _tiny(
            [
                SubClassOf(Atomic("Flu"), Atomic("Disease")),
                SubClassOf(Atomic("Cold"), Atomic("Disease")),
                SubClassOf(Atomic("BadFlu"), Atomic("Flu")),
            ],
            ["Flu", "Cold", "BadFlu", "Disease"],
            {"Flu": ["flu"], "Cold": ["cold"], "BadFlu": ["bad flu"], "Disease": ["disease"]},
        )
        cfg = PreprocessConfig(concept_blocklist=frozenset({"Disease"}))
        pruned, _ = prune(onto, cfg)
        assert "Disease" not in pruned.concepts
        assert pruned.axioms == (SubClassOf(Atomic("BadFlu"), Atomic("Flu")),)

    def test_noop_when_nothing_matches(self):
        onto = _tiny(
            [SubClassOf(Atomic("A"), Atomic("B"))],
            ["A", "B"],
            {"A": ["a"], "B": ["b"]},
        )
        pruned, warnings = prune(onto, GENERAL)
        assert pruned == onto
        assert warnings == []

    def test_removed_set_is_subset_of_rule_matches(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            n = int(rng.integers(2, 10))
            names = [f"N{i}" for i in range(n)]
            deprecated = {name for name in names if rng.random() < 0.3}
            blocked = {name for name in names if rng.random() < 0.2}
            onto = _tiny([], names, {m: [m.lower()] for m in names}, deprecated)
            cfg = PreprocessConfig(concept_blocklist=frozenset(blocked))
            pruned, _ = prune(onto, cfg)
            removed = set(onto.concepts) - set(pruned.concepts)
            assert removed <= (deprecated | blocked)


class TestApply:
    def test_unlabelled_concepts_are_dropped(self):
        onto = _tiny(
            [SubClassOf(Atomic("A"), Atomic("B"))],
            ["A", "B"],
            {"A": ["a"]},
        )
        cleaned, warnings = apply(onto, GENERAL)
        assert cleaned.concepts == {"A"}
        assert cleaned.axioms == ()
        assert any("B" in w for w in warnings)

    def test_food_fixture_keeps_all_labelled_concepts(self, food_ontology_raw, food_ontology):
        assert food_ontology.concepts == food_ontology_raw.concepts
        assert all(iri in food_ontology.labels for iri in food_ontology.concepts)

    def test_synonym_fallback_survives(self):
        doc = (
            "Prefix(:=<http://example.org/x#>)\n"
            'AnnotationAssertion(oboInOwl:hasSynonym :A "backup name")\n'
            "SubClassOf(:A :B)\n"
            'AnnotationAssertion(rdfs:label :B "b")\n'
        )
        onto, _ = parse_ontology(doc)
        cleaned, _ = apply(onto, GENERAL)
        assert cleaned.label_of("http://example.org/x#A") == "backup name"

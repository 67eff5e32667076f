import numpy as np
import pytest

from ontoforge.core import (
    And,
    Atomic,
    Bottom,
    ClassAssertion,
    EquivalentClasses,
    Exists,
    Ontology,
    Or,
    SubClassOf,
    Top,
)
from ontoforge.reasoner import UnknownConceptError, build

from conftest import food_iri
from oracles import (
    FiniteModelOracle,
    closure_oracle,
    random_atomic_ontology,
    random_expr,
    random_toy_ontology,
)


def _onto(axioms, concepts, properties=(), individuals=()):
    return Ontology(
        concepts=frozenset(concepts),
        properties=frozenset(properties),
        individuals=frozenset(individuals),
        axioms=tuple(axioms),
        labels={c: (c.lower(),) for c in concepts},
    )


class TestBuild:
    def test_atomic_equivalence_splits_both_ways(self):
        g = build(_onto([EquivalentClasses(Atomic("A"), Atomic("B"))], ["A", "B"]))
        assert g.entails_named("A", "B")
        assert g.entails_named("B", "A")
        assert Atomic("B") in g.conjunct_index["A"]
        assert Atomic("A") in g.conjunct_index["B"]

    def test_chain_is_transitively_closed(self):
        g = build(
            _onto(
                [SubClassOf(Atomic("A"), Atomic("B")), SubClassOf(Atomic("B"), Atomic("C"))],
                ["A", "B", "C"],
            )
        )
        assert g.entails_named("A", "C")

    def test_conjunction_superclass_is_unfolded(self):
        axiom = SubClassOf(
            Atomic("A"), And((Atomic("B"), Exists("r", Atomic("C"))))
        )
        g = build(_onto([axiom], ["A", "B", "C"], properties=["r"]))
        assert g.entails_named("A", "B")
        assert Exists("r", Atomic("C")) in g.conjunct_index["A"]

    def test_random_graphs_match_closure_oracle(self):
        rng = np.random.default_rng(29)
        for _ in range(30):
            onto, edges, names = random_atomic_ontology(rng)
            g = build(onto)
            want = closure_oracle(len(names), edges)
            for i, a in enumerate(names):
                for j, b in enumerate(names):
                    assert g.entails_named(a, b) == want[i, j]


class TestEntailsNamed:
    def test_reflexive(self):
        g = build(_onto([], ["A"]))
        assert g.entails_named("A", "A")

    def test_no_reverse_edge(self):
        g = build(_onto([SubClassOf(Atomic("A"), Atomic("B"))], ["A", "B"]))
        assert not g.entails_named("B", "A")

    def test_unknown_iri_is_an_error(self):
        g = build(_onto([], ["A"]))
        with pytest.raises(UnknownConceptError):
            g.entails_named("A", "Nope")

    def test_reachability_is_a_preorder(self):
        rng = np.random.default_rng(31)
        onto, _, names = random_atomic_ontology(rng, max_concepts=12)
        g = build(onto)
        for a in names:
            assert g.entails_named(a, a)
        for a in names:
            for b in names:
                for c in names:
                    if g.entails_named(a, b) and g.entails_named(b, c):
                        assert g.entails_named(a, c)


class TestEntailsStructural:
    def test_definition_induces_complex_superclass(self, food_graph):
        sub = Atomic(food_iri("SunflowerSeed"))
        sup = And(
            (
                Atomic(food_iri("Seed")),
                Exists(food_iri("derivesFrom"), Atomic(food_iri("HelianthusAnnuus"))),
            )
        )
        assert food_graph.entails_structural(sub, sup)

    def test_definition_works_in_reverse_to_superclasses(self, food_graph):
        definition = And(
            (
                Atomic(food_iri("Seed")),
                Exists(food_iri("derivesFrom"), Atomic(food_iri("HelianthusAnnuus"))),
            )
        )
        assert food_graph.entails_structural(definition, Atomic(food_iri("SunflowerSeed")))
        assert food_graph.entails_structural(definition, Atomic(food_iri("PlantProduct")))

    def test_self_entailment_on_identical_trees(self, food_graph):
        rng = np.random.default_rng(37)
        concepts = sorted(food_graph.nodes)
        for _ in range(100):
            expr = random_expr(rng, concepts, [food_iri("derivesFrom")], depth=3)
            assert food_graph.entails_structural(expr, expr)

    def test_restriction_filler_monotonicity(self, food_graph):
        narrow = Exists(food_iri("derivesFrom"), Atomic(food_iri("Cattle")))
        wide = Exists(food_iri("derivesFrom"), Atomic(food_iri("Animal")))
        assert food_graph.entails_structural(narrow, wide)
        assert not food_graph.entails_structural(wide, narrow)

    def test_inherited_told_restriction(self, food_graph):
        # Meat carries (derivesFrom some Animal); nothing below Meat is asserted,
        # so the check walks the ancestor chain.
        sub = Atomic(food_iri("Meat"))
        sup = Exists(food_iri("derivesFrom"), Atomic(food_iri("Organism")))
        assert food_graph.entails_structural(sub, sup)

    def test_negation_is_conservative(self, food_graph):
        a = Atomic(food_iri("Meat"))
        assert not food_graph.entails_structural(a, Atomic(food_iri("Seed")))
        assert not food_graph.entails_structural(
            a, Exists(food_iri("derivesFrom"), Atomic(food_iri("Plant")))
        )

    def test_top_and_bottom(self, food_graph):
        a = Atomic(food_iri("Meat"))
        assert food_graph.entails_structural(a, Top())
        assert food_graph.entails_structural(Bottom(), a)
        assert not food_graph.entails_structural(Top(), a)

    def test_soundness_against_finite_models(self):
        rng = np.random.default_rng(41)
        checked = 0
        for _ in range(12):
            onto = random_toy_ontology(rng, n_concepts=4)
            g = build(onto)
            oracle = FiniteModelOracle(onto, seed=int(rng.integers(0, 2**31)))
            concepts = sorted(onto.concepts)
            claims = [
                (random_expr(rng, concepts, ["r"], depth=2),
                 random_expr(rng, concepts, ["r"], depth=2))
                for _ in range(40)
            ]
            for sub, sup in claims:
                if g.entails_structural(sub, sup):
                    checked += 1
                    assert not oracle.countermodel_exists(sub, sup), (
                        onto.axioms, sub, sup,
                    )
        assert checked > 50  # the sweep must actually exercise positives


class TestNamedDescendants:
    def test_atomic_includes_closure(self):
        g = build(_onto([SubClassOf(Atomic("A"), Atomic("B"))], ["A", "B"]))
        assert g.named_descendants(Atomic("B")) == {"A", "B"}

    def test_conjunction_intersects(self):
        g = build(
            _onto(
                [SubClassOf(Atomic("A"), Atomic("B")), SubClassOf(Atomic("A"), Atomic("C"))],
                ["A", "B", "C"],
            )
        )
        assert g.named_descendants(And((Atomic("B"), Atomic("C")))) == {"A"}

    def test_matches_pointwise_oracle(self):
        rng = np.random.default_rng(43)
        for _ in range(20):
            onto, _, names = random_atomic_ontology(rng, max_concepts=10)
            g = build(onto)
            expr = random_expr(rng, names, [], depth=2)
            want = {
                a for a in names if g.entails_structural(Atomic(a), expr)
            }
            assert g.named_descendants(expr) == want

    def test_restriction_descendants(self, food_graph):
        expr = Exists(food_iri("derivesFrom"), Atomic(food_iri("Plant")))
        got = g_names = food_graph.named_descendants(expr)
        assert food_iri("SunflowerSeed") in got
        assert food_iri("AppleFruit") in got
        assert food_iri("Meat") not in got


class TestInstances:
    def _with_instances(self):
        return build(
            Ontology(
                concepts=frozenset(["A", "B", "C", "D"]),
                properties=frozenset(),
                individuals=frozenset(["a"]),
                axioms=(
                    SubClassOf(Atomic("A"), Atomic("B")),
                    SubClassOf(Atomic("A"), Atomic("C")),
                    ClassAssertion(Atomic("A"), "a"),
                ),
                labels={c: (c.lower(),) for c in "ABCD"},
            )
        )

    def test_instance_propagates_upward(self):
        g = self._with_instances()
        assert g.common_instance_exists(Atomic("B"), Atomic("C"))

    def test_disjoint_branches_share_nothing(self):
        g = self._with_instances()
        assert not g.common_instance_exists(Atomic("B"), Atomic("D"))

    def test_matches_pointwise_oracle(self):
        rng = np.random.default_rng(47)
        for _ in range(20):
            onto = random_toy_ontology(rng, n_concepts=5)
            g = build(onto)
            concepts = sorted(onto.concepts)
            c = random_expr(rng, concepts, ["r"], depth=2)
            d = random_expr(rng, concepts, ["r"], depth=2)
            want = any(
                g.is_instance(ind, c) and g.is_instance(ind, d)
                for ind in sorted(onto.individuals)
            )
            assert g.common_instance_exists(c, d) == want


class TestAssumedDisjoint:
    def test_sibling_leaves_are_assumed_disjoint(self):
        g = build(
            _onto(
                [SubClassOf(Atomic("A"), Atomic("P")), SubClassOf(Atomic("B"), Atomic("P"))],
                ["A", "B", "P"],
            )
        )
        assert g.assumed_disjoint(Atomic("A"), Atomic("B"))

    def test_subsumption_blocks(self):
        g = build(_onto([SubClassOf(Atomic("A"), Atomic("B"))], ["A", "B"]))
        assert not g.assumed_disjoint(Atomic("A"), Atomic("B"))

    def test_common_descendant_blocks(self):
        g = build(
            _onto(
                [SubClassOf(Atomic("A"), Atomic("B")), SubClassOf(Atomic("A"), Atomic("C"))],
                ["A", "B", "C"],
            )
        )
        assert not g.assumed_disjoint(Atomic("B"), Atomic("C"))

    def test_licenses_the_corrupted_definition_negative(self, food_graph):
        corrupted = And(
            (
                Atomic(food_iri("Fruit")),
                Exists(food_iri("derivesFrom"), Atomic(food_iri("HelianthusAnnuus"))),
            )
        )
        assert food_graph.assumed_disjoint(Atomic(food_iri("SunflowerSeed")), corrupted)

    def test_symmetric_on_random_pairs(self):
        rng = np.random.default_rng(53)
        total = 0
        while total < 1000:
            onto, _, names = random_atomic_ontology(rng, max_concepts=8)
            g = build(onto)
            for _ in range(50):
                c = random_expr(rng, names, [], depth=2)
                d = random_expr(rng, names, [], depth=2)
                assert g.assumed_disjoint(c, d) == g.assumed_disjoint(d, c)
                total += 1

    def test_never_disjoint_from_itself(self):
        rng = np.random.default_rng(59)
        onto, _, names = random_atomic_ontology(rng, max_concepts=8)
        g = build(onto)
        for _ in range(50):
            c = random_expr(rng, names, [], depth=2)
            assert not g.assumed_disjoint(c, c)


class TestSiblings:
    def test_shared_parent(self):
        g = build(
            _onto(
                [SubClassOf(Atomic("A"), Atomic("P")), SubClassOf(Atomic("B"), Atomic("P"))],
                ["A", "B", "P"],
            )
        )
        assert g.siblings("A") == {"B"}

    def test_root_has_none(self):
        g = build(_onto([SubClassOf(Atomic("A"), Atomic("P"))], ["A", "P"]))
        assert g.siblings("P") == set()

    def test_matches_edge_list_enumeration(self):
        rng = np.random.default_rng(61)
        for _ in range(20):
            onto, edges, names = random_atomic_ontology(rng, max_concepts=10)
            g = build(onto)
            for i, a in enumerate(names):
                parents = {j for (x, j) in edges if x == i}
                want = {
                    names[k]
                    for (k, j) in edges
                    if j in parents and names[k] != a
                }
                assert g.siblings(a) == want, (edges, a)

    def test_unknown_iri_is_an_error(self):
        g = build(_onto([], ["A"]))
        with pytest.raises(UnknownConceptError):
            g.siblings("Nope")


class TestClosureDump:
    def test_sorted_tab_separated(self):
        g = build(
            _onto(
                [SubClassOf(Atomic("B"), Atomic("C")), SubClassOf(Atomic("A"), Atomic("B"))],
                ["A", "B", "C"],
            )
        )
        assert g.closure_edges().splitlines() == ["A\tB", "A\tC", "B\tC"]

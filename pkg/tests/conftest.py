import pytest

from ontoforge.parser import ParseOptions, parse_ontology
from ontoforge.preprocess import apply as preprocess_apply
from ontoforge.preprocess import load_preset

FOOD_DOC = """\
Prefix(:=<http://example.org/food#>)
Ontology(<http://example.org/food>
Declaration(Class(:FoodProduct))
Declaration(Class(:PlantProduct))
Declaration(Class(:AnimalProduct))
Declaration(Class(:Seed))
Declaration(Class(:Fruit))
Declaration(Class(:Meat))
Declaration(Class(:SunflowerSeed))
Declaration(Class(:AppleFruit))
Declaration(Class(:Organism))
Declaration(Class(:Plant))
Declaration(Class(:Animal))
Declaration(Class(:HelianthusAnnuus))
Declaration(Class(:MalusDomestica))
Declaration(Class(:Cattle))
Declaration(Class(:Sheep))
Declaration(ObjectProperty(:derivesFrom))
Declaration(ObjectProperty(:partOf))
SubClassOf(:PlantProduct :FoodProduct)
SubClassOf(:AnimalProduct :FoodProduct)
SubClassOf(:Seed :PlantProduct)
SubClassOf(:Fruit :PlantProduct)
SubClassOf(:Meat :AnimalProduct)
SubClassOf(:Plant :Organism)
SubClassOf(:Animal :Organism)
SubClassOf(:HelianthusAnnuus :Plant)
SubClassOf(:MalusDomestica :Plant)
SubClassOf(:Cattle :Animal)
SubClassOf(:Sheep :Animal)
EquivalentClasses(:SunflowerSeed ObjectIntersectionOf(:Seed ObjectSomeValuesFrom(:derivesFrom :HelianthusAnnuus)))
EquivalentClasses(:AppleFruit ObjectIntersectionOf(:Fruit ObjectSomeValuesFrom(:derivesFrom :MalusDomestica)))
SubClassOf(:Meat ObjectSomeValuesFrom(:derivesFrom :Animal))
AnnotationAssertion(rdfs:label :FoodProduct "food product")
AnnotationAssertion(rdfs:label :PlantProduct "plant product")
AnnotationAssertion(rdfs:label :AnimalProduct "animal product")
AnnotationAssertion(rdfs:label :Seed "seed")
AnnotationAssertion(rdfs:label :Fruit "fruit")
AnnotationAssertion(rdfs:label :Meat "meat")
AnnotationAssertion(rdfs:label :SunflowerSeed "sunflower seed")
AnnotationAssertion(rdfs:label :AppleFruit "apple fruit")
AnnotationAssertion(rdfs:label :Organism "organism")
AnnotationAssertion(rdfs:label :Plant "plant")
AnnotationAssertion(rdfs:label :Animal "animal")
AnnotationAssertion(rdfs:label :HelianthusAnnuus "helianthus annuus")
AnnotationAssertion(rdfs:label :MalusDomestica "malus domestica")
AnnotationAssertion(rdfs:label :Cattle "cattle")
AnnotationAssertion(rdfs:label :Sheep "sheep")
AnnotationAssertion(rdfs:label :derivesFrom "derives from")
AnnotationAssertion(rdfs:label :partOf "part of")
)
"""

FOOD = "http://example.org/food#"


def food_iri(local: str) -> str:
    return FOOD + local


@pytest.fixture(scope="session")
def food_ontology_raw():
    onto, warnings = parse_ontology(FOOD_DOC, ParseOptions())
    assert not warnings
    return onto


@pytest.fixture(scope="session")
def food_ontology(food_ontology_raw):
    onto, _ = preprocess_apply(food_ontology_raw, load_preset("general"))
    return onto


@pytest.fixture(scope="session")
def food_graph(food_ontology):
    from ontoforge.reasoner import build

    return build(food_ontology)

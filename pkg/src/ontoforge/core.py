"""Concept-expression trees, axioms, and the ontology container.

Concepts are immutable trees built from named concepts, ``Thing``/``Nothing``,
complement, n-ary intersection/union, and existential/universal restrictions
over object properties.  Intersection and union keep their operands as ordered
lists because downstream text generation is order-sensitive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

# An IRI is plain text: either an absolute IRI or an already-expanded curie.
Iri = str


@dataclass(frozen=True)
class Atomic:
    iri: Iri


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Not:
    inner: "ConceptExpr"


@dataclass(frozen=True)
class And:
    parts: tuple["ConceptExpr", ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("intersection needs at least two operands")


@dataclass(frozen=True)
class Or:
    parts: tuple["ConceptExpr", ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("union needs at least two operands")


@dataclass(frozen=True)
class Exists:
    prop: Iri
    filler: "ConceptExpr"


@dataclass(frozen=True)
class Forall:
    prop: Iri
    filler: "ConceptExpr"


ConceptExpr = Union[Atomic, Top, Bottom, Not, And, Or, Exists, Forall]

RESTRICTIONS = (Exists, Forall)


@dataclass(frozen=True)
class SubClassOf:
    sub: ConceptExpr
    sup: ConceptExpr


@dataclass(frozen=True)
class EquivalentClasses:
    """Ordered equivalence pair.

    When exactly one side is a named concept the loader normalises it to come
    first, so definitional axioms can be read as ``(named, definition)``.
    """

    left: ConceptExpr
    right: ConceptExpr


@dataclass(frozen=True)
class ClassAssertion:
    concept: ConceptExpr
    individual: Iri


Axiom = Union[SubClassOf, EquivalentClasses, ClassAssertion]


@dataclass(frozen=True)
class Ontology:
    """A parsed and possibly preprocessed ontology.

    ``labels`` maps an IRI to its annotation texts, best first (the order
    follows the configured annotation-property precedence).  ``deprecated``
    records IRIs annotated as obsolete so preprocessing can drop them.
    """

    concepts: frozenset[Iri]
    properties: frozenset[Iri]
    individuals: frozenset[Iri]
    axioms: tuple[Axiom, ...]
    labels: Mapping[Iri, tuple[str, ...]] = field(default_factory=dict)
    deprecated: frozenset[Iri] = frozenset()

    def label_of(self, iri: Iri) -> str | None:
        names = self.labels.get(iri)
        return names[0] if names else None


def atoms_of(expr: ConceptExpr) -> list[Iri]:
    """Named-concept IRIs in ``expr``, in traversal order, with repeats."""
    out: list[Iri] = []
    _walk_atoms(expr, out)
    return out


def _walk_atoms(expr: ConceptExpr, out: list[Iri]) -> None:
    if isinstance(expr, Atomic):
        out.append(expr.iri)
    elif isinstance(expr, Not):
        _walk_atoms(expr.inner, out)
    elif isinstance(expr, (And, Or)):
        for part in expr.parts:
            _walk_atoms(part, out)
    elif isinstance(expr, RESTRICTIONS):
        _walk_atoms(expr.filler, out)


def properties_of(expr: ConceptExpr) -> list[Iri]:
    """Object-property IRIs in ``expr``, in traversal order, with repeats."""
    out: list[Iri] = []
    _walk_props(expr, out)
    return out


def _walk_props(expr: ConceptExpr, out: list[Iri]) -> None:
    if isinstance(expr, Not):
        _walk_props(expr.inner, out)
    elif isinstance(expr, (And, Or)):
        for part in expr.parts:
            _walk_props(part, out)
    elif isinstance(expr, RESTRICTIONS):
        out.append(expr.prop)
        _walk_props(expr.filler, out)


def canonical_form(expr: ConceptExpr, names: Mapping[Iri, str] | None = None) -> str:
    """Deterministic text form of a concept expression.

    Uses the keywords ``and``, ``or``, ``not``, ``some``, ``only`` with
    mandatory parentheses around every non-atomic node, so equal expressions
    serialise identically and the text parses back to the same tree.  With no
    name map, atomic nodes print their IRI text; this is the form used for
    dataset fields and dedup keys.  A name map is only for display: names
    containing whitespace will not round-trip through the parser.
    """
    if isinstance(expr, Atomic):
        return names.get(expr.iri, expr.iri) if names else expr.iri
    if isinstance(expr, Top):
        return "Thing"
    if isinstance(expr, Bottom):
        return "Nothing"
    if isinstance(expr, Not):
        return f"(not {canonical_form(expr.inner, names)})"
    if isinstance(expr, And):
        return "(" + " and ".join(canonical_form(p, names) for p in expr.parts) + ")"
    if isinstance(expr, Or):
        return "(" + " or ".join(canonical_form(p, names) for p in expr.parts) + ")"
    if isinstance(expr, Exists):
        prop = names.get(expr.prop, expr.prop) if names else expr.prop
        return f"({prop} some {canonical_form(expr.filler, names)})"
    if isinstance(expr, Forall):
        prop = names.get(expr.prop, expr.prop) if names else expr.prop
        return f"({prop} only {canonical_form(expr.filler, names)})"
    raise TypeError(f"not a concept expression: {expr!r}")


def merge_restrictions(expr: ConceptExpr) -> ConceptExpr:
    """Collapse same-quantifier, same-property restrictions under And/Or.

    Within an intersection, ``(r some X) and (r some Y)`` becomes
    ``r some (X and Y)``; within a union the combined filler is a union.
    The same applies to ``only`` restrictions.  Existential and universal
    restrictions are never merged with each other, nor across distinct
    properties.  Applied bottom-up and re-applied to freshly built fillers,
    so the result is a fixpoint (idempotent).
    """
    if isinstance(expr, Not):
        return Not(merge_restrictions(expr.inner))
    if isinstance(expr, Exists):
        return Exists(expr.prop, merge_restrictions(expr.filler))
    if isinstance(expr, Forall):
        return Forall(expr.prop, merge_restrictions(expr.filler))
    if not isinstance(expr, (And, Or)):
        return expr

    parts = [merge_restrictions(p) for p in expr.parts]
    groups: dict[tuple[type, Iri], list[int]] = {}
    for i, part in enumerate(parts):
        if isinstance(part, RESTRICTIONS):
            groups.setdefault((type(part), part.prop), []).append(i)

    combiner = And if isinstance(expr, And) else Or
    drop: set[int] = set()
    for (kind, prop), positions in groups.items():
        if len(positions) < 2:
            continue
        fillers = tuple(parts[i].filler for i in positions)
        merged_filler = merge_restrictions(combiner(fillers))
        parts[positions[0]] = kind(prop, merged_filler)
        drop.update(positions[1:])

    kept = [p for i, p in enumerate(parts) if i not in drop]
    if len(kept) == 1:
        return kept[0]
    return combiner(tuple(kept))

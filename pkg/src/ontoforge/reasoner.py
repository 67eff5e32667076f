"""Structural subsumption over the told hierarchy.

The graph holds one edge per asserted atomic subsumption, with equivalence
axioms split into both directions and intersections on the superclass side
unfolded into one entry per conjunct.  Queries are sound but deliberately
incomplete: a ``True`` answer is always justified by the asserted axioms,
while some genuine entailments (those needing full description-logic
reasoning) come back ``False``.  Fewer positives, never wrong ones.

Assumed disjointness replaces a satisfiability check with three practical
conditions: no subsumption either way, no common named instance, and no
common named descendant.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core import (
    And,
    Atomic,
    Bottom,
    ClassAssertion,
    ConceptExpr,
    EquivalentClasses,
    Exists,
    Forall,
    Iri,
    Not,
    Ontology,
    Or,
    RESTRICTIONS,
    SubClassOf,
    Top,
)


class UnknownConceptError(KeyError):
    pass


@dataclass(eq=False)
class ToldGraph:
    """Asserted subsumption structure of a preprocessed ontology.

    Immutable after :func:`build`; reachability is computed lazily per node
    and cached under a lock, so concurrent readers see consistent results.
    """

    nodes: tuple[Iri, ...]
    conjunct_index: dict[Iri, tuple[ConceptExpr, ...]]
    sufficient_index: tuple[tuple[ConceptExpr, Iri], ...]
    instance_index: dict[Iri, frozenset[Iri]]
    _index: dict[Iri, int] = field(repr=False)
    _indptr: np.ndarray = field(repr=False)
    _indices: np.ndarray = field(repr=False)
    _rindptr: np.ndarray = field(repr=False)
    _rindices: np.ndarray = field(repr=False)
    _direct_types: dict[Iri, tuple[ConceptExpr, ...]] = field(repr=False)

    def __post_init__(self) -> None:
        self._lock = threading.Lock()
        self._reach_cache: dict[int, np.ndarray] = {}
        self._rreach_cache: dict[int, np.ndarray] = {}
        self._ent_cache: dict[tuple[ConceptExpr, ConceptExpr], bool] = {}

    # -- reachability ---------------------------------------------------------

    def _node(self, iri: Iri) -> int:
        try:
            return self._index[iri]
        except KeyError:
            raise UnknownConceptError(iri) from None

    def contains(self, iri: Iri) -> bool:
        return iri in self._index

    def _reach(self, i: int) -> np.ndarray:
        cached = self._reach_cache.get(i)
        if cached is None:
            computed = _kernels.reachable(self._indptr, self._indices, i)
            with self._lock:
                cached = self._reach_cache.setdefault(i, computed)
        return cached

    def _rreach(self, i: int) -> np.ndarray:
        cached = self._rreach_cache.get(i)
        if cached is None:
            computed = _kernels.reachable(self._rindptr, self._rindices, i)
            with self._lock:
                cached = self._rreach_cache.setdefault(i, computed)
        return cached

    def entails_named(self, a: Iri, b: Iri) -> bool:
        """True when ``b`` is told-reachable from ``a`` (reflexive)."""
        ia, ib = self._node(a), self._node(b)
        return bool(self._reach(ia)[ib])

    def ancestors(self, a: Iri) -> list[Iri]:
        """Named concepts reachable from ``a``, itself included, in node order."""
        mask = self._reach(self._node(a))
        return [self.nodes[j] for j in np.flatnonzero(mask)]

    def direct_parents(self, a: Iri) -> list[Iri]:
        i = self._node(a)
        return [self.nodes[j] for j in self._indices[self._indptr[i] : self._indptr[i + 1]]]

    def direct_children(self, a: Iri) -> list[Iri]:
        i = self._node(a)
        return [
            self.nodes[j] for j in self._rindices[self._rindptr[i] : self._rindptr[i + 1]]
        ]

    def siblings(self, a: Iri) -> set[Iri]:
        """Concepts sharing at least one told direct parent with ``a``."""
        out: set[Iri] = set()
        for parent in self.direct_parents(a):
            out.update(self.direct_children(parent))
        out.discard(a)
        return out

    # -- structural entailment -------------------------------------------------

    def entails_structural(self, sub: ConceptExpr, sup: ConceptExpr) -> bool:
        """Sound, incomplete subsumption test between concept expressions."""
        key = (sub, sup)
        hit = self._ent_cache.get(key)
        if hit is not None:
            return hit
        result = self._ent(sub, sup, set())
        with self._lock:
            self._ent_cache[key] = result
        return result

    def _ent(self, sub: ConceptExpr, sup: ConceptExpr, active: set) -> bool:
        if sub == sup:
            return True
        key = (sub, sup)
        if key in active:
            return False  # definitional cycle; stay conservative
        active.add(key)
        try:
            return self._ent_inner(sub, sup, active)
        finally:
            active.discard(key)

    def _ent_inner(self, sub: ConceptExpr, sup: ConceptExpr, active: set) -> bool:
        if isinstance(sup, Top) or isinstance(sub, Bottom):
            return True
        if isinstance(sup, And):
            return all(self._ent(sub, part, active) for part in sup.parts)
        if isinstance(sup, Or):
            return any(self._ent(sub, part, active) for part in sup.parts)

        if isinstance(sub, Atomic):
            if isinstance(sup, Atomic):
                if sub.iri in self._index and sup.iri in self._index:
                    return self.entails_named(sub.iri, sup.iri)
                return False
            if isinstance(sup, RESTRICTIONS):
                # a told superclass restriction of any ancestor may subsume sup
                if sub.iri not in self._index:
                    return False
                for anc in self.ancestors(sub.iri):
                    for told in self.conjunct_index.get(anc, ()):
                        if (
                            type(told) is type(sup)
                            and told.prop == sup.prop
                            and self._ent(told.filler, sup.filler, active)
                        ):
                            return True
            return False

        if isinstance(sub, And):
            if any(self._ent(part, sup, active) for part in sub.parts):
                return True
        elif isinstance(sub, Or):
            if all(self._ent(part, sup, active) for part in sub.parts):
                return True
        elif isinstance(sub, RESTRICTIONS):
            if (
                type(sub) is type(sup)
                and sub.prop == sup.prop
                and self._ent(sub.filler, sup.filler, active)
            ):
                return True

        # complex subclass of a named concept through a definition:
        # sub is subsumed by some told expression X with X told-below sup
        if isinstance(sup, Atomic) and sup.iri in self._index:
            for expr, named in self.sufficient_index:
                if self.entails_named(named, sup.iri) and self._ent(sub, expr, active):
                    return True
        return False

    # -- descendants and instances ----------------------------------------------

    def named_descendants(self, expr: ConceptExpr) -> set[Iri]:
        """All named concepts that structurally entail ``expr``."""
        if isinstance(expr, Atomic):
            if expr.iri not in self._index:
                return set()
            mask = self._rreach(self._index[expr.iri])
            return {self.nodes[j] for j in np.flatnonzero(mask)}
        if isinstance(expr, Top):
            return set(self.nodes)
        if isinstance(expr, And):
            out = self.named_descendants(expr.parts[0])
            for part in expr.parts[1:]:
                if not out:
                    break
                out &= self.named_descendants(part)
            return out
        if isinstance(expr, Or):
            out: set[Iri] = set()
            for part in expr.parts:
                out |= self.named_descendants(part)
            return out
        return {
            node for node in self.nodes if self.entails_structural(Atomic(node), expr)
        }

    def is_instance(self, individual: Iri, expr: ConceptExpr) -> bool:
        return any(
            self.entails_structural(told, expr)
            for told in self._direct_types.get(individual, ())
        )

    def common_instance_exists(self, c: ConceptExpr, d: ConceptExpr) -> bool:
        for individual in sorted(self._direct_types):
            if self.is_instance(individual, c) and self.is_instance(individual, d):
                return True
        return False

    def assumed_disjoint(self, c: ConceptExpr, d: ConceptExpr) -> bool:
        """Heuristic negative-pair criterion.

        Holds when no subsumption is derivable either way, the two concepts
        share no named instance, and their named descendant sets are strictly
        disjoint.  Symmetric; always false for a concept against itself.
        """
        if self.entails_structural(c, d) or self.entails_structural(d, c):
            return False
        if self.common_instance_exists(c, d):
            return False
        return not (self.named_descendants(c) & self.named_descendants(d))

    def closure_edges(self) -> str:
        """Debug dump: one ``sub<TAB>super`` line per non-reflexive closure pair."""
        pairs = []
        for i, node in enumerate(self.nodes):
            mask = self._reach(i).copy()
            mask[i] = False
            pairs.extend((node, self.nodes[j]) for j in np.flatnonzero(mask))
        return "\n".join(f"{a}\t{b}" for a, b in sorted(pairs))


def _superclass_entries(sup: ConceptExpr) -> list[ConceptExpr]:
    if isinstance(sup, And):
        return list(sup.parts)
    return [sup]


def build(onto: Ontology) -> ToldGraph:
    """Index the told structure of a (preprocessed) ontology."""
    nodes = tuple(sorted(onto.concepts))
    index = {iri: i for i, iri in enumerate(nodes)}

    told_pairs: list[tuple[ConceptExpr, ConceptExpr]] = []
    for axiom in onto.axioms:
        if isinstance(axiom, SubClassOf):
            told_pairs.append((axiom.sub, axiom.sup))
        elif isinstance(axiom, EquivalentClasses):
            told_pairs.append((axiom.left, axiom.right))
            told_pairs.append((axiom.right, axiom.left))

    edges: list[tuple[int, int]] = []
    conjuncts: dict[Iri, list[ConceptExpr]] = {}
    sufficient: list[tuple[ConceptExpr, Iri]] = []
    for sub, sup in told_pairs:
        for entry in _superclass_entries(sup):
            if isinstance(sub, Atomic):
                conjuncts.setdefault(sub.iri, []).append(entry)
                if isinstance(entry, Atomic):
                    edges.append((index[sub.iri], index[entry.iri]))
            elif isinstance(entry, Atomic) and not isinstance(sub, (Top, Bottom)):
                sufficient.append((sub, entry.iri))

    indptr, indices = _kernels.build_csr(len(nodes), edges)
    rindptr, rindices = _kernels.build_csr(len(nodes), [(b, a) for a, b in edges])

    direct_types: dict[Iri, list[ConceptExpr]] = {}
    instances: dict[Iri, set[Iri]] = {}
    for axiom in onto.axioms:
        if isinstance(axiom, ClassAssertion):
            direct_types.setdefault(axiom.individual, []).append(axiom.concept)
            if isinstance(axiom.concept, Atomic):
                instances.setdefault(axiom.concept.iri, set()).add(axiom.individual)

    return ToldGraph(
        nodes=nodes,
        conjunct_index={iri: tuple(entries) for iri, entries in conjuncts.items()},
        sufficient_index=tuple(sufficient),
        instance_index={iri: frozenset(inds) for iri, inds in instances.items()},
        _index=index,
        _indptr=indptr,
        _indices=indices,
        _rindptr=rindptr,
        _rindices=rindices,
        _direct_types={ind: tuple(types) for ind, types in direct_types.items()},
    )

"""Subsumption sample generation: positives, validated negatives, and splits.

Atomic positives are every ordered named pair in the told closure.  Negatives
come in two flavours, soft (random concept pairs) and hard (random sibling
pairs), each admitted only when the assumed-disjointness conditions hold,
then truncated to match the positive count.  Complex samples anchor on
definitional equivalence axioms: positives walk the named hierarchy around
the anchor, negatives corrupt one named concept or property occurrence and
are re-validated the same way.

Every random draw flows from one seed through ``numpy.random.Generator``
(PCG64), so a dataset is reproducible from its config alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .core import (
    And,
    Atomic,
    ConceptExpr,
    EquivalentClasses,
    Exists,
    Forall,
    Iri,
    Not,
    Ontology,
    Or,
    RESTRICTIONS,
    atoms_of,
    canonical_form,
    properties_of,
)
from .reasoner import ToldGraph
from .verbaliser import VerbaliserLexicon, DEFAULT_LEXICON, verbalise

POSITIVE = "positive"
NEGATIVE = "negative"

PROVENANCE_ENTAILED = "entailed"
PROVENANCE_SOFT = "soft"
PROVENANCE_HARD = "hard"
PROVENANCE_CORRUPT_NAMED = "corrupt_named"
PROVENANCE_CORRUPT_PROPERTY = "corrupt_property"


class SamplingError(RuntimeError):
    pass


@dataclass(frozen=True)
class SubsumptionSample:
    sub: ConceptExpr
    sup: ConceptExpr
    label: str
    provenance: str
    anchor: Iri | None = None

    def __post_init__(self) -> None:
        if self.sub == self.sup:
            raise ValueError("sample sides must differ")
        if (self.label == POSITIVE) != (self.provenance == PROVENANCE_ENTAILED):
            raise ValueError("label and provenance disagree")

    def key(self) -> tuple[str, str]:
        return canonical_form(self.sub), canonical_form(self.sup)


@dataclass(frozen=True)
class DatasetSplit:
    train: tuple[SubsumptionSample, ...]
    dev: tuple[SubsumptionSample, ...]
    test: tuple[SubsumptionSample, ...]
    seed: int
    ratios: tuple[float, float, float]

    def partitions(self) -> dict[str, tuple[SubsumptionSample, ...]]:
        return {"train": self.train, "dev": self.dev, "test": self.test}


def positive_atomic(
    g: ToldGraph, rng: np.random.Generator, direct_only: bool = False
) -> list[SubsumptionSample]:
    """All ordered named pairs related by the told closure, shuffled.

    ``direct_only`` restricts the output to asserted (one-hop) pairs instead
    of the full closure.
    """
    samples = []
    for node in g.nodes:
        supers = g.direct_parents(node) if direct_only else g.ancestors(node)
        for sup in supers:
            if sup != node:
                samples.append(
                    SubsumptionSample(
                        Atomic(node), Atomic(sup), POSITIVE, PROVENANCE_ENTAILED
                    )
                )
    order = rng.permutation(len(samples))
    return [samples[i] for i in order]


def _sibling_pairs(g: ToldGraph) -> list[tuple[Iri, Iri]]:
    pairs = set()
    for node in g.nodes:
        for sib in g.siblings(node):
            pairs.add((node, sib))
    return sorted(pairs)


def negative_atomic(
    g: ToldGraph,
    rng: np.random.Generator,
    n_pos: int,
    attempt_factor: int = 50,
) -> list[SubsumptionSample]:
    """Soft and hard negatives, validated, deduplicated, truncated to ``n_pos``."""
    if n_pos <= 0:
        raise SamplingError("need a positive target count")
    nodes = g.nodes
    if len(nodes) < 2:
        raise SamplingError("need at least two concepts")

    accepted: dict[tuple[str, str], SubsumptionSample] = {}

    def admit(a: Iri, b: Iri, provenance: str) -> None:
        sample = SubsumptionSample(Atomic(a), Atomic(b), NEGATIVE, provenance)
        accepted.setdefault(sample.key(), sample)

    budget = attempt_factor * n_pos
    got_soft = 0
    for _ in range(budget):
        if got_soft >= n_pos:
            break
        i, j = rng.integers(0, len(nodes), size=2)
        if i == j:
            continue
        a, b = nodes[int(i)], nodes[int(j)]
        if g.assumed_disjoint(Atomic(a), Atomic(b)):
            admit(a, b, PROVENANCE_SOFT)
            got_soft += 1

    sib_pairs = _sibling_pairs(g)
    got_hard = 0
    if sib_pairs:
        for _ in range(budget):
            if got_hard >= n_pos:
                break
            a, b = sib_pairs[int(rng.integers(0, len(sib_pairs)))]
            if g.assumed_disjoint(Atomic(a), Atomic(b)):
                admit(a, b, PROVENANCE_HARD)
                got_hard += 1

    pool = list(accepted.values())
    if len(pool) < n_pos:
        raise SamplingError(
            f"only {len(pool)} valid negatives "
            f"({got_soft} soft, {got_hard} hard) for {n_pos} positives"
        )
    order = rng.permutation(len(pool))
    return [pool[i] for i in order[:n_pos]]


def _anchors(onto: Ontology) -> list[tuple[Iri, ConceptExpr]]:
    """Definitional equivalences: named on one side, complex on the other."""
    out = []
    for axiom in onto.axioms:
        if not isinstance(axiom, EquivalentClasses):
            continue
        left, right = axiom.left, axiom.right
        if isinstance(left, Atomic) and not isinstance(right, Atomic):
            out.append((left.iri, right))
    return out


def _labelled(onto: Ontology, expr: ConceptExpr) -> bool:
    return all(iri in onto.labels for iri in atoms_of(expr)) and all(
        iri in onto.labels for iri in properties_of(expr)
    )


def _replace_atom_at(expr: ConceptExpr, target: int, new: Iri, counter: list[int]):
    if isinstance(expr, Atomic):
        counter[0] += 1
        if counter[0] - 1 == target:
            return Atomic(new)
        return expr
    if isinstance(expr, Not):
        return Not(_replace_atom_at(expr.inner, target, new, counter))
    if isinstance(expr, (And, Or)):
        parts = tuple(_replace_atom_at(p, target, new, counter) for p in expr.parts)
        return type(expr)(parts)
    if isinstance(expr, RESTRICTIONS):
        return type(expr)(expr.prop, _replace_atom_at(expr.filler, target, new, counter))
    return expr


def _replace_prop_at(expr: ConceptExpr, target: int, new: Iri, counter: list[int]):
    if isinstance(expr, Not):
        return Not(_replace_prop_at(expr.inner, target, new, counter))
    if isinstance(expr, (And, Or)):
        parts = tuple(_replace_prop_at(p, target, new, counter) for p in expr.parts)
        return type(expr)(parts)
    if isinstance(expr, RESTRICTIONS):
        counter[0] += 1
        prop = expr.prop
        if counter[0] - 1 == target:
            prop = new
        return type(expr)(prop, _replace_prop_at(expr.filler, target, new, counter))
    return expr


def complex_samples(
    g: ToldGraph,
    onto: Ontology,
    rng: np.random.Generator,
    cap: int = 4,
    attempt_factor: int = 25,
    sibling_replacements: bool = True,
) -> tuple[list[SubsumptionSample], list[dict]]:
    """Per-anchor positives and corruption negatives, at most ``cap`` of each.

    Returns the samples plus one warning record per skipped anchor.
    """
    concept_pool = sorted(iri for iri in onto.concepts if iri in onto.labels)
    property_pool = sorted(iri for iri in onto.properties if iri in onto.labels)
    samples: list[SubsumptionSample] = []
    warnings: list[dict] = []
    seen: set[tuple[str, str]] = set()

    for anchor, definition in _anchors(onto):
        if not g.contains(anchor) or not _labelled(onto, definition):
            warnings.append(
                {"stage": "sample-complex", "anchor": anchor, "reason": "unusable anchor"}
            )
            continue

        positives = []
        for sub in sorted(g.named_descendants(Atomic(anchor))):
            positives.append(SubsumptionSample(
                Atomic(sub), definition, POSITIVE, PROVENANCE_ENTAILED, anchor
            ))
        for sup in g.ancestors(anchor):
            positives.append(SubsumptionSample(
                definition, Atomic(sup), POSITIVE, PROVENANCE_ENTAILED, anchor
            ))
        if len(positives) > cap:
            picked = rng.choice(len(positives), size=cap, replace=False)
            positives = [positives[int(i)] for i in sorted(picked)]

        negatives = _corruption_negatives(
            g, rng, anchor, definition, concept_pool, property_pool,
            cap, attempt_factor, sibling_replacements,
        )

        emitted = [s for s in positives + negatives if s.key() not in seen]
        if not emitted:
            warnings.append(
                {"stage": "sample-complex", "anchor": anchor, "reason": "no emittable samples"}
            )
            continue
        seen.update(s.key() for s in emitted)
        samples.extend(emitted)

    return samples, warnings


def _corruption_negatives(
    g: ToldGraph,
    rng: np.random.Generator,
    anchor: Iri,
    definition: ConceptExpr,
    concept_pool: list[Iri],
    property_pool: list[Iri],
    cap: int,
    attempt_factor: int,
    sibling_replacements: bool,
) -> list[SubsumptionSample]:
    anchor_expr = Atomic(anchor)
    pool_set = frozenset(concept_pool)
    def_atoms = atoms_of(definition)
    def_props = properties_of(definition)
    # occurrence 0 is the anchor itself; then the definition's atoms, then props
    n_concept_occ = 1 + len(def_atoms)
    n_occ = n_concept_occ + len(def_props)

    out: list[SubsumptionSample] = []
    seen: set[tuple[str, str]] = set()
    for _ in range(attempt_factor * cap):
        if len(out) >= cap or n_occ == 0:
            break
        occ = int(rng.integers(0, n_occ))
        if occ < n_concept_occ:
            old = anchor if occ == 0 else def_atoms[occ - 1]
            new = _draw_concept(g, rng, old, concept_pool, pool_set, sibling_replacements)
            if new is None:
                continue
            provenance = PROVENANCE_CORRUPT_NAMED
            if occ == 0:
                corrupted_side, intact_side = Atomic(new), definition
            else:
                corrupted = _replace_atom_at(definition, occ - 1, new, [0])
                corrupted_side, intact_side = corrupted, anchor_expr
        else:
            if not def_props:
                continue
            prop_occ = occ - n_concept_occ
            old = def_props[prop_occ]
            choices = [p for p in property_pool if p != old]
            if not choices:
                continue
            new = choices[int(rng.integers(0, len(choices)))]
            corrupted = _replace_prop_at(definition, prop_occ, new, [0])
            corrupted_side, intact_side = corrupted, anchor_expr
            provenance = PROVENANCE_CORRUPT_PROPERTY

        if corrupted_side == intact_side:
            continue
        if int(rng.integers(0, 2)) == 0:
            sub, sup = intact_side, corrupted_side
        else:
            sub, sup = corrupted_side, intact_side
        if not g.assumed_disjoint(sub, sup):
            continue
        sample = SubsumptionSample(sub, sup, NEGATIVE, provenance, anchor)
        if sample.key() in seen:
            continue
        seen.add(sample.key())
        out.append(sample)
    return out


def _draw_concept(
    g: ToldGraph,
    rng: np.random.Generator,
    old: Iri,
    pool: list[Iri],
    pool_set: frozenset[Iri],
    sibling_replacements: bool,
) -> Iri | None:
    if sibling_replacements and g.contains(old):
        sibs = sorted(s for s in g.siblings(old) if s in pool_set)
        if sibs:
            return sibs[int(rng.integers(0, len(sibs)))]
    choices = [c for c in pool if c != old]
    if not choices:
        return None
    return choices[int(rng.integers(0, len(choices)))]


def split(
    samples: list[SubsumptionSample],
    ratios: tuple[float, float, float],
    rng: np.random.Generator,
    balance: bool = True,
    seed: int = 0,
) -> DatasetSplit:
    """Label-stratified train/dev/test partition with per-split balance.

    Duplicate (sub, super) keys are dropped first, so the partitions are
    key-disjoint; the dominant label is trimmed to the minority count before
    partitioning.  Per-label partition sizes land within one sample of the
    requested ratio.
    """
    if not samples:
        raise SamplingError("no samples to split")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise SamplingError(f"ratios must sum to 1, got {ratios}")

    unique: dict[tuple[str, str], SubsumptionSample] = {}
    for s in samples:
        unique.setdefault(s.key(), s)
    pos = [s for s in unique.values() if s.label == POSITIVE]
    neg = [s for s in unique.values() if s.label == NEGATIVE]

    if balance:
        m = min(len(pos), len(neg))
        if m == 0:
            raise SamplingError("both labels must be present to balance")
        pos = _take(pos, m, rng)
        neg = _take(neg, m, rng)

    parts: dict[str, list[SubsumptionSample]] = {"train": [], "dev": [], "test": []}
    for group in (pos, neg):
        shuffled = _take(group, len(group), rng)
        bounds = _cut_points(len(group), ratios)
        parts["train"].extend(shuffled[: bounds[0]])
        parts["dev"].extend(shuffled[bounds[0] : bounds[1]])
        parts["test"].extend(shuffled[bounds[1] :])

    out: dict[str, list[SubsumptionSample]] = {}
    for name, members in parts.items():
        out[name] = _take(members, len(members), rng)
    return DatasetSplit(
        train=tuple(out["train"]),
        dev=tuple(out["dev"]),
        test=tuple(out["test"]),
        seed=seed,
        ratios=tuple(ratios),
    )


def _take(items: list, k: int, rng: np.random.Generator) -> list:
    order = rng.permutation(len(items))
    return [items[i] for i in order[:k]]


def _cut_points(n: int, ratios: tuple[float, float, float]) -> tuple[int, int]:
    first = int(np.floor(ratios[0] * n + 0.5))
    second = int(np.floor((ratios[0] + ratios[1]) * n + 0.5))
    return first, max(first, second)


def k_shot(
    ds: DatasetSplit, k: int, seed: int
) -> tuple[list[SubsumptionSample], list[SubsumptionSample]]:
    """Exactly ``k`` samples per label from train, and separately from dev."""
    rng = np.random.default_rng(seed)
    out = []
    for partition in (ds.train, ds.dev):
        pos = [s for s in partition if s.label == POSITIVE]
        neg = [s for s in partition if s.label == NEGATIVE]
        if k > len(pos) or k > len(neg):
            raise SamplingError(
                f"k={k} exceeds per-label count ({len(pos)} pos, {len(neg)} neg)"
            )
        chosen = _take(pos, k, rng) + _take(neg, k, rng)
        out.append(_take(chosen, len(chosen), rng))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------

LABEL_TEXT = {POSITIVE: "entailment", NEGATIVE: "non-entailment"}


def to_record(
    sample: SubsumptionSample,
    names: dict[Iri, str],
    lex: VerbaliserLexicon = DEFAULT_LEXICON,
) -> dict:
    """JSON-ready record with fixed field order."""
    return {
        "sub": canonical_form(sample.sub),
        "super": canonical_form(sample.sup),
        "v_sub": verbalise(sample.sub, names, lex),
        "v_super": verbalise(sample.sup, names, lex),
        "label": LABEL_TEXT[sample.label],
        "provenance": sample.provenance,
        "anchor": sample.anchor,
    }


def write_jsonl(path, records: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")

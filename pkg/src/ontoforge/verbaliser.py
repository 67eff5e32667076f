"""Recursive translation of concept expressions into English phrases.

The rules, by pattern:

* named concept: its display label
* property: its label, with ``is`` prepended when the first word is a
  passive verb, adjective, or noun (``part of`` becomes ``is part of``)
* complement: ``not`` + recursive text
* ``r some C``: ``something that <r> some <C>``
* ``r only C``: ``something that <r> only <C>``
* intersection: restrictions sharing quantifier and property are first
  collapsed into one (see :func:`ontoforge.core.merge_restrictions`), then
  (a) all conjuncts are restrictions: one ``something that ... and ...``
  clause chain; (b) mixed: the non-restriction conjuncts become the
  antecedent before ``that`` and each restriction clause drops its own
  ``something that``; (c) no restrictions: labels joined by ``and``
* union: as intersection with ``or``, except the mixed case keeps every
  disjunct fully spelled out and simply joins them with ``or``

One wrinkle in the mixed intersection case: when the antecedent ends in a
preposition (a relational label such as ``concentration of``), gluing it
directly to the relative clause would strand the preposition, so the
``something`` head is kept: ``concentration of something that ...``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .core import (
    And,
    Atomic,
    Bottom,
    ConceptExpr,
    Exists,
    Forall,
    Iri,
    Not,
    Or,
    RESTRICTIONS,
    Top,
    merge_restrictions,
)

VOWELS = frozenset("aeiou")


class MissingLabelError(KeyError):
    pass


@dataclass(frozen=True)
class VerbaliserLexicon:
    """Deterministic stand-in for a part-of-speech tagger.

    The first token of a property label is treated as a passive verb when it
    carries one of ``passive_verb_suffixes``, as an adjective or noun when
    listed, as an adverb when it ends in ``ly``, and as an active verb when
    it ends in ``s``; anything left is taken for a noun.  Passive verbs,
    adjectives and nouns get ``is_prefix`` prepended.  The word lists are
    overridable so callers can pin any classification they need.
    """

    passive_verb_suffixes: tuple[str, ...] = ("ed", "en")
    known_adjectives: frozenset[str] = frozenset()
    known_nouns: frozenset[str] = frozenset()
    is_prefix: str = "is"
    antecedent_trailing_preps: frozenset[str] = frozenset({"of"})

    def needs_is(self, first_word: str) -> bool:
        word = first_word.lower()
        if word == self.is_prefix or word in ("are", "was", "were"):
            return False
        if word in self.known_adjectives or word in self.known_nouns:
            return True
        if any(word.endswith(suffix) for suffix in self.passive_verb_suffixes):
            return True
        if word.endswith("ly"):
            return False  # adverb
        if word.endswith("s"):
            return False  # active third-person verb
        return True  # bare noun or adjective


DEFAULT_LEXICON = VerbaliserLexicon()


def verbalise_property(
    prop: Iri, names: Mapping[Iri, str], lex: VerbaliserLexicon = DEFAULT_LEXICON
) -> str:
    """Label of an object property, grammar-fixed for clause position."""
    label = names.get(prop)
    if not label:
        raise MissingLabelError(prop)
    first = label.split(None, 1)[0]
    if lex.needs_is(first):
        return f"{lex.is_prefix} {label}"
    return label


def article(next_word: str) -> str:
    """Indefinite article for the word that follows: ``a``, ``an``, or none."""
    if not next_word:
        raise ValueError("empty word")
    if next_word == "something":
        return ""
    if next_word[0].lower() in VOWELS:
        return "an"
    return "a"


def _concept_name(iri: Iri, names: Mapping[Iri, str]) -> str:
    label = names.get(iri)
    if not label:
        raise MissingLabelError(iri)
    return label


def verbalise(
    expr: ConceptExpr,
    names: Mapping[Iri, str],
    lex: VerbaliserLexicon = DEFAULT_LEXICON,
) -> str:
    """English phrase for a concept expression.

    ``names`` maps concept and property IRIs to their display labels.
    Same-property restrictions are merged before any text is produced.
    """
    return _verbalise(merge_restrictions(expr), names, lex)


def _clause(restriction: ConceptExpr, names, lex) -> str:
    """Relative-clause body of a restriction, without the ``something that`` head."""
    keyword = "some" if isinstance(restriction, Exists) else "only"
    prop = verbalise_property(restriction.prop, names, lex)
    filler = _verbalise(restriction.filler, names, lex)
    return f"{prop} {keyword} {filler}"


def _verbalise(expr: ConceptExpr, names, lex) -> str:
    if isinstance(expr, Atomic):
        return _concept_name(expr.iri, names)
    if isinstance(expr, Top):
        return "thing"
    if isinstance(expr, Bottom):
        return "nothing"
    if isinstance(expr, Not):
        return "not " + _verbalise(expr.inner, names, lex)
    if isinstance(expr, RESTRICTIONS):
        return "something that " + _clause(expr, names, lex)
    if isinstance(expr, (And, Or)):
        joiner = " and " if isinstance(expr, And) else " or "
        restrictions = [p for p in expr.parts if isinstance(p, RESTRICTIONS)]
        others = [p for p in expr.parts if not isinstance(p, RESTRICTIONS)]
        if not restrictions:
            # case (c): plain coordination
            return joiner.join(_verbalise(p, names, lex) for p in expr.parts)
        if not others:
            # case (a): one clause chain under a shared head
            clauses = joiner.join(_clause(r, names, lex) for r in restrictions)
            return "something that " + clauses
        if isinstance(expr, Or):
            # mixed union reads as plain coordination of full phrases
            return joiner.join(_verbalise(p, names, lex) for p in expr.parts)
        # case (b): named antecedent, then the relative clauses
        antecedent = " and ".join(_verbalise(p, names, lex) for p in others)
        clauses = " and ".join(_clause(r, names, lex) for r in restrictions)
        last_word = antecedent.rsplit(None, 1)[-1]
        if last_word in lex.antecedent_trailing_preps:
            return f"{antecedent} something that {clauses}"
        return f"{antecedent} that {clauses}"
    raise TypeError(f"cannot verbalise {type(expr).__name__}")

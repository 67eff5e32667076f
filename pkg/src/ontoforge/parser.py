"""Loading ontologies from OWL functional-style syntax, plus the expression grammar.

Only the constructs needed for subsumption sampling are modelled:
declarations, SubClassOf, EquivalentClasses, ClassAssertion, label/synonym/
deprecation annotations, and the class constructors intersection, union,
complement, some-values-from, all-values-from, owl:Thing and owl:Nothing.
Anything else is either skipped with a recorded warning or rejected,
depending on the parse options.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import (
    And,
    Atomic,
    Axiom,
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
    SubClassOf,
    Top,
    atoms_of,
    properties_of,
)

RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
OBO_HAS_SYNONYM = "http://www.geneontology.org/formats/oboInOwl#hasSynonym"
OBO_HAS_EXACT_SYNONYM = "http://www.geneontology.org/formats/oboInOwl#hasExactSynonym"
OWL_DEPRECATED = "http://www.w3.org/2002/07/owl#deprecated"
OWL_THING = "http://www.w3.org/2002/07/owl#Thing"
OWL_NOTHING = "http://www.w3.org/2002/07/owl#Nothing"

BUILTIN_PREFIXES = {
    "owl": "http://www.w3.org/2002/07/owl#",
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
    "obo": "http://purl.obolibrary.org/obo/",
    "oboInOwl": "http://www.geneontology.org/formats/oboInOwl#",
}

DEFAULT_LABEL_PRECEDENCE = (RDFS_LABEL, OBO_HAS_SYNONYM, OBO_HAS_EXACT_SYNONYM)


class OntologySyntaxError(ValueError):
    """Raised on malformed input; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnsupportedConstructError(ValueError):
    def __init__(self, construct: str, line: int):
        super().__init__(f"unsupported construct {construct} (line {line})")
        self.construct = construct
        self.line = line


class ConceptSyntaxError(ValueError):
    """Raised when canonical concept text is malformed; carries the offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


@dataclass(frozen=True)
class ParseWarning:
    line: int
    construct: str

    def as_record(self) -> dict:
        return {"line": self.line, "construct": self.construct}


@dataclass
class ParseOptions:
    """Controls how unsupported constructs and curies are handled.

    ``on_unsupported``: ``"skip_with_warning"`` drops the enclosing axiom and
    records the construct name with its line number; ``"fail"`` raises.
    ``curie_prefixes`` extends the built-in prefix table; document-level
    ``Prefix`` declarations override both.
    """

    on_unsupported: str = "skip_with_warning"
    curie_prefixes: dict[str, str] = field(default_factory=dict)
    label_precedence: tuple[str, ...] = DEFAULT_LABEL_PRECEDENCE


# ---------------------------------------------------------------------------
# Tokenizer for the functional-style syntax
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<open>[A-Za-z][\w.-]*\()            # e.g. SubClassOf(
  | (?P<close>\))
  | (?P<fulliri><[^<>\s]*>)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<langtag>@[A-Za-z][A-Za-z0-9-]*)
  | (?P<datatype>\^\^\S+?(?=[\s)]))
  | (?P<curie>[^\s()<>"]+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise OntologySyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup or ""
        value = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, value, line, pos - line_start + 1))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rfind("\n") + 1
        pos = m.end()
    return tokens


def _unquote(raw: str) -> str:
    body = raw[1:-1]
    return body.replace('\\"', '"').replace("\\\\", "\\")


class _Cursor:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else _Token("", "", 1, 1)
            raise OntologySyntaxError("unexpected end of input", last.line, last.column)
        self.i += 1
        return tok

    def expect_close(self) -> None:
        tok = self.next()
        if tok.kind != "close":
            raise OntologySyntaxError(
                f"expected ')' but found {tok.text!r}", tok.line, tok.column
            )

    def skip_to_close(self) -> None:
        """Consume tokens up to and including the ')' matching the open just read."""
        depth = 1
        while depth > 0:
            tok = self.next()
            if tok.kind == "open":
                depth += 1
            elif tok.kind == "close":
                depth -= 1


# ---------------------------------------------------------------------------
# Document parser
# ---------------------------------------------------------------------------


class _Skip(Exception):
    """Internal signal: the enclosing axiom references an unsupported construct."""

    def __init__(self, construct: str, line: int):
        self.construct = construct
        self.line = line


class _DocumentParser:
    def __init__(self, opts: ParseOptions):
        self.opts = opts
        self.prefixes = dict(BUILTIN_PREFIXES)
        self.prefixes.update(opts.curie_prefixes)
        self.warnings: list[ParseWarning] = []
        self.concepts: set[Iri] = set()
        self.properties: set[Iri] = set()
        self.individuals: set[Iri] = set()
        self.axioms: list[Axiom] = []
        self.deprecated: set[Iri] = set()
        # iri -> annotation property -> texts, in document order
        self.annotations: dict[Iri, dict[str, list[str]]] = {}

    # -- entity resolution --------------------------------------------------

    def resolve(self, tok: _Token) -> Iri:
        if tok.kind == "fulliri":
            return tok.text[1:-1]
        if tok.kind == "curie":
            if ":" in tok.text:
                prefix, local = tok.text.split(":", 1)
                if "/" in prefix or prefix in ("http", "https", "urn"):
                    return tok.text
                base = self.prefixes.get(prefix)
                if base is None:
                    raise OntologySyntaxError(
                        f"undeclared prefix {prefix!r}", tok.line, tok.column
                    )
                return base + local
            return tok.text
        raise OntologySyntaxError(
            f"expected an entity but found {tok.text!r}", tok.line, tok.column
        )

    def _entity_token(self, cur: _Cursor) -> _Token:
        tok = cur.next()
        if tok.kind not in ("fulliri", "curie"):
            raise OntologySyntaxError(
                f"expected an entity but found {tok.text!r}", tok.line, tok.column
            )
        return tok

    # -- class expressions ---------------------------------------------------

    def parse_class_expr(self, cur: _Cursor) -> ConceptExpr:
        tok = cur.next()
        if tok.kind in ("fulliri", "curie"):
            iri = self.resolve(tok)
            if iri == OWL_THING:
                return Top()
            if iri == OWL_NOTHING:
                return Bottom()
            self.concepts.add(iri)
            return Atomic(iri)
        if tok.kind != "open":
            raise OntologySyntaxError(
                f"expected a class expression but found {tok.text!r}",
                tok.line,
                tok.column,
            )
        head = tok.text[:-1]
        if head == "ObjectIntersectionOf":
            parts = self._expr_list(cur)
            return And(parts)
        if head == "ObjectUnionOf":
            parts = self._expr_list(cur)
            return Or(parts)
        if head == "ObjectComplementOf":
            inner = self.parse_class_expr(cur)
            cur.expect_close()
            return Not(inner)
        if head in ("ObjectSomeValuesFrom", "ObjectAllValuesFrom"):
            prop_tok = cur.next()
            if prop_tok.kind == "open":
                # ObjectInverseOf and friends are out of scope
                raise _Skip(prop_tok.text[:-1], prop_tok.line)
            prop = self.resolve(prop_tok)
            self.properties.add(prop)
            filler = self.parse_class_expr(cur)
            cur.expect_close()
            if head == "ObjectSomeValuesFrom":
                return Exists(prop, filler)
            return Forall(prop, filler)
        raise _Skip(head, tok.line)

    def _expr_list(self, cur: _Cursor) -> tuple[ConceptExpr, ...]:
        parts: list[ConceptExpr] = []
        while True:
            tok = cur.peek()
            if tok is None:
                raise OntologySyntaxError("unexpected end of input", 0, 0)
            if tok.kind == "close":
                cur.next()
                break
            parts.append(self.parse_class_expr(cur))
        if len(parts) < 2:
            raise OntologySyntaxError(
                "intersection/union needs at least two operands", tok.line, tok.column
            )
        return tuple(parts)

    # -- axioms ---------------------------------------------------------------

    def parse_document(self, text: str) -> None:
        cur = _Cursor(_tokenize(text))
        while cur.peek() is not None:
            tok = cur.next()
            if tok.kind != "open":
                raise OntologySyntaxError(
                    f"expected a declaration or axiom but found {tok.text!r}",
                    tok.line,
                    tok.column,
                )
            head = tok.text[:-1]
            if head == "Prefix":
                self._parse_prefix(cur)
            elif head == "Ontology":
                self._parse_ontology_body(cur)
            else:
                self._parse_axiom(head, tok, cur)

    def _parse_prefix(self, cur: _Cursor) -> None:
        tok = cur.next()
        m = re.fullmatch(r"([^\s:=]*):=<([^<>\s]*)>", tok.text)
        if m is None and tok.text.endswith(":="):
            iri_tok = cur.next()
            if iri_tok.kind != "fulliri":
                raise OntologySyntaxError(
                    "malformed Prefix declaration", tok.line, tok.column
                )
            self.prefixes[tok.text[:-2]] = iri_tok.text[1:-1]
        elif m is not None:
            self.prefixes[m.group(1)] = m.group(2)
        else:
            raise OntologySyntaxError(
                "malformed Prefix declaration", tok.line, tok.column
            )
        cur.expect_close()

    def _parse_ontology_body(self, cur: _Cursor) -> None:
        while True:
            tok = cur.peek()
            if tok is None:
                raise OntologySyntaxError("unterminated Ontology(...)", 0, 0)
            if tok.kind == "close":
                cur.next()
                return
            if tok.kind == "fulliri":
                cur.next()  # ontology IRI / version IRI
                continue
            cur.next()
            if tok.kind != "open":
                raise OntologySyntaxError(
                    f"expected an axiom but found {tok.text!r}", tok.line, tok.column
                )
            self._parse_axiom(tok.text[:-1], tok, cur)

    def _unsupported(self, construct: str, line: int) -> None:
        if self.opts.on_unsupported == "fail":
            raise UnsupportedConstructError(construct, line)
        self.warnings.append(ParseWarning(line, construct))

    def _parse_axiom(self, head: str, tok: _Token, cur: _Cursor) -> None:
        start = cur.i  # directly after the axiom's opening token
        try:
            if head == "Declaration":
                self._parse_declaration(cur)
            elif head == "SubClassOf":
                sub = self.parse_class_expr(cur)
                sup = self.parse_class_expr(cur)
                cur.expect_close()
                self.axioms.append(SubClassOf(sub, sup))
            elif head == "EquivalentClasses":
                exprs = [self.parse_class_expr(cur)]
                while cur.peek() is not None and cur.peek().kind != "close":
                    exprs.append(self.parse_class_expr(cur))
                cur.expect_close()
                if len(exprs) != 2:
                    raise _Skip("EquivalentClasses/n>2", tok.line)
                left, right = exprs
                if isinstance(right, Atomic) and not isinstance(left, Atomic):
                    left, right = right, left
                self.axioms.append(EquivalentClasses(left, right))
            elif head == "ClassAssertion":
                concept = self.parse_class_expr(cur)
                ind = self.resolve(self._entity_token(cur))
                cur.expect_close()
                self.individuals.add(ind)
                self.axioms.append(ClassAssertion(concept, ind))
            elif head == "AnnotationAssertion":
                self._parse_annotation(tok, cur)
            else:
                raise _Skip(head, tok.line)
        except _Skip as skip:
            cur.i = start
            cur.skip_to_close()
            self._unsupported(skip.construct, skip.line)

    def _parse_declaration(self, cur: _Cursor) -> None:
        tok = cur.next()
        if tok.kind != "open":
            raise OntologySyntaxError(
                f"malformed Declaration: {tok.text!r}", tok.line, tok.column
            )
        kind = tok.text[:-1]
        iri = self.resolve(self._entity_token(cur))
        cur.expect_close()  # inner
        cur.expect_close()  # Declaration
        if kind == "Class":
            if iri not in (OWL_THING, OWL_NOTHING):
                self.concepts.add(iri)
        elif kind == "ObjectProperty":
            self.properties.add(iri)
        elif kind == "NamedIndividual":
            self.individuals.add(iri)
        # AnnotationProperty / Datatype / DataProperty declarations carry no
        # information we track; accepted silently.

    def _parse_annotation(self, tok: _Token, cur: _Cursor) -> None:
        prop = self.resolve(self._entity_token(cur))
        subject = self.resolve(self._entity_token(cur))
        value_tok = cur.next()
        lang = None
        if value_tok.kind == "string":
            value = _unquote(value_tok.text)
            nxt = cur.peek()
            if nxt is not None and nxt.kind == "langtag":
                lang = cur.next().text[1:]
            nxt = cur.peek()
            if nxt is not None and nxt.kind == "datatype":
                cur.next()
        elif value_tok.kind in ("fulliri", "curie"):
            value = self.resolve(value_tok)
        else:
            raise OntologySyntaxError(
                f"malformed annotation value {value_tok.text!r}",
                value_tok.line,
                value_tok.column,
            )
        cur.expect_close()

        if prop == OWL_DEPRECATED:
            if value.strip().lower() == "true":
                self.deprecated.add(subject)
            return
        if prop not in self.opts.label_precedence:
            raise _Skip(f"AnnotationAssertion[{prop}]", tok.line)
        if lang is not None and lang.split("-")[0] != "en":
            raise _Skip(f"AnnotationAssertion@{lang}", tok.line)
        self.annotations.setdefault(subject, {}).setdefault(prop, []).append(value)

    # -- assembly -------------------------------------------------------------

    def build(self) -> Ontology:
        for axiom in self.axioms:
            exprs: list[ConceptExpr] = []
            if isinstance(axiom, SubClassOf):
                exprs = [axiom.sub, axiom.sup]
            elif isinstance(axiom, EquivalentClasses):
                exprs = [axiom.left, axiom.right]
            elif isinstance(axiom, ClassAssertion):
                exprs = [axiom.concept]
            for expr in exprs:
                self.concepts.update(atoms_of(expr))
                self.properties.update(properties_of(expr))

        clash = (self.concepts & self.properties) | (
            self.concepts & self.individuals
        ) | (self.properties & self.individuals)
        if clash:
            some = sorted(clash)[0]
            raise OntologySyntaxError(
                f"{some} is used as more than one entity kind", 0, 0
            )

        labels: dict[Iri, tuple[str, ...]] = {}
        for iri, by_prop in self.annotations.items():
            ordered: list[str] = []
            for prop in self.opts.label_precedence:
                ordered.extend(by_prop.get(prop, []))
            if ordered:
                labels[iri] = tuple(ordered)

        return Ontology(
            concepts=frozenset(self.concepts),
            properties=frozenset(self.properties),
            individuals=frozenset(self.individuals),
            axioms=tuple(self.axioms),
            labels=labels,
            deprecated=frozenset(self.deprecated),
        )


def parse_ontology(
    text: str, opts: ParseOptions | None = None
) -> tuple[Ontology, list[ParseWarning]]:
    """Parse a functional-style syntax document.

    Returns the ontology together with one warning per skipped construct.
    The result is deterministic: the same document and options always produce
    the same ontology and warning list.
    """
    opts = opts or ParseOptions()
    if opts.on_unsupported not in ("skip_with_warning", "fail"):
        raise ValueError(f"unknown on_unsupported mode {opts.on_unsupported!r}")
    parser = _DocumentParser(opts)
    parser.parse_document(text)
    return parser.build(), parser.warnings


# ---------------------------------------------------------------------------
# Canonical concept-expression grammar
# ---------------------------------------------------------------------------

_KEYWORDS = frozenset({"and", "or", "not", "some", "only"})


def _tokenize_concept(text: str) -> list[tuple[str, int]]:
    tokens: list[tuple[str, int]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()":
            tokens.append((ch, i))
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace() and text[j] not in "()":
            j += 1
        tokens.append((text[i:j], i))
        i = j
    return tokens


class _ConceptParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize_concept(text)
        self.i = 0

    def _peek(self) -> tuple[str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _next(self) -> tuple[str, int]:
        tok = self._peek()
        if tok is None:
            raise ConceptSyntaxError("unexpected end of expression", len(self.text))
        self.i += 1
        return tok

    def parse(self) -> ConceptExpr:
        expr = self._expr()
        tok = self._peek()
        if tok is not None:
            raise ConceptSyntaxError(f"trailing input {tok[0]!r}", tok[1])
        return expr

    def _expr(self) -> ConceptExpr:
        tok = self._next()
        text, pos = tok
        if text == "(":
            return self._compound()
        if text == ")":
            raise ConceptSyntaxError("unexpected ')'", pos)
        if text in _KEYWORDS:
            raise ConceptSyntaxError(f"unexpected keyword {text!r}", pos)
        if text == "Thing":
            return Top()
        if text == "Nothing":
            return Bottom()
        return Atomic(text)

    def _compound(self) -> ConceptExpr:
        first, pos = self._next()
        if first == "not":
            inner = self._expr()
            self._close()
            return Not(inner)
        nxt = self._peek()
        if nxt is None:
            raise ConceptSyntaxError("unterminated expression", len(self.text))
        if nxt[0] in ("some", "only"):
            if first in ("(", ")") or first in _KEYWORDS:
                raise ConceptSyntaxError(f"bad property name {first!r}", pos)
            quantifier, _ = self._next()
            filler = self._expr()
            self._close()
            if quantifier == "some":
                return Exists(first, filler)
            return Forall(first, filler)
        # n-ary and/or chain; the first operand was already consumed as text
        self.i -= 1
        head = self._expr()
        parts = [head]
        op = None
        while True:
            tok = self._next()
            if tok[0] == ")":
                break
            if tok[0] not in ("and", "or"):
                raise ConceptSyntaxError(f"expected 'and' or 'or', got {tok[0]!r}", tok[1])
            if op is None:
                op = tok[0]
            elif tok[0] != op:
                raise ConceptSyntaxError("mixed 'and'/'or' without parentheses", tok[1])
            parts.append(self._expr())
        if op is None or len(parts) < 2:
            raise ConceptSyntaxError("parenthesised expression needs an operator", pos)
        return And(tuple(parts)) if op == "and" else Or(tuple(parts))

    def _close(self) -> None:
        tok = self._next()
        if tok[0] != ")":
            raise ConceptSyntaxError(f"expected ')', got {tok[0]!r}", tok[1])


def parse_concept(text: str) -> ConceptExpr:
    """Parse canonical concept text back into an expression tree.

    Inverse of :func:`ontoforge.core.canonical_form` on the supported subset:
    ``parse_concept(canonical_form(e)) == e``.
    """
    if not text.strip():
        raise ConceptSyntaxError("empty expression", 0)
    return _ConceptParser(text).parse()

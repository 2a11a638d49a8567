"""Ground propositional terms with nestable grading annotations.

The language has boolean connectives over predicate atoms, a grading
constructor ``G(t, g)`` attaching an exact non-negative rational grade ``g``
to a proposition ``t`` (nestable to arbitrary finite depth), and numeric
grade-order atoms ``g1 < g2`` / ``g1 == g2``. Implication is surface sugar
only: ``a -> b`` is stored as ``~a | b`` and never appears in a parsed term.

Theory files are line-oriented statements terminated by ``.`` with ``#``
comments:

    stmt        := theory-decl | domain-decl | forall-stmt | term-stmt
    theory-decl := "theory" IDENT "."
    domain-decl := "domain" IDENT "=" "{" IDENT ("," IDENT)* "}" "."
    forall-stmt := "forall" VAR ("," VAR)* "in" IDENT ":" term "."
    term-stmt   := term "."
    term        := "true" | atom | "~" term | term "&" term | term "|" term
                 | term "->" term | "G(" term "," grade ")"
                 | grade "<" grade | grade "==" grade
    atom        := IDENT [ "(" individual ("," individual)* ")" ]
    individual  := IDENT [ "(" individual ("," individual)* ")" ]
    grade       := non-negative decimal numeral or rational "a/b"

Precedence: ``~`` > ``&`` > ``|`` > ``->``; ``->`` is right-associative.
Universal statements range over a declared finite domain and are expanded
eagerly into their ground instances, so a parsed theory holds ground terms
only. Term identity everywhere downstream is structural equality of the
parsed (implication-free) tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional

from .errors import ParseError

GradeValue = Fraction

_KEYWORDS = {"domain", "forall", "in", "theory"}


@dataclass(frozen=True)
class Individual:
    """A constant or a functional individual such as ``penguin(A)``."""

    name: str
    args: tuple["Individual", ...] = ()

    def render(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(a.render() for a in self.args)})"


class Term:
    """Marker base class; concrete terms are the frozen dataclasses below."""

    __slots__ = ()


@dataclass(frozen=True)
class TrueTerm(Term):
    pass


@dataclass(frozen=True)
class Atom(Term):
    predicate: str
    args: tuple[Individual, ...] = ()


@dataclass(frozen=True)
class Not(Term):
    inner: Term


@dataclass(frozen=True)
class And(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Or(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Grade(Term):
    """The grading proposition: ``inner`` carries grade ``grade``."""

    inner: Term
    grade: GradeValue

    def __post_init__(self):
        if self.grade < 0:
            raise ValueError(f"grade must be non-negative, got {self.grade}")


@dataclass(frozen=True)
class Less(Term):
    a: GradeValue
    b: GradeValue


@dataclass(frozen=True)
class GradeEq(Term):
    a: GradeValue
    b: GradeValue


TRUE = TrueTerm()


@dataclass(frozen=True)
class Theory:
    """A named finite set of ground terms plus its domain declarations."""

    name: str
    domains: tuple[tuple[str, tuple[Individual, ...]], ...]
    terms: frozenset[Term]

    def sorted_terms(self) -> tuple[Term, ...]:
        return tuple(sorted(self.terms, key=render))


def grade_text(value: GradeValue) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# Precedence levels used by render: | = 1, & = 2, everything else atomic.
def _prec(t: Term) -> int:
    if isinstance(t, Or):
        return 1
    if isinstance(t, And):
        return 2
    return 3


@lru_cache(maxsize=None)
def render(t: Term) -> str:
    """Canonical text for a term; ``parse_term(render(t)) == t``."""

    def sub(x: Term, min_prec: int) -> str:
        s = render(x)
        return f"({s})" if _prec(x) < min_prec else s

    if isinstance(t, TrueTerm):
        return "true"
    if isinstance(t, Atom):
        if not t.args:
            return t.predicate
        return f"{t.predicate}({', '.join(a.render() for a in t.args)})"
    if isinstance(t, Not):
        return "~" + sub(t.inner, 3)
    if isinstance(t, And):
        # left-associative parse: the right child needs parens if it is an And
        return f"{sub(t.left, 2)} & {sub(t.right, 3)}"
    if isinstance(t, Or):
        return f"{sub(t.left, 1)} | {sub(t.right, 2)}"
    if isinstance(t, Grade):
        return f"G({render(t.inner)}, {grade_text(t.grade)})"
    if isinstance(t, Less):
        return f"{grade_text(t.a)} < {grade_text(t.b)}"
    if isinstance(t, GradeEq):
        return f"{grade_text(t.a)} == {grade_text(t.b)}"
    raise TypeError(f"not a term: {t!r}")


def subterms(t: Term) -> Iterator[Term]:
    """Every proposition-sorted subterm of ``t``, including ``t`` itself."""
    yield t
    if isinstance(t, Not):
        yield from subterms(t.inner)
    elif isinstance(t, (And, Or)):
        yield from subterms(t.left)
        yield from subterms(t.right)
    elif isinstance(t, Grade):
        yield from subterms(t.inner)


# ---------------------------------------------------------------------------
# Tokenizer


_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>\#[^\n]*)
      | (?P<number>\d+(?:\.\d+)?(?:/\d+)?)
      | (?P<arrow>->)
      | (?P<darrow>=>)
      | (?P<eqeq>==)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<punct>[(){},.:~&|<=])
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
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.column)

    def expect(self, kind: str, text: Optional[str] = None) -> _Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            raise self.fail(f"expected {want!r}, found {tok.text or 'end of input'!r}")
        return self.advance()

    def at_punct(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.text == text

    # -- terms -------------------------------------------------------------

    def term(self) -> Term:
        left = self.or_term()
        if self.peek().kind == "arrow":
            self.advance()
            right = self.term()  # right-associative
            return Or(Not(left), right)
        return left

    def or_term(self) -> Term:
        left = self.and_term()
        while self.at_punct("|"):
            self.advance()
            left = Or(left, self.and_term())
        return left

    def and_term(self) -> Term:
        left = self.unary_term()
        while self.at_punct("&"):
            self.advance()
            left = And(left, self.unary_term())
        return left

    def unary_term(self) -> Term:
        if self.at_punct("~"):
            self.advance()
            return Not(self.unary_term())
        return self.primary_term()

    def grade(self) -> GradeValue:
        tok = self.expect("number")
        return Fraction(tok.text)

    def primary_term(self) -> Term:
        tok = self.peek()
        if tok.kind == "punct" and tok.text == "(":
            self.advance()
            inner = self.term()
            self.expect("punct", ")")
            return inner
        if tok.kind == "number":
            a = self.grade()
            op = self.peek()
            if op.kind == "eqeq":
                self.advance()
                return GradeEq(a, self.grade())
            if self.at_punct("<"):
                self.advance()
                return Less(a, self.grade())
            raise self.fail("expected '<' or '==' after grade")
        if tok.kind == "ident":
            if tok.text == "true":
                self.advance()
                return TRUE
            if tok.text in _KEYWORDS:
                raise self.fail(f"reserved keyword {tok.text!r} cannot start a term")
            if tok.text == "G":
                self.advance()
                self.expect("punct", "(")
                inner = self.term()
                self.expect("punct", ",")
                g = self.grade()
                self.expect("punct", ")")
                return Grade(inner, g)
            return self.atom()
        raise self.fail(f"expected a term, found {tok.text or 'end of input'!r}")

    def atom(self) -> Atom:
        name = self.expect("ident").text
        args: tuple[Individual, ...] = ()
        if self.at_punct("("):
            args = self.individual_args()
        return Atom(name, args)

    def individual(self) -> Individual:
        name = self.expect("ident").text
        args: tuple[Individual, ...] = ()
        if self.at_punct("("):
            args = self.individual_args()
        return Individual(name, args)

    def individual_args(self) -> tuple[Individual, ...]:
        self.expect("punct", "(")
        args = [self.individual()]
        while self.at_punct(","):
            self.advance()
            args.append(self.individual())
        self.expect("punct", ")")
        return tuple(args)


def parse_term(text: str) -> Term:
    """Parse a single ground term (no statements, no quantifiers)."""
    parser = _Parser(text)
    t = parser.term()
    if parser.peek().kind != "eof":
        raise parser.fail("unexpected trailing input after term")
    return t


# ---------------------------------------------------------------------------
# Theory files


def _substitute_ind(ind: Individual, env: dict[str, Individual]) -> Individual:
    if not ind.args:
        return env.get(ind.name, ind)
    return Individual(ind.name, tuple(_substitute_ind(a, env) for a in ind.args))


def _substitute(t: Term, env: dict[str, Individual]) -> Term:
    if isinstance(t, Atom):
        return Atom(t.predicate, tuple(_substitute_ind(a, env) for a in t.args))
    if isinstance(t, Not):
        return Not(_substitute(t.inner, env))
    if isinstance(t, And):
        return And(_substitute(t.left, env), _substitute(t.right, env))
    if isinstance(t, Or):
        return Or(_substitute(t.left, env), _substitute(t.right, env))
    if isinstance(t, Grade):
        return Grade(_substitute(t.inner, env), t.grade)
    return t


def parse_theory(text: str, name: str = "theory") -> Theory:
    """Parse a theory file into a ground, duplicate-free term set.

    Every ``forall`` statement is expanded over its declared domain: with k
    bound variables over a domain of size d it contributes d**k ground
    instances. Grounding substitutes domain elements for every zero-argument
    individual whose name matches a bound variable, including inside nested
    individuals such as ``abnormal(penguin(x))``.
    """
    parser = _Parser(text)
    domains: dict[str, tuple[Individual, ...]] = {}
    terms: dict[Term, None] = {}
    declared_name: Optional[str] = None

    while parser.peek().kind != "eof":
        tok = parser.peek()
        if tok.kind == "ident" and tok.text == "theory":
            parser.advance()
            name_tok = parser.expect("ident")
            parser.expect("punct", ".")
            if declared_name is not None:
                raise ParseError("duplicate theory name", name_tok.line, name_tok.column)
            declared_name = name_tok.text
        elif tok.kind == "ident" and tok.text == "domain":
            parser.advance()
            dom_tok = parser.expect("ident")
            parser.expect("punct", "=")
            parser.expect("punct", "{")
            members: list[Individual] = []
            if parser.peek().kind == "ident":
                members.append(Individual(parser.expect("ident").text))
                while parser.at_punct(","):
                    parser.advance()
                    members.append(Individual(parser.expect("ident").text))
            parser.expect("punct", "}")
            parser.expect("punct", ".")
            if not members:
                raise ParseError(f"empty domain {dom_tok.text!r}", dom_tok.line, dom_tok.column)
            if dom_tok.text in domains:
                raise ParseError(f"duplicate domain {dom_tok.text!r}", dom_tok.line, dom_tok.column)
            domains[dom_tok.text] = tuple(members)
        elif tok.kind == "ident" and tok.text == "forall":
            parser.advance()
            variables = [parser.expect("ident").text]
            while parser.at_punct(","):
                parser.advance()
                variables.append(parser.expect("ident").text)
            if len(set(variables)) != len(variables):
                raise ParseError("duplicate variable in forall", tok.line, tok.column)
            parser.expect("ident", "in")
            dom_tok = parser.expect("ident")
            if dom_tok.text not in domains:
                raise ParseError(f"undeclared domain {dom_tok.text!r}", dom_tok.line, dom_tok.column)
            parser.expect("punct", ":")
            body = parser.term()
            parser.expect("punct", ".")
            for combo in product(domains[dom_tok.text], repeat=len(variables)):
                env = dict(zip(variables, combo))
                terms[_substitute(body, env)] = None
        else:
            t = parser.term()
            parser.expect("punct", ".")
            terms[t] = None

    return Theory(
        name=declared_name or name,
        domains=tuple(sorted(domains.items())),
        terms=frozenset(terms),
    )


def theory_to_text(theory: Theory) -> str:
    """Write a theory back out in the file grammar (stable, reparseable)."""
    lines = [f"theory {theory.name}."]
    for dom, members in theory.domains:
        lines.append(f"domain {dom} = {{{', '.join(m.render() for m in members)}}}.")
    for t in theory.sorted_terms():
        lines.append(f"{render(t)}.")
    return "\n".join(lines) + "\n"

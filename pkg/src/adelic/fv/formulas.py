"""Syntax trees and parsing for ring formulas and Boolean-side formulas.

Two first-order languages share one concrete ASCII syntax:

* ring formulas over {+, -, *, 0, 1, =} with free variables w0, w1, ... and
  quantified variables named y or z (optionally suffixed with digits), e.g.
  ``exists y (y*y = w0)``;
* Boolean-side formulas over the powerset algebra, with variables v0, v1, ...
  and atoms ``v0 = v1``, ``v0 sub v1``, ``Fin(v0)``, ``v0 = 0``, ``v0 = 1``.

Connectives are ``not``, ``and``, ``or``, ``->`` (implication, right
associative, lowest precedence); quantifiers are ``exists``/``forall`` and
take the largest formula to their right.  Parse errors carry line and column.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "FormulaSyntaxError",
    "RingTerm",
    "RVar",
    "RBound",
    "RConst",
    "RAdd",
    "RSub",
    "RMul",
    "Formula",
    "REq",
    "BVar",
    "BEq",
    "BSub",
    "BFin",
    "BConst",
    "Not",
    "And",
    "Or",
    "Implies",
    "Exists",
    "Forall",
    "parse_ring_formula",
    "parse_boole_formula",
    "formula_to_text",
    "ring_free_vars",
    "boole_free_vars",
    "ring_arity",
    "boole_arity",
    "quantifier_depth",
]


class FormulaSyntaxError(ValueError):
    """Malformed formula text; carries line and column of the offending token."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


# -- syntax tree nodes ------------------------------------------------------


class RingTerm:
    pass


@dataclass(frozen=True, slots=True)
class RVar(RingTerm):
    """Free ring variable w<index>."""

    index: int


@dataclass(frozen=True, slots=True)
class RBound(RingTerm):
    """Quantified ring variable, identified by name."""

    name: str


@dataclass(frozen=True, slots=True)
class RConst(RingTerm):
    """The ring constant 0 or 1."""

    value: int


@dataclass(frozen=True, slots=True)
class RAdd(RingTerm):
    left: RingTerm
    right: RingTerm


@dataclass(frozen=True, slots=True)
class RSub(RingTerm):
    left: RingTerm
    right: RingTerm


@dataclass(frozen=True, slots=True)
class RMul(RingTerm):
    left: RingTerm
    right: RingTerm


class Formula:
    pass


@dataclass(frozen=True, slots=True)
class REq(Formula):
    """Ring atom: term = term."""

    left: RingTerm
    right: RingTerm


@dataclass(frozen=True, slots=True)
class BVar:
    """Boolean-side variable v<index>."""

    index: int


@dataclass(frozen=True, slots=True)
class BEq(Formula):
    """Boolean atom: v_i = v_j."""

    left: BVar
    right: BVar


@dataclass(frozen=True, slots=True)
class BSub(Formula):
    """Boolean atom: v_i sub v_j (subset)."""

    left: BVar
    right: BVar


@dataclass(frozen=True, slots=True)
class BFin(Formula):
    """Boolean atom: Fin(v_i)."""

    var: BVar


@dataclass(frozen=True, slots=True)
class BConst(Formula):
    """Boolean atom: v_i = 0 or v_i = 1 (bottom/top of the algebra)."""

    var: BVar
    value: int


@dataclass(frozen=True, slots=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, slots=True)
class Forall(Formula):
    var: str
    body: Formula


# -- tokenizer --------------------------------------------------------------

_KEYWORDS = {"exists", "forall", "and", "or", "not", "sub", "Fin"}
_SYMBOLS = ("->", "(", ")", "=", "+", "-", "*")


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if text.startswith("->", i):
            tokens.append(_Token("->", "->", line, col))
            i += 2
            col += 2
            continue
        if ch in "()=+-*":
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "kw" if word in _KEYWORDS else "name"
            tokens.append(_Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        raise FormulaSyntaxError(f"unexpected character {ch!r}", line, col)
    return tokens


def _is_ring_var(name: str) -> bool:
    return name.startswith("w") and name[1:].isdigit()


def _is_bound_name(name: str) -> bool:
    return name[0] in ("y", "z") and (len(name) == 1 or name[1:].isdigit())


def _is_boole_var(name: str) -> bool:
    return name.startswith("v") and name[1:].isdigit()


class _Parser:
    def __init__(self, text: str, mode: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.mode = mode  # "ring" or "boole"
        self.text = text

    def _error(self, message: str) -> FormulaSyntaxError:
        if self.pos < len(self.tokens):
            t = self.tokens[self.pos]
            return FormulaSyntaxError(message, t.line, t.column)
        lines = self.text.split("\n")
        return FormulaSyntaxError(message, len(lines), len(lines[-1]) + 1)

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: str | None = None) -> _Token:
        tok = self.peek()
        if tok is None:
            raise self._error("unexpected end of input")
        if kind is not None and tok.kind != kind:
            raise self._error(f"expected {kind!r}, found {tok.text!r}")
        self.pos += 1
        return tok

    # formula := implication; implication := disjunction ('->' implication)?
    def parse_formula(self) -> Formula:
        left = self.parse_disjunction()
        tok = self.peek()
        if tok is not None and tok.kind == "->":
            self.take()
            return Implies(left, self.parse_formula())
        return left

    def parse_disjunction(self) -> Formula:
        left = self.parse_conjunction()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "kw" and tok.text == "or":
                self.take()
                left = Or(left, self.parse_conjunction())
            else:
                return left

    def parse_conjunction(self) -> Formula:
        left = self.parse_unary()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "kw" and tok.text == "and":
                self.take()
                left = And(left, self.parse_unary())
            else:
                return left

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise self._error("unexpected end of input")
        if tok.kind == "kw" and tok.text == "not":
            self.take()
            return Not(self.parse_unary())
        if tok.kind == "kw" and tok.text in ("exists", "forall"):
            self.take()
            var = self.take("name").text
            if self.mode == "ring" and not _is_bound_name(var):
                raise self._error(f"quantified ring variables are y/z names, got {var!r}")
            if self.mode == "boole" and not _is_boole_var(var):
                raise self._error(f"quantified Boolean variables are v names, got {var!r}")
            body = self.parse_formula()
            return Exists(var, body) if tok.text == "exists" else Forall(var, body)
        if tok.kind == "(":
            # Either a parenthesized formula or a parenthesized ring term at
            # the start of an atom; try the formula first.
            save = self.pos
            try:
                self.take("(")
                inner = self.parse_formula()
                self.take(")")
                return inner
            except FormulaSyntaxError:
                if self.mode != "ring":
                    raise
                self.pos = save
                return self.parse_ring_atom()
        return self.parse_ring_atom() if self.mode == "ring" else self.parse_boole_atom()

    # ring atoms and terms

    def parse_ring_atom(self) -> Formula:
        left = self.parse_term()
        self.take("=")
        right = self.parse_term()
        return REq(left, right)

    def parse_term(self) -> RingTerm:
        left = self.parse_term_factor()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind in ("+", "-"):
                self.take()
                right = self.parse_term_factor()
                left = RAdd(left, right) if tok.kind == "+" else RSub(left, right)
            else:
                return left

    def parse_term_factor(self) -> RingTerm:
        left = self.parse_term_primary()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "*":
                self.take()
                left = RMul(left, self.parse_term_primary())
            else:
                return left

    def parse_term_primary(self) -> RingTerm:
        tok = self.peek()
        if tok is None:
            raise self._error("unexpected end of term")
        if tok.kind == "int":
            if tok.text not in ("0", "1"):
                raise self._error("only the ring constants 0 and 1 are allowed")
            self.take()
            return RConst(int(tok.text))
        if tok.kind == "name":
            self.take()
            if _is_ring_var(tok.text):
                return RVar(int(tok.text[1:]))
            if _is_bound_name(tok.text):
                return RBound(tok.text)
            raise FormulaSyntaxError(
                f"unknown ring variable {tok.text!r} (use w<k> or y/z names)",
                tok.line,
                tok.column,
            )
        if tok.kind == "(":
            self.take("(")
            inner = self.parse_term()
            self.take(")")
            return inner
        raise self._error(f"unexpected token {tok.text!r} in term")

    # Boolean atoms

    def parse_boole_atom(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise self._error("unexpected end of input")
        if tok.kind == "kw" and tok.text == "Fin":
            self.take()
            self.take("(")
            var = self._take_boole_var()
            self.take(")")
            return BFin(var)
        left = self._take_boole_var()
        op = self.take()
        if op.kind == "=":
            nxt = self.peek()
            if nxt is not None and nxt.kind == "int":
                self.take()
                if nxt.text not in ("0", "1"):
                    raise FormulaSyntaxError(
                        "only the constants 0 and 1 are allowed", nxt.line, nxt.column
                    )
                return BConst(left, int(nxt.text))
            return BEq(left, self._take_boole_var())
        if op.kind == "kw" and op.text == "sub":
            return BSub(left, self._take_boole_var())
        raise FormulaSyntaxError(
            f"expected '=' or 'sub', found {op.text!r}", op.line, op.column
        )

    def _take_boole_var(self) -> BVar:
        tok = self.take("name")
        if not _is_boole_var(tok.text):
            raise FormulaSyntaxError(
                f"Boolean variables are v<k> names, got {tok.text!r}", tok.line, tok.column
            )
        return BVar(int(tok.text[1:]))


def parse_ring_formula(text: str) -> Formula:
    """Parse a ring formula; free variables are the w<k> occurrences."""
    parser = _Parser(text, "ring")
    result = parser.parse_formula()
    if parser.peek() is not None:
        raise parser._error(f"trailing input {parser.peek().text!r}")
    _check_ring(result, frozenset())
    return result


def parse_boole_formula(text: str) -> Formula:
    """Parse a Boolean-side formula over v<k> variables."""
    parser = _Parser(text, "boole")
    result = parser.parse_formula()
    if parser.peek() is not None:
        raise parser._error(f"trailing input {parser.peek().text!r}")
    _check_boole(result)
    return result


def _check_ring(node: Formula, bound: frozenset[str]) -> None:
    if isinstance(node, REq):
        for term in (node.left, node.right):
            _check_ring_term(term, bound)
    elif isinstance(node, Not):
        _check_ring(node.body, bound)
    elif isinstance(node, (And, Or, Implies)):
        _check_ring(node.left, bound)
        _check_ring(node.right, bound)
    elif isinstance(node, (Exists, Forall)):
        _check_ring(node.body, bound | {node.var})
    elif isinstance(node, (BEq, BSub, BFin, BConst)):
        raise ValueError("Boolean atom inside a ring formula")
    else:
        raise TypeError(f"unexpected node {node!r}")


def _check_ring_term(term: RingTerm, bound: frozenset[str]) -> None:
    if isinstance(term, RBound):
        if term.name not in bound:
            raise ValueError(f"unbound quantified variable {term.name!r}")
    elif isinstance(term, (RAdd, RSub, RMul)):
        _check_ring_term(term.left, bound)
        _check_ring_term(term.right, bound)
    elif not isinstance(term, (RVar, RConst)):
        raise TypeError(f"unexpected term {term!r}")


def _check_boole(node: Formula) -> None:
    if isinstance(node, (BEq, BSub, BFin, BConst)):
        return
    if isinstance(node, Not):
        _check_boole(node.body)
    elif isinstance(node, (And, Or, Implies)):
        _check_boole(node.left)
        _check_boole(node.right)
    elif isinstance(node, (Exists, Forall)):
        _check_boole(node.body)
    elif isinstance(node, REq):
        raise ValueError("ring atom inside a Boolean formula")
    else:
        raise TypeError(f"unexpected node {node!r}")


# -- free variables, arity, depth -------------------------------------------


def ring_free_vars(node: Formula) -> frozenset[int]:
    """Indices of the free w-variables."""
    if isinstance(node, REq):
        return _term_free(node.left) | _term_free(node.right)
    if isinstance(node, Not):
        return ring_free_vars(node.body)
    if isinstance(node, (And, Or, Implies)):
        return ring_free_vars(node.left) | ring_free_vars(node.right)
    if isinstance(node, (Exists, Forall)):
        return ring_free_vars(node.body)
    raise TypeError(f"unexpected node {node!r}")


def _term_free(term: RingTerm) -> frozenset[int]:
    if isinstance(term, RVar):
        return frozenset((term.index,))
    if isinstance(term, (RAdd, RSub, RMul)):
        return _term_free(term.left) | _term_free(term.right)
    return frozenset()


def boole_free_vars(node: Formula) -> frozenset[int]:
    """Indices of the free v-variables (quantified indices are not free)."""

    def walk(n: Formula, bound: frozenset[int]) -> frozenset[int]:
        if isinstance(n, (BEq, BSub)):
            return frozenset(i for i in (n.left.index, n.right.index) if i not in bound)
        if isinstance(n, BFin):
            return frozenset(() if n.var.index in bound else (n.var.index,))
        if isinstance(n, BConst):
            return frozenset(() if n.var.index in bound else (n.var.index,))
        if isinstance(n, Not):
            return walk(n.body, bound)
        if isinstance(n, (And, Or, Implies)):
            return walk(n.left, bound) | walk(n.right, bound)
        if isinstance(n, (Exists, Forall)):
            return walk(n.body, bound | {int(n.var[1:])})
        raise TypeError(f"unexpected node {n!r}")

    return walk(node, frozenset())


def ring_arity(node: Formula) -> int:
    """Arity: one past the largest free w-index (0 for a closed formula)."""
    free = ring_free_vars(node)
    return max(free) + 1 if free else 0


def boole_arity(node: Formula) -> int:
    free = boole_free_vars(node)
    return max(free) + 1 if free else 0


def quantifier_depth(node) -> int:
    if isinstance(node, (Exists, Forall)):
        return 1 + quantifier_depth(node.body)
    if isinstance(node, Not):
        return quantifier_depth(node.body)
    if isinstance(node, (And, Or, Implies)):
        return max(quantifier_depth(node.left), quantifier_depth(node.right))
    return 0


# -- pretty printer ----------------------------------------------------------


def _term_text(term: RingTerm) -> str:
    if isinstance(term, RVar):
        return f"w{term.index}"
    if isinstance(term, RBound):
        return term.name
    if isinstance(term, RConst):
        return str(term.value)
    if isinstance(term, RAdd):
        return f"({_term_text(term.left)} + {_term_text(term.right)})"
    if isinstance(term, RSub):
        return f"({_term_text(term.left)} - {_term_text(term.right)})"
    if isinstance(term, RMul):
        return f"({_term_text(term.left)} * {_term_text(term.right)})"
    raise TypeError(f"unexpected term {term!r}")


def formula_to_text(node: Formula) -> str:
    """Canonical fully-parenthesized rendering; reparses to an equal tree."""
    if isinstance(node, REq):
        return f"{_term_text(node.left)} = {_term_text(node.right)}"
    if isinstance(node, BEq):
        return f"v{node.left.index} = v{node.right.index}"
    if isinstance(node, BSub):
        return f"v{node.left.index} sub v{node.right.index}"
    if isinstance(node, BFin):
        return f"Fin(v{node.var.index})"
    if isinstance(node, BConst):
        return f"v{node.var.index} = {node.value}"
    if isinstance(node, Not):
        return f"not ({formula_to_text(node.body)})"
    if isinstance(node, And):
        return f"({formula_to_text(node.left)}) and ({formula_to_text(node.right)})"
    if isinstance(node, Or):
        return f"({formula_to_text(node.left)}) or ({formula_to_text(node.right)})"
    if isinstance(node, Implies):
        return f"({formula_to_text(node.left)}) -> ({formula_to_text(node.right)})"
    if isinstance(node, Exists):
        return f"exists {node.var} ({formula_to_text(node.body)})"
    if isinstance(node, Forall):
        return f"forall {node.var} ({formula_to_text(node.body)})"
    raise TypeError(f"unexpected node {node!r}")

"""Formula and consecution syntax.

The language has the binary connectives ``->`` (implication), ``*``
(fusion), ``\\/`` (join), ``/\\`` (meet), the truth constant ``t`` and, in
the pointed language only, the constant ``f``.  The sugar ``-a`` (read
``a -> t``), ``~a`` (``a -> f``, pointed only) and ``n.a`` (n-fold fusion,
``0.a = t``) is eliminated at parse time, so everything downstream sees
the six primitive constructors only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import ParseError

__all__ = [
    "Formula", "Var", "ConstT", "ConstF", "Impl", "Fus", "Join", "Meet",
    "TRUE", "FALSE", "Substitution", "Consecution", "NameTable",
    "variables", "consecution_variables", "mentions_f", "substitute",
    "n_fold_fusion", "minus", "tilde", "vee_form", "normalize_variables",
    "print_formula", "print_consecution", "parse_formula",
    "parse_consecution",
]


class Formula:
    """Base class of AST nodes; all nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Var(Formula):
    index: int


@dataclass(frozen=True)
class ConstT(Formula):
    pass


@dataclass(frozen=True)
class ConstF(Formula):
    pass


@dataclass(frozen=True)
class Impl(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Fus(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Join(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Meet(Formula):
    left: Formula
    right: Formula


TRUE = ConstT()
FALSE = ConstF()

#: Binary constructors, used for generic tree walks.
BINARY = (Impl, Fus, Join, Meet)

Substitution = Mapping[int, Formula]


@dataclass(frozen=True)
class Consecution:
    """A finite-premise entailment claim: premises |- conclusion."""

    premises: tuple[Formula, ...]
    conclusion: Formula

    def __str__(self) -> str:
        return print_consecution(self)


def _walk(formula: Formula) -> Iterator[Formula]:
    stack = [formula]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, BINARY):
            stack.append(node.right)
            stack.append(node.left)


def variables(formula: Formula) -> frozenset[int]:
    return frozenset(n.index for n in _walk(formula) if isinstance(n, Var))


def consecution_variables(consecution: Consecution) -> frozenset[int]:
    out: frozenset[int] = frozenset()
    for g in consecution.premises:
        out |= variables(g)
    return out | variables(consecution.conclusion)


def mentions_f(obj: Formula | Consecution) -> bool:
    if isinstance(obj, Consecution):
        return any(mentions_f(g) for g in obj.premises) or mentions_f(obj.conclusion)
    return any(isinstance(n, ConstF) for n in _walk(obj))


def substitute(formula: Formula, subst: Substitution) -> Formula:
    """Homomorphic replacement of variables; unmapped variables stay put."""
    if isinstance(formula, Var):
        return subst.get(formula.index, formula)
    if isinstance(formula, BINARY):
        return type(formula)(substitute(formula.left, subst),
                             substitute(formula.right, subst))
    return formula


def n_fold_fusion(n: int, formula: Formula) -> Formula:
    """n-fold fusion of a formula, right associated; the 0-fold case is t."""
    if n < 0:
        raise ValueError("repetition count must be a natural number")
    if n == 0:
        return TRUE
    out = formula
    for _ in range(n - 1):
        out = Fus(formula, out)
    return out


def minus(formula: Formula) -> Formula:
    """The derived connective -a, i.e. a -> t."""
    return Impl(formula, TRUE)


def tilde(formula: Formula) -> Formula:
    """The pointed-language negation ~a, i.e. a -> f."""
    return Impl(formula, FALSE)


def vee_form(consecution: Consecution, side: Formula) -> Consecution:
    """Join every premise and the conclusion with a side formula."""
    return Consecution(tuple(Join(g, side) for g in consecution.premises),
                       Join(consecution.conclusion, side))


def normalize_variables(obj: Consecution) -> Consecution:
    """Rename variables to 0..k-1 in first-occurrence order."""
    mapping: dict[int, Formula] = {}

    def visit(node: Formula) -> None:
        if isinstance(node, Var) and node.index not in mapping:
            mapping[node.index] = Var(len(mapping))
        elif isinstance(node, BINARY):
            visit(node.left)
            visit(node.right)

    for g in obj.premises:
        visit(g)
    visit(obj.conclusion)
    return Consecution(tuple(substitute(g, mapping) for g in obj.premises),
                       substitute(obj.conclusion, mapping))


# ---------------------------------------------------------------------------
# printing
#
# precedence levels, loosest first: -> (right assoc), \/, /\, * (all left
# assoc).  A child is parenthesized when its level is below the context's.

_LEVEL = {Impl: 1, Join: 2, Meet: 3, Fus: 4}


def print_formula(formula: Formula) -> str:
    def pr(node: Formula, ctx: int) -> str:
        if isinstance(node, Var):
            return f"p{node.index}"
        if isinstance(node, ConstT):
            return "t"
        if isinstance(node, ConstF):
            return "f"
        lvl = _LEVEL[type(node)]
        if isinstance(node, Impl):
            body = f"{pr(node.left, lvl + 1)} -> {pr(node.right, lvl)}"
        else:
            op = {Join: "\\/", Meet: "/\\", Fus: "*"}[type(node)]
            body = f"{pr(node.left, lvl)} {op} {pr(node.right, lvl + 1)}"
        return f"({body})" if lvl < ctx else body

    return pr(formula, 0)


def print_consecution(consecution: Consecution) -> str:
    left = ", ".join(print_formula(g) for g in consecution.premises)
    right = print_formula(consecution.conclusion)
    return f"{left} |- {right}" if left else f"|- {right}"


# ---------------------------------------------------------------------------
# parsing

_TOKEN_SPEC = [
    ("IMP", r"->"),
    ("TURN", r"\|-"),
    ("JOIN", r"\\/"),
    ("MEET", r"/\\"),
    ("STAR", r"\*"),
    ("LP", r"\("),
    ("RP", r"\)"),
    ("DOT", r"\."),
    ("DASH", r"-"),
    ("TILDE", r"~"),
    ("COMMA", r","),
    ("NAT", r"\d+"),
    ("IDENT", r"[a-z][a-z0-9_]*"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{k}>{p})" for k, p in _TOKEN_SPEC))

_ALIAS_INDEX = {"p": 0, "q": 1, "r": 2, "s": 3, "x": 0, "y": 1, "z": 2, "w": 3}
_PN_RE = re.compile(r"p(\d+)\Z")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


class NameTable:
    """Deterministic mapping from variable names to indices.

    ``p``/``q``/``r``/``s`` (and ``x``/``y``/``z``/``w``) are fixed aliases
    for indices 0..3 and ``pN`` names index N directly.  Any other
    identifier is allocated the smallest unused index >= 4 at first use.
    Reserve the fixed names of the whole input before resolving, so a late
    ``pN`` can never collide with an earlier free allocation.
    """

    def __init__(self) -> None:
        self._free: dict[str, int] = {}
        self._taken: set[int] = set()

    @staticmethod
    def fixed_index(name: str) -> int | None:
        if name in _ALIAS_INDEX:
            return _ALIAS_INDEX[name]
        m = _PN_RE.match(name)
        return int(m.group(1)) if m else None

    def reserve(self, tokens: Iterable[tuple[str, str, int]]) -> None:
        for kind, text, _ in tokens:
            if kind == "IDENT" and text not in ("t", "f"):
                fixed = self.fixed_index(text)
                if fixed is not None:
                    self._taken.add(fixed)

    def resolve(self, name: str) -> int:
        fixed = self.fixed_index(name)
        if fixed is not None:
            self._taken.add(fixed)
            return fixed
        if name in self._free:
            return self._free[name]
        index = 4
        while index in self._taken:
            index += 1
        self._free[name] = index
        self._taken.add(index)
        return index

    def lookup(self, name: str) -> int | None:
        """Non-allocating variant of :meth:`resolve`."""
        fixed = self.fixed_index(name)
        return fixed if fixed is not None else self._free.get(name)


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]], pointed: bool,
                 table: NameTable, end: int):
        self.tokens = tokens
        self.pointed = pointed
        self.table = table
        self.pos = 0
        self.end = end

    def _peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def _take(self) -> tuple[str, str, int]:
        if self.pos >= len(self.tokens):
            raise ParseError("unexpected end of input", self.end)
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect(self, kind: str, what: str) -> tuple[str, str, int]:
        if self._peek() != kind:
            where = self.tokens[self.pos][2] if self.pos < len(self.tokens) else self.end
            raise ParseError(f"expected {what}", where)
        return self._take()

    def formula(self) -> Formula:
        return self._impl()

    def _impl(self) -> Formula:
        left = self._join()
        if self._peek() == "IMP":
            self._take()
            return Impl(left, self._impl())
        return left

    def _join(self) -> Formula:
        node = self._meet()
        while self._peek() == "JOIN":
            self._take()
            node = Join(node, self._meet())
        return node

    def _meet(self) -> Formula:
        node = self._fus()
        while self._peek() == "MEET":
            self._take()
            node = Meet(node, self._fus())
        return node

    def _fus(self) -> Formula:
        node = self._unary()
        while self._peek() == "STAR":
            self._take()
            node = Fus(node, self._unary())
        return node

    def _unary(self) -> Formula:
        kind = self._peek()
        if kind == "DASH":
            self._take()
            return Impl(self._unary(), TRUE)
        if kind == "TILDE":
            _, _, pos = self._take()
            if not self.pointed:
                raise ParseError("f not allowed: '~' needs the pointed language", pos)
            return Impl(self._unary(), FALSE)
        if kind == "NAT":
            _, text, _ = self._take()
            self._expect("DOT", "'.' after a repetition count")
            return n_fold_fusion(int(text), self._unary())
        return self._atom()

    def _atom(self) -> Formula:
        kind = self._peek()
        if kind == "LP":
            self._take()
            inner = self.formula()
            self._expect("RP", "')'")
            return inner
        if kind == "IDENT":
            _, name, pos = self._take()
            if name == "t":
                return TRUE
            if name == "f":
                if not self.pointed:
                    raise ParseError("f not allowed outside the pointed language", pos)
                return FALSE
            return Var(self.table.resolve(name))
        where = self.tokens[self.pos][2] if self.pos < len(self.tokens) else self.end
        raise ParseError("expected a formula", where)

    def finish(self) -> None:
        if self.pos < len(self.tokens):
            raise ParseError(f"unexpected {self.tokens[self.pos][1]!r}",
                             self.tokens[self.pos][2])


def _parse_tokens(tokens: list[tuple[str, str, int]], pointed: bool,
                  table: NameTable, end: int) -> Formula:
    parser = _Parser(tokens, pointed, table, end)
    out = parser.formula()
    parser.finish()
    return out


def parse_formula(text: str, pointed: bool = True,
                  table: NameTable | None = None) -> Formula:
    tokens = _tokenize(text)
    if table is None:
        table = NameTable()
    table.reserve(tokens)
    return _parse_tokens(tokens, pointed, table, len(text))


def parse_consecution(text: str, pointed: bool = True,
                      table: NameTable | None = None) -> Consecution:
    tokens = _tokenize(text)
    if table is None:
        table = NameTable()
    table.reserve(tokens)
    turns = [i for i, tok in enumerate(tokens) if tok[0] == "TURN"]
    if len(turns) != 1:
        raise ParseError("a consecution needs exactly one '|-'",
                         tokens[turns[1]][2] if len(turns) > 1 else len(text))
    turn = turns[0]
    premises: list[Formula] = []
    chunk: list[tuple[str, str, int]] = []
    for tok in tokens[:turn]:
        if tok[0] == "COMMA":
            if not chunk:
                raise ParseError("empty premise", tok[2])
            premises.append(_parse_tokens(chunk, pointed, table, tok[2]))
            chunk = []
        else:
            chunk.append(tok)
    if chunk:
        premises.append(_parse_tokens(chunk, pointed, table, tokens[turn][2]))
    elif premises:
        raise ParseError("empty premise", tokens[turn][2])
    conclusion = _parse_tokens(tokens[turn + 1:], pointed, table, len(text))
    return Consecution(tuple(premises), conclusion)

"""Finitary modal sentences about sets.

Core connectives are negation, finite conjunction and the diamond ("has a
member satisfying").  Or, Box, Delta, Top and Bot are kept as their own
constructors for readability and reduce to the core three through
normalize().  Satisfaction is computed globally over the canonical picture:
each subformula is evaluated once, to the bitmask of picture nodes where it
holds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, RankTooLarge
from .hyperset import HyperSet

DEFAULT_BUDGET = 10**6


class Formula:
    __slots__ = ()


@dataclass(frozen=True, eq=True)
class Neg(Formula):
    body: Formula
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, eq=True)
class And(Formula):
    parts: tuple = ()
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, eq=True)
class Dia(Formula):
    body: Formula
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, eq=True)
class Or(Formula):
    parts: tuple = ()
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, eq=True)
class Box(Formula):
    body: Formula
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, eq=True)
class Delta(Formula):
    """Every listed formula holds of some member, and every member satisfies one of them."""

    parts: tuple = ()
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, eq=True)
class Top(Formula):
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, eq=True)
class Bot(Formula):
    pos: int | None = field(default=None, compare=False, repr=False)


TOP = Top()
BOT = Bot()


def _children(f):
    if isinstance(f, (Neg, Dia, Box)):
        return (f.body,)
    if isinstance(f, (And, Or, Delta)):
        return f.parts
    return ()


def _postorder(f, skip=()):
    """Distinct subformula objects, children before parents (shared nodes once).

    Subformulas whose id is in `skip` are left out together with everything
    below them.
    """
    seen = set(skip)
    out = []
    stack = [(f, False)]
    while stack:
        g, done = stack.pop()
        if done:
            out.append(g)
            continue
        if id(g) in seen:
            continue
        seen.add(id(g))
        stack.append((g, True))
        for c in _children(g):
            if id(c) not in seen:
                stack.append((c, False))
    return out


def normalize(f):
    """Rewrite into Neg / And / Dia only, preserving sharing of subformulas."""
    memo = {}
    for g in _postorder(f):
        memo[id(g)] = _normalize_step(g, memo)
    return memo[id(f)]


def _normalize_step(g, memo):
    def n(h):
        return memo[id(h)]

    if isinstance(g, Neg):
        return Neg(n(g.body))
    if isinstance(g, And):
        return And(tuple(n(p) for p in g.parts))
    if isinstance(g, Dia):
        return Dia(n(g.body))
    if isinstance(g, Top):
        return And(())
    if isinstance(g, Bot):
        return Neg(And(()))
    if isinstance(g, Or):
        return _or(tuple(n(p) for p in g.parts))
    if isinstance(g, Box):
        return _box(n(g.body))
    if isinstance(g, Delta):
        parts = tuple(n(p) for p in g.parts)
        return And((And(tuple(Dia(p) for p in parts)), _box(_or(parts))))
    raise TypeError(f"not a formula: {g!r}")


def _or(parts):
    return Neg(And(tuple(Neg(p) for p in parts)))


def _box(body):
    return Neg(Dia(Neg(body)))


def is_core(f):
    return all(isinstance(g, (Neg, And, Dia)) for g in _postorder(f))


def size(f):
    """Number of distinct formula objects (the in-memory size of a shared DAG)."""
    return len(_postorder(f))


def tree_size(f):
    """Size of `f` written out as text, counting every repeated occurrence."""
    memo = {}
    for g in _postorder(f):
        memo[id(g)] = 1 + sum(memo[id(c)] for c in _children(g))
    return memo[id(f)]


# -- satisfaction ------------------------------------------------------------


class Evaluator:
    """Bitmask semantics of formulas over one canonical picture.

    Results are memoized per formula object, so one Evaluator can check many
    formulas sharing subterms against the same set.
    """

    def __init__(self, picture):
        self.picture = picture
        self.n = len(picture)
        self.full = (1 << self.n) - 1
        self.succ_mask = [sum(1 << j for j in kids) for kids in picture.succ]
        self._memo = {}
        self._keep = []

    def mask(self, f):
        memo = self._memo
        if id(f) in memo:
            return memo[id(f)]
        for g in _postorder(f, memo):
            memo[id(g)] = self._step(g)
            self._keep.append(g)
        return memo[id(f)]

    def _step(self, g):
        m = self._memo
        if isinstance(g, Neg):
            return self.full ^ m[id(g.body)]
        if isinstance(g, And):
            acc = self.full
            for p in g.parts:
                acc &= m[id(p)]
            return acc
        if isinstance(g, Dia):
            return self._dia(m[id(g.body)])
        if isinstance(g, Top):
            return self.full
        if isinstance(g, Bot):
            return 0
        # Derived connectives: the masks of their normal forms, computed
        # without building the expanded formulas.
        full = self.full
        if isinstance(g, Or):
            acc = full
            for p in g.parts:
                acc &= full ^ m[id(p)]
            return full ^ acc
        if isinstance(g, Box):
            return full ^ self._dia(full ^ m[id(g.body)])
        if isinstance(g, Delta):
            acc = full
            covered = 0
            for p in g.parts:
                acc &= self._dia(m[id(p)])
                covered |= m[id(p)]
            return acc & (full ^ self._dia(full ^ covered))
        raise TypeError(f"not a formula: {g!r}")

    def _dia(self, target):
        out = 0
        for x, sm in enumerate(self.succ_mask):
            if sm & target:
                out |= 1 << x
        return out

    def holds(self, f, node=None):
        x = self.picture.root_index if node is None else node
        return bool(self.mask(f) >> x & 1)


def satisfies(a, f):
    """a |= f.

    Negation holds iff the body fails, a conjunction iff every conjunct
    holds, and dia(f) iff some member of `a` satisfies f.
    """
    return Evaluator(a.picture).holds(f)


# -- characteristic formulas ---------------------------------------------------


def char_formulas(picture, rank, budget=DEFAULT_BUDGET):
    """Characteristic formula at `rank` for every node of a canonical picture.

    Formulas are hash-consed, so structurally equal ones are one object and
    the returned list shares all common structure.
    """
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    # Serial numbers give a run-independent order for Delta arguments.
    by_serial = [TOP]
    serial = {id(TOP): 0}
    table = {}
    layer = [TOP] * len(picture)
    for k in range(1, rank + 1):
        nxt = []
        for kids in picture.succ:
            key = tuple(sorted({serial[id(layer[y])] for y in kids}))
            f = table.get(key)
            if f is None:
                if len(by_serial) >= budget:
                    raise RankTooLarge(k, budget)
                f = Delta(tuple(by_serial[i] for i in key))
                table[key] = f
                serial[id(f)] = len(by_serial)
                by_serial.append(f)
            nxt.append(f)
        layer = nxt
    return layer


def char_formula(a, rank, budget=DEFAULT_BUDGET):
    """The rank-`rank` characteristic formula: top at rank 0, then
    delta of the members' formulas one rank lower.

    b satisfies char_formula(a, k) exactly when a and b have the same
    rank-k unfolding.  `budget` caps the number of distinct formula nodes.
    """
    pic = a.picture
    return char_formulas(pic, rank, budget)[pic.root_index]


def modally_equivalent(a, b, rank, budget=DEFAULT_BUDGET):
    return satisfies(b, char_formula(a, rank, budget)) and satisfies(a, char_formula(b, rank, budget))


# -- text form -----------------------------------------------------------------

_KEYWORDS = {"top", "bot", "not", "and", "or", "dia", "box", "delta"}
_TOKEN = re.compile(r"\s*(?:(?P<word>[A-Za-z_]+)|(?P<punct>[(),]))")


def parse_formula(text):
    """Read `top | bot | not F | and(F, ...) | or(F, ...) | dia(F) | box(F) | delta(F, ...)`."""
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            if rest.strip():
                at = pos + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected character {text[at]!r}", 1, at + 1)
            break
        kind = m.lastgroup
        tokens.append((m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("", len(text)))
    parser = _FormulaParser(tokens)
    f = parser.formula()
    word, at = parser.peek()
    if word:
        raise ParseError(f"unexpected {word!r} after formula", 1, at + 1)
    return f


class _FormulaParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def expect(self, want):
        word, at = self.peek()
        if word != want:
            found = repr(word) if word else "end of input"
            raise ParseError(f"expected {want!r}, found {found}", 1, at + 1)
        self.i += 1

    def formula(self):
        word, at = self.peek()
        if word not in _KEYWORDS:
            found = repr(word) if word else "end of input"
            raise ParseError(f"expected a formula, found {found}", 1, at + 1)
        self.i += 1
        if word == "top":
            return Top(pos=at)
        if word == "bot":
            return Bot(pos=at)
        if word == "not":
            return Neg(self.formula(), pos=at)
        self.expect("(")
        if word in ("dia", "box"):
            body = self.formula()
            self.expect(")")
            return (Dia if word == "dia" else Box)(body, pos=at)
        parts = []
        if self.peek()[0] != ")":
            parts.append(self.formula())
            while self.peek()[0] == ",":
                self.i += 1
                parts.append(self.formula())
        self.expect(")")
        cls = {"and": And, "or": Or, "delta": Delta}[word]
        return cls(tuple(parts), pos=at)


def format_formula(f, budget=DEFAULT_BUDGET):
    """Text form accepted by parse_formula; RankTooLarge if longer than `budget` nodes."""
    if tree_size(f) > budget:
        raise RankTooLarge(None, budget)
    memo = {}
    for g in _postorder(f):
        memo[id(g)] = _format_step(g, memo)
    return memo[id(f)]


def _format_step(g, memo):
    if isinstance(g, Top):
        return "top"
    if isinstance(g, Bot):
        return "bot"
    if isinstance(g, Neg):
        return "not " + memo[id(g.body)]
    if isinstance(g, (Dia, Box)):
        word = "dia" if isinstance(g, Dia) else "box"
        return f"{word}({memo[id(g.body)]})"
    word = {And: "and", Or: "or", Delta: "delta"}[type(g)]
    return f"{word}({', '.join(memo[id(p)] for p in g.parts)})"


def check(a: HyperSet, text: str) -> bool:
    return satisfies(a, parse_formula(text))

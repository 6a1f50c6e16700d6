"""Reader for the set-equation text format.

    # comment
    s0 = {s3}; s1 = {s0}
    s2 = {s1} s3 = {s2}
    root s3

Statements may be separated by newlines, semicolons or nothing at all.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NoRoot, ParseError, UnknownVariable
from .system import build_system

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[={},;])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            tokens.append(Token("sep", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "ident":
            tokens.append(Token("ident", m.group(), line, col))
        elif kind == "punct":
            ch = m.group()
            tokens.append(Token("sep" if ch == ";" else ch, ch, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass
class Equations:
    """Parsed equations: each variable with its member names, in declaration order."""

    members: dict = field(default_factory=dict)
    positions: dict = field(default_factory=dict)
    references: list = field(default_factory=list)
    root: str | None = None

    def undeclared(self, known=()):
        """(name, line, column) of the first member not declared here or in `known`."""
        for name, line, col in self.references:
            if name not in self.members and name not in known:
                return name, line, col
        return None

    def check_declared(self, known=()):
        missing = self.undeclared(known)
        if missing:
            raise UnknownVariable(*missing)


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self, offset=0):
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def take(self, kind):
        tok = self.peek()
        if tok.kind != kind:
            want = "identifier" if kind == "ident" else repr(kind)
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected {want}, found {got}", tok.line, tok.column)
        self.pos += 1
        return tok

    def parse(self, allow_root):
        eqs = Equations()
        while True:
            while self.peek().kind == "sep":
                self.pos += 1
            tok = self.peek()
            if tok.kind == "eof":
                return eqs
            if tok.kind == "ident" and tok.text == "root" and self.peek(1).kind == "ident":
                self.pos += 1
                name = self.take("ident")
                if not allow_root:
                    raise ParseError("'root' directive not allowed here", tok.line, tok.column)
                if eqs.root is not None:
                    raise ParseError("second 'root' directive", tok.line, tok.column)
                eqs.root = name.text
                eqs.references.append((name.text, name.line, name.column))
                continue
            name = self.take("ident")
            if name.text in eqs.members:
                raise ParseError(f"variable {name.text!r} declared twice", name.line, name.column)
            self.take("=")
            self.take("{")
            members = []
            if self.peek().kind == "ident":
                while True:
                    m = self.take("ident")
                    members.append(m.text)
                    eqs.references.append((m.text, m.line, m.column))
                    if self.peek().kind != ",":
                        break
                    self.pos += 1
            self.take("}")
            eqs.members[name.text] = members
            eqs.positions[name.text] = (name.line, name.column)


def parse_equations(text, allow_root=True):
    return _Parser(text).parse(allow_root)


def parse_system(text):
    """Parse equation text with a `root` directive into a System."""
    eqs = parse_equations(text)
    eqs.check_declared()
    if eqs.root is None:
        raise NoRoot()
    return equations_to_system(eqs, eqs.root)


def equations_to_system(eqs, root):
    edges = [(x, y) for x, ms in eqs.members.items() for y in ms]
    return build_system(list(eqs.members), edges, root)

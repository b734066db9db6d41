"""Parser for the term DSL.

Grammar (whitespace-insensitive)::

    word  := "1" | letter { "@" letter }
    letter:= "x" | "x*"
    term  := term ";" term | term "@" term | "(" term ")" | atom
    atom  := "id(" word ")" | "cup" | "cup*" | "cap" | "cap*"
           | "b(" letter "," letter ")" | "b-(" letter "," letter ")"

``;`` (diagrammatic composition) binds looser than ``@`` (tensor); both are
left-associative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .freecat import EMPTY, Braid, Cap, Compose, Cup, Id, Letter, Tensor, Term, Word


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.line, self.col = line, col
        super().__init__(f"{message} at line {line}, column {col}")


_TOKEN = re.compile(r"\s+|cup\*?|cap\*?|id|b-|b|x\*?|1|[@;(),]")


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or not m.group():
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        s = m.group()
        if not s.isspace():
            # keep identifiers like "cupx" from splitting silently
            end = m.end()
            if s[-1].isalpha() and end < len(text) and text[end].isalnum():
                raise ParseError(f"unknown word starting {text[pos:end + 1]!r}", line, col)
            toks.append(_Tok(s, line, col))
        for ch in s:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    toks.append(_Tok("", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, msg: str) -> ParseError:
        tok = self.cur
        what = f"{tok.text!r}" if tok.text else "end of input"
        return ParseError(f"{msg}, found {what}", tok.line, tok.col)

    def eat(self, text: str) -> _Tok:
        if self.cur.text != text:
            raise self.fail(f"expected {text!r}")
        tok = self.cur
        self.i += 1
        return tok

    def term(self) -> Term:
        t = self.tensor()
        while self.cur.text == ";":
            self.i += 1
            t = Compose(t, self.tensor())
        return t

    def tensor(self) -> Term:
        t = self.primary()
        while self.cur.text == "@":
            self.i += 1
            t = Tensor(t, self.primary())
        return t

    def primary(self) -> Term:
        s = self.cur.text
        if s == "(":
            self.i += 1
            t = self.term()
            self.eat(")")
            return t
        if s in ("cup", "cup*", "cap", "cap*"):
            self.i += 1
            cls = Cup if s.startswith("cup") else Cap
            return cls(starred=s.endswith("*"))
        if s == "id":
            self.i += 1
            self.eat("(")
            w = self.word()
            self.eat(")")
            return Id(w)
        if s in ("b", "b-"):
            self.i += 1
            self.eat("(")
            u = self.letter()
            self.eat(",")
            v = self.letter()
            self.eat(")")
            return Braid(u, v, inverse=s == "b-")
        raise self.fail("expected a term")

    def letter(self) -> Letter:
        s = self.cur.text
        if s in ("x", "x*"):
            self.i += 1
            return Letter(s)
        raise self.fail("expected x or x*")

    def word(self) -> Word:
        if self.cur.text == "1":
            self.i += 1
            return EMPTY
        letters = [self.letter()]
        while self.cur.text == "@":
            self.i += 1
            letters.append(self.letter())
        return tuple(letters)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.cur.text:
        raise p.fail("expected end of input")
    return t


def parse_word(text: str) -> Word:
    p = _Parser(text)
    w = p.word()
    if p.cur.text:
        raise p.fail("expected end of input")
    return w

"""Free-group words, presentations and the plain-text presentation format.

A presentation file looks like::

    # tight chiral candidate, p = 3
    gens s, t;
    rels s^3, t^6, (s*t)^2, [s, t^2];

Commutators are ``[x, y] = x^-1 y^-1 x y`` and nest to the left, so
``[x, y, z]`` means ``[[x, y], z]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "Generator",
    "Word",
    "Presentation",
    "PresentationSyntaxError",
    "UnknownGeneratorError",
    "AlphabetMismatchError",
    "parse_presentation",
    "parse_word",
    "format_presentation",
    "format_word",
    "multiply",
    "invert",
    "commutator",
    "power",
    "conjugate",
]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_KEYWORDS = frozenset({"gens", "rels"})


class AlphabetMismatchError(ValueError):
    pass


class PresentationSyntaxError(ValueError):
    """Raised for malformed presentation text; carries a 1-based position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownGeneratorError(PresentationSyntaxError):
    pass


@dataclass(frozen=True)
class Generator:
    index: int
    name: str

    def __post_init__(self):
        if not _NAME_RE.match(self.name) or self.name in _KEYWORDS:
            raise ValueError(f"invalid generator name {self.name!r}")
        if self.index < 0:
            raise ValueError("generator index must be non-negative")


def _reduce(syllables: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            total = out[-1][1] + exp
            if total:
                out[-1] = (gen, total)
            else:
                out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word over a named alphabet.

    ``syllables`` is a tuple of ``(generator index, nonzero exponent)`` with
    no two neighbours sharing a generator.  Construct with :meth:`build` to
    get reduction for free; the raw constructor validates instead.
    """

    alphabet: tuple[str, ...]
    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        n = len(self.alphabet)
        prev = None
        for gen, exp in self.syllables:
            if not 0 <= gen < n:
                raise ValueError(f"generator index {gen} outside alphabet of size {n}")
            if exp == 0:
                raise ValueError("zero exponent in a reduced word")
            if gen == prev:
                raise ValueError("word is not freely reduced")
            prev = gen

    @classmethod
    def build(cls, alphabet: Sequence[str], syllables: Iterable[tuple[int, int]]) -> "Word":
        return cls(tuple(alphabet), _reduce((int(g), int(e)) for g, e in syllables))

    @classmethod
    def identity(cls, alphabet: Sequence[str]) -> "Word":
        return cls(tuple(alphabet), ())

    @classmethod
    def gen(cls, alphabet: Sequence[str], name: str, exp: int = 1) -> "Word":
        alphabet = tuple(alphabet)
        return cls.build(alphabet, [(alphabet.index(name), exp)])

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def letters(self) -> list[int]:
        """Expanded letters as signed 1-based generator numbers (``-2`` is ``g1^-1``)."""
        out = []
        for gen, exp in self.syllables:
            out.extend([gen + 1 if exp > 0 else -(gen + 1)] * abs(exp))
        return out

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def __str__(self) -> str:
        return format_word(self)


def _check_alphabet(*words: Word) -> tuple[str, ...]:
    alphabet = words[0].alphabet
    for w in words[1:]:
        if w.alphabet != alphabet:
            raise AlphabetMismatchError(f"alphabets differ: {alphabet} vs {w.alphabet}")
    return alphabet


def multiply(u: Word, v: Word) -> Word:
    alphabet = _check_alphabet(u, v)
    return Word(alphabet, _reduce(u.syllables + v.syllables))


def invert(w: Word) -> Word:
    return Word(w.alphabet, tuple((g, -e) for g, e in reversed(w.syllables)))


def power(w: Word, n: int) -> Word:
    if n < 0:
        w, n = invert(w), -n
    out = Word.identity(w.alphabet)
    base = w
    while n:
        if n & 1:
            out = multiply(out, base)
        base = multiply(base, base)
        n >>= 1
    return out


def commutator(u: Word, v: Word) -> Word:
    _check_alphabet(u, v)
    return invert(u) * invert(v) * u * v


def conjugate(u: Word, v: Word) -> Word:
    """``u^v = v^-1 u v``."""
    _check_alphabet(u, v)
    return invert(v) * u * v


@dataclass(frozen=True)
class Presentation:
    alphabet: tuple[Generator, ...]
    relators: tuple[Word, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        names = [g.name for g in self.alphabet]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for i, g in enumerate(self.alphabet):
            if g.index != i:
                raise ValueError("generator index must equal its position")
        for r in self.relators:
            if r.alphabet != tuple(names):
                raise AlphabetMismatchError("relator over a different alphabet")
            if not r:
                raise ValueError("identity relator")

    @classmethod
    def from_words(cls, names: Sequence[str], relators: Iterable[Word], label: str = "") -> "Presentation":
        """Build from generator names, silently dropping identity relators."""
        alphabet = tuple(Generator(i, n) for i, n in enumerate(names))
        return cls(alphabet, tuple(r for r in relators if r), label)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.alphabet)

    def word(self, text: str) -> Word:
        return parse_word(text, self.names)

    def __str__(self) -> str:
        return format_presentation(self)


# ---------------------------------------------------------------------------
# text format

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>\#[^\n]*)|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<int>-?[0-9]+)|(?P<punct>[;,*^()\[\]])"
)


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PresentationSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.names: tuple[str, ...] = ()

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: _Token | None = None, cls=PresentationSyntaxError):
        tok = tok or self.tok
        return cls(message, tok.line, tok.col)

    def expect(self, text: str) -> _Token:
        tok = self.tok
        if tok.text != text or tok.kind == "int":
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        self.i += 1
        return tok

    def name(self) -> _Token:
        tok = self.tok
        if tok.kind != "name":
            raise self.error(f"expected a generator name, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def file(self) -> Presentation:
        self.expect("gens")
        names = [self.name()]
        while self.tok.text == ",":
            self.i += 1
            names.append(self.name())
        seen = set()
        for tok in names:
            if tok.text in _KEYWORDS:
                raise self.error(f"{tok.text!r} is reserved", tok)
            if tok.text in seen:
                raise self.error(f"duplicate generator {tok.text!r}", tok)
            seen.add(tok.text)
        self.names = tuple(t.text for t in names)
        self.expect(";")
        self.expect("rels")
        relators = []
        if self.tok.text != ";":
            relators.append(self.relator())
            while self.tok.text == ",":
                self.i += 1
                relators.append(self.relator())
        self.expect(";")
        if self.tok.kind != "eof":
            raise self.error(f"trailing input {self.tok.text!r}")
        return Presentation.from_words(self.names, relators)

    def starts_term(self) -> bool:
        return self.tok.kind == "name" or self.tok.text in ("(", "[")

    def relator(self) -> Word:
        w = self.term()
        while True:
            if self.tok.text == "*":
                self.i += 1
                w = w * self.term()
            elif self.starts_term():
                w = w * self.term()
            else:
                return w

    def term(self) -> Word:
        w = self.atom()
        if self.tok.text == "^":
            self.i += 1
            tok = self.tok
            if tok.kind != "int":
                raise self.error(f"expected an integer exponent, found {tok.text or 'end of input'!r}")
            self.i += 1
            digits = tok.text.lstrip("-")
            if int(digits) == 0:
                raise self.error("zero exponent", tok)
            if digits.startswith("0"):
                raise self.error(f"malformed integer {tok.text!r}", tok)
            w = power(w, int(tok.text))
        return w

    def atom(self) -> Word:
        tok = self.tok
        if tok.kind == "name":
            self.i += 1
            if tok.text not in self.names:
                raise self.error(f"unknown generator {tok.text!r}", tok, UnknownGeneratorError)
            return Word.gen(self.names, tok.text)
        if tok.text == "(":
            self.i += 1
            w = self.relator()
            self.expect(")")
            return w
        if tok.text == "[":
            self.i += 1
            parts = [self.relator()]
            while self.tok.text == ",":
                self.i += 1
                parts.append(self.relator())
            if len(parts) < 2:
                raise self.error("a commutator needs at least two entries")
            self.expect("]")
            w = parts[0]
            for nxt in parts[1:]:
                w = commutator(w, nxt)
            return w
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")


def parse_presentation(text: str, label: str = "") -> Presentation:
    pres = _Parser(text).file()
    return Presentation(pres.alphabet, pres.relators, label)


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse a single relator-grammar expression over ``names``.

    ``"1"`` and the empty string denote the identity.
    """
    if text.strip() in ("", "1"):
        return Word.identity(names)
    parser = _Parser(text)
    parser.names = tuple(names)
    w = parser.relator()
    if parser.tok.kind != "eof":
        raise parser.error(f"trailing input {parser.tok.text!r}")
    return w


def format_word(w: Word) -> str:
    if not w.syllables:
        return "1"
    parts = []
    for gen, exp in w.syllables:
        name = w.alphabet[gen]
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts)


def format_presentation(pres: Presentation) -> str:
    lines = []
    if pres.label:
        lines.append(f"# {pres.label}")
    lines.append("gens " + ", ".join(pres.names) + ";")
    if pres.relators:
        body = ",\n     ".join(format_word(r) for r in pres.relators)
        lines.append(f"rels {body};")
    else:
        lines.append("rels ;")
    return "\n".join(lines) + "\n"

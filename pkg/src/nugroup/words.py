"""Free-group words, group presentations, and the presentation DSL.

Conventions used throughout the package: the conjugate of x by y is
x^y = y^-1 * x * y, and the commutator is [x, y] = x^-1 * y^-1 * x * y.
Every identity verified downstream depends on this pair of conventions,
so they are fixed here and nowhere else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Word",
    "Presentation",
    "ParseError",
    "parse_presentation",
    "presentation_to_dsl",
    "word_concat_reduce",
    "word_inverse",
    "word_conjugate",
    "word_commutator",
    "cayley_presentation",
]


def _reduce(signed: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a sequence of signed 1-based generator letters."""
    out: list[int] = []
    for v in signed:
        if out and out[-1] == -v:
            out.pop()
        else:
            out.append(v)
    return tuple(out)


class Word:
    """A freely reduced word in the generators of a free group.

    Letters are stored as nonzero signed integers: +(i+1) is generator i,
    -(i+1) is its inverse.  Instances are immutable and hashable.
    """

    __slots__ = ("signed",)

    def __init__(self, signed: Iterable[int] = ()):
        self.signed = _reduce(signed)

    @classmethod
    def gen(cls, index: int) -> "Word":
        return cls((index + 1,))

    @property
    def letters(self) -> tuple[tuple[int, int], ...]:
        """Letters as (generator index, sign) pairs, sign in {+1, -1}."""
        return tuple((abs(v) - 1, 1 if v > 0 else -1) for v in self.signed)

    def __len__(self) -> int:
        return len(self.signed)

    def __iter__(self) -> Iterator[int]:
        return iter(self.signed)

    def __bool__(self) -> bool:
        return bool(self.signed)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.signed == other.signed

    def __hash__(self) -> int:
        return hash(self.signed)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.signed + other.signed)

    def inverse(self) -> "Word":
        return Word(tuple(-v for v in reversed(self.signed)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self if n > 0 else self.inverse()
        return Word(base.signed * abs(n))

    def conjugate(self, other: "Word") -> "Word":
        """self^other = other^-1 * self * other."""
        return other.inverse() * self * other

    def max_index(self) -> int:
        return max((abs(v) for v in self.signed), default=0)

    def __repr__(self) -> str:
        return f"Word({list(self.signed)})"


def word_concat_reduce(x: Word, y: Word) -> Word:
    return x * y


def word_inverse(x: Word) -> Word:
    return x.inverse()


def word_conjugate(x: Word, y: Word) -> Word:
    return x.conjugate(y)


def word_commutator(x: Word, y: Word) -> Word:
    """[x, y] = x^-1 * y^-1 * x * y."""
    return x.inverse() * y.inverse() * x * y


@dataclass(frozen=True)
class Presentation:
    """A finite group presentation <generators | relators>."""

    name: str
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError(f"duplicate generator name in {self.name!r}")
        for rel in self.relators:
            if rel.max_index() > len(self.generators):
                raise ValueError(
                    f"relator in {self.name!r} uses generator index out of range"
                )

    @property
    def ngens(self) -> int:
        return len(self.generators)


class ParseError(ValueError):
    """Syntax or semantic error in DSL source, with position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


_SYMBOLS = set("<>=,|*^()[]")


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind  # "ident" | "int" | symbol itself | "eof"
        self.value = value
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token("int", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            toks.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(_Token("eof", None, line, max(col, 1)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def next(self) -> _Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.value!r}", tok.line, tok.col)
        return tok

    def parse_file(self) -> list[Presentation]:
        groups = []
        while self.peek().kind != "eof":
            groups.append(self.parse_group())
        return groups

    def parse_group(self) -> Presentation:
        tok = self.expect("ident")
        if tok.value != "group":
            raise ParseError(f"expected 'group', found {tok.value!r}", tok.line, tok.col)
        name = self.expect("ident").value
        self.expect("=")
        self.expect("<")
        gens = [self.expect("ident")]
        while self.peek().kind == ",":
            self.next()
            gens.append(self.expect("ident"))
        seen: dict[str, int] = {}
        for g in gens:
            if g.value in seen:
                raise ParseError(f"duplicate generator {g.value!r}", g.line, g.col)
            seen[g.value] = len(seen)
        self.expect("|")
        self._gen_index = seen
        relators = [self.parse_item()]
        while self.peek().kind == ",":
            self.next()
            relators.append(self.parse_item())
        self.expect(">")
        return Presentation(name, tuple(g.value for g in gens), tuple(relators))

    def parse_item(self) -> Word:
        w = self.parse_word()
        if self.peek().kind == "=":
            self.next()
            rhs = self.parse_word()
            return w * rhs.inverse()
        return w

    def parse_word(self) -> Word:
        w = self.parse_factor()
        while self.peek().kind == "*":
            self.next()
            w = w * self.parse_factor()
        return w

    def parse_factor(self) -> Word:
        atom = self.parse_atom()
        if self.peek().kind == "^":
            self.next()
            tok = self.expect("int")
            return atom ** tok.value
        return atom

    def parse_atom(self) -> Word:
        tok = self.next()
        if tok.kind == "ident":
            idx = self._gen_index.get(tok.value)
            if idx is None:
                raise ParseError(f"unknown name {tok.value!r} in relator", tok.line, tok.col)
            return Word.gen(idx)
        if tok.kind == "(":
            w = self.parse_word()
            self.expect(")")
            return w
        if tok.kind == "[":
            x = self.parse_word()
            self.expect(",")
            y = self.parse_word()
            self.expect("]")
            return word_commutator(x, y)
        raise ParseError(f"expected a word, found {tok.value!r}", tok.line, tok.col)


def parse_presentation(text: str) -> list[Presentation]:
    """Parse DSL source and return one Presentation per `group` statement.

    Grammar: ``group NAME = < g1, g2 | rel, w1 = w2, ... >`` where words are
    ``*``-products of atoms, an atom is a generator, a parenthesised word or
    a commutator ``[w1, w2]``, and ``atom ^ INT`` repeats (INT may be
    negative).  ``#`` starts a comment.  Equations are rewritten to the
    relator ``w1 * w2^-1``.
    """
    return _Parser(text).parse_file()


def _word_to_dsl(word: Word, gen_names: Sequence[str]) -> str:
    if not word.signed:
        # No empty-word literal in the grammar; x * x^-1 reparses to it.
        g = gen_names[0]
        return f"{g}*{g}^-1"
    parts = []
    i, n = 0, len(word.signed)
    while i < n:
        v = word.signed[i]
        j = i
        while j < n and word.signed[j] == v:
            j += 1
        name = gen_names[abs(v) - 1]
        exp = (j - i) if v > 0 else -(j - i)
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return "*".join(parts)


def presentation_to_dsl(pres: Presentation) -> str:
    """Render a presentation in the DSL; reparsing gives identical relators."""
    gens = ", ".join(pres.generators)
    rels = ", ".join(_word_to_dsl(r, pres.generators) for r in pres.relators)
    return f"group {pres.name} = < {gens} | {rels} >"


def cayley_presentation(engine, max_gens: int = 64) -> Presentation:
    """Multiplication-table presentation of a realized finite group.

    Generators are the non-identity elements; for every ordered pair (g, h)
    there is a relator g*h*(gh)^-1, degenerating to g*h when gh is the
    identity.  Enumerating it over the trivial subgroup recovers the group.
    """
    n = engine.num_points
    if n - 1 > max_gens:
        raise ValueError(
            f"group order {n} exceeds the Cayley presentation cap of {max_gens} generators"
        )
    relators = []
    for g in range(1, n):
        for h in range(1, n):
            prod = engine.mul(g, h)
            if prod == 0:
                relators.append(Word((g, h)))
            else:
                relators.append(Word((g, h, -prod)))
    names = tuple(f"x{p}" for p in range(1, n))
    return Presentation(f"cayley_{getattr(engine, 'name', 'G')}", names, tuple(relators))

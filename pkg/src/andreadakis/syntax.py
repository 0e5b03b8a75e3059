"""Text syntax for words and automorphisms.

Words::

    x1 x2^-1 [x1,x2]^2 (x1 x3)^-1      1 is the identity

Automorphisms, one per line (``#`` starts a comment)::

    x1 -> x2^-1 x1 x2 ; x2 -> x2 !inv x1 -> x2 x1 x2^-1 ; x2 -> x2
    conj(1,3) * swap(1,2) * ad([x1,x2])

Generators omitted from a free-form block are fixed.  The ``!inv`` block is
mandatory for free-form maps.  Built-ins ``conj(i,j)``, ``mul_r(i,j)``,
``swap(i,j)``, ``inv(i)`` and ``ad(word)`` carry their own inverses; ``*``
composes left to right (``a * b`` applies ``a`` first).
"""
from __future__ import annotations

import re

from . import words as W
from .errors import IndexOutOfRange, ParseError

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<arrow>->)
  | (?P<bang>!inv)
  | (?P<gen>x(?P<idx>\d+))
  | (?P<int>-?\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<nl>\n)
  | (?P<punct>[\[\](),;*^])
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        if text[pos] == "#":
            end = text.find("\n", pos)
            pos = len(text) if end < 0 else end
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise _error(text, pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "idx":
            kind = "gen"
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


def _error(text: str, pos: int, message: str) -> ParseError:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return ParseError(message, line, col)


class _Parser:
    def __init__(self, text: str, rank: int):
        self.text, self.rank = text, rank
        self.tokens = _tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, message, tok=None):
        tok = tok or self.tok
        return _error(self.text, tok[2], message)

    def take(self, kind, value=None):
        t = self.tok
        if t[0] != kind or (value is not None and t[1] != value):
            want = value if value is not None else kind
            got = t[1] or "end of input"
            raise self.fail(f"expected {want!r}, found {got!r}")
        self.i += 1
        return t

    def at(self, kind, value=None):
        t = self.tok
        return t[0] == kind and (value is None or t[1] == value)

    def skip_newlines(self):
        while self.at("nl"):
            self.i += 1

    # words
    def generator_index(self, tok):
        k = int(tok[1][1:])
        if not 1 <= k <= self.rank:
            raise self.fail(f"generator x{k} outside rank {self.rank}", tok)
        return k

    def word(self) -> W.Word:
        factors = []
        while True:
            f = self.factor()
            if f is None:
                break
            factors.append(f)
        if not factors:
            raise self.fail("expected a word")
        return W.product(factors)

    def factor(self):
        t = self.tok
        if t[0] == "gen":
            self.i += 1
            base = W.Word.generator(self.rank, self.generator_index(t))
        elif t[0] == "int" and t[1] == "1":
            self.i += 1
            base = W.Word.identity(self.rank)
        elif self.at("punct", "["):
            self.i += 1
            a = self.word()
            self.take("punct", ",")
            b = self.word()
            self.take("punct", "]")
            base = W.commutator(a, b)
        elif self.at("punct", "("):
            self.i += 1
            base = self.word()
            self.take("punct", ")")
        else:
            return None
        if self.at("punct", "^"):
            self.i += 1
            base = W.power(base, int(self.take("int")[1]))
        return base

    # automorphisms
    def assignments(self):
        images = {}
        while True:
            t = self.take("gen")
            k = self.generator_index(t)
            if k in images:
                raise self.fail(f"x{k} assigned twice", t)
            self.take("arrow")
            images[k] = self.word()
            if not self.at("punct", ";"):
                return images
            self.i += 1

    def endomorphism(self, images) -> W.Endomorphism:
        gens = [images.get(k, W.Word.generator(self.rank, k)) for k in range(1, self.rank + 1)]
        return W.Endomorphism(self.rank, tuple(gens))

    def builtin(self) -> W.Automorphism:
        t = self.take("name")
        name, n = t[1], self.rank
        self.take("punct", "(")
        if name == "ad":
            y = self.word()
            self.take("punct", ")")
            return W.ad(y)
        args = [int(self.take("int")[1])]
        while self.at("punct", ","):
            self.i += 1
            args.append(int(self.take("int")[1]))
        self.take("punct", ")")
        table = {"conj": (W.conj, 2), "mul_r": (W.mul_r, 2), "swap": (W.swap, 2), "inv": (W.inv, 1)}
        if name not in table:
            raise self.fail(f"unknown built-in {name!r}", t)
        fn, arity = table[name]
        if len(args) != arity:
            raise self.fail(f"{name} takes {arity} argument(s)", t)
        try:
            return fn(n, *args)
        except (IndexOutOfRange, ValueError) as exc:
            raise self.fail(str(exc), t) from None

    def automorphism(self) -> W.Automorphism:
        if self.at("gen"):
            fwd = self.endomorphism(self.assignments())
            if not self.at("bang"):
                raise self.fail("free-form automorphism needs an '!inv' block")
            self.i += 1
            bwd = self.endomorphism(self.assignments())
            return W.make_automorphism(fwd, bwd)
        out = self.builtin()
        while self.at("punct", "*"):
            self.i += 1
            out = W.compose(out, self.builtin())
        return out


def parse_word(text: str, rank: int) -> W.Word:
    p = _Parser(text, rank)
    p.skip_newlines()
    w = p.word()
    p.skip_newlines()
    p.take("eof")
    return w


def parse_spec(text: str, rank: int) -> list[W.Automorphism]:
    """Parse one automorphism per nonblank line."""
    p = _Parser(text, rank)
    out = []
    p.skip_newlines()
    while not p.at("eof"):
        out.append(p.automorphism())
        if not p.at("eof"):
            p.take("nl")
        p.skip_newlines()
    return out


def parse_automorphism(text: str, rank: int) -> W.Automorphism:
    auts = parse_spec(text, rank)
    if len(auts) != 1:
        raise ParseError(f"expected exactly one automorphism, found {len(auts)}")
    return auts[0]


def format_word(w: W.Word) -> str:
    if not w.letters:
        return "1"
    return " ".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in w.letters)


def _format_block(e: W.Endomorphism) -> str:
    return " ; ".join(f"x{i} -> {format_word(u)}" for i, u in enumerate(e.images, 1))


def format_automorphism(a: W.Automorphism) -> str:
    return f"{_format_block(a.forward)} !inv {_format_block(a.backward)}"


"""Free groups: reduced words, substitution endomorphisms, automorphisms.

Letters are stored as nonzero integers: ``+i`` is the generator ``x_i`` and
``-i`` its inverse.  All values are immutable and carry their rank.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import IndexOutOfRange, NotInverse, RankMismatch


class Letter(NamedTuple):
    index: int
    sign: int = 1

    def encode(self) -> int:
        return self.index * self.sign


def _as_int(letter) -> int:
    if isinstance(letter, Letter):
        if letter.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {letter.sign}")
        return letter.encode()
    if isinstance(letter, tuple):
        return _as_int(Letter(*letter))
    letter = int(letter)
    if letter == 0:
        raise IndexOutOfRange("letter index 0 is not a generator")
    return letter


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word in the free group of the given rank."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        for a in self.letters:
            if a == 0 or abs(a) > self.rank:
                raise IndexOutOfRange(f"letter {a} outside rank {self.rank}")
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise ValueError("letters are not freely reduced; use reduce()")

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, i: int, sign: int = 1) -> "Word":
        return cls(rank, (sign * i,))

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        # truthiness is "not the identity"
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def __str__(self):
        from .syntax import format_word

        return format_word(self)

    def letter_objects(self) -> tuple[Letter, ...]:
        return tuple(Letter(abs(a), 1 if a > 0 else -1) for a in self.letters)


def reduce(letters: Iterable, n: int) -> Word:
    """Freely reduce a letter sequence in F_n.

    Letters may be signed ints, :class:`Letter` values or ``(index, sign)``
    pairs.
    """
    ints = [_as_int(a) for a in letters]
    for a in ints:
        if abs(a) > n:
            raise IndexOutOfRange(f"letter {a} outside rank {n}")
    return Word(n, _free_reduce(ints))


def _check_rank(*items) -> int:
    ranks = {x.rank for x in items}
    if len(ranks) != 1:
        raise RankMismatch(f"rank mismatch: {sorted(ranks)}")
    return ranks.pop()


def multiply(a: Word, b: Word) -> Word:
    n = _check_rank(a, b)
    left, right = a.letters, b.letters
    k = 0
    while k < min(len(left), len(right)) and left[-1 - k] == -right[k]:
        k += 1
    return Word(n, left[: len(left) - k] + right[k:])


def product(words: Sequence[Word], rank: int | None = None) -> Word:
    if not words:
        if rank is None:
            raise ValueError("empty product needs an explicit rank")
        return Word.identity(rank)
    n = _check_rank(*words)
    return Word(n, _free_reduce(a for w in words for a in w.letters))


def invert(a: Word) -> Word:
    return Word(a.rank, tuple(-x for x in reversed(a.letters)))


def power(a: Word, k: int) -> Word:
    if k < 0:
        a, k = invert(a), -k
    return product([a] * k, a.rank)


def commutator(a: Word, b: Word) -> Word:
    """``[a, b] = a^-1 b^-1 a b``."""
    _check_rank(a, b)
    return product([invert(a), invert(b), a, b])


@dataclass(frozen=True)
class Endomorphism:
    """Substitution ``x_i -> images[i-1]``."""

    rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise ValueError(f"need {self.rank} images, got {len(self.images)}")
        for w in self.images:
            if w.rank != self.rank:
                raise RankMismatch("image rank differs from endomorphism rank")

    @classmethod
    def identity(cls, rank: int) -> "Endomorphism":
        return cls(rank, tuple(Word.generator(rank, i) for i in range(1, rank + 1)))

    @classmethod
    def from_images(cls, images: Sequence[Word]) -> "Endomorphism":
        images = tuple(images)
        if not images:
            raise ValueError("at least one image is required")
        return cls(images[0].rank, images)

    def __call__(self, w: Word) -> Word:
        return apply(self, w)


def apply(e: Endomorphism, w: Word) -> Word:
    _check_rank(e, w)
    images = e.images
    inverses = [invert(u) for u in images]
    out = []
    for a in w.letters:
        out.extend((images[a - 1] if a > 0 else inverses[-a - 1]).letters)
    return Word(e.rank, _free_reduce(out))


def _then(first: Endomorphism, second: Endomorphism) -> Endomorphism:
    # w -> second(first(w))
    return Endomorphism(first.rank, tuple(apply(second, u) for u in first.images))


@dataclass(frozen=True)
class Automorphism:
    """An endomorphism together with an explicit inverse.

    Build through :func:`make_automorphism`, which validates the pair.
    """

    forward: Endomorphism
    backward: Endomorphism

    @property
    def rank(self) -> int:
        return self.forward.rank

    @property
    def images(self) -> tuple[Word, ...]:
        return self.forward.images

    def __call__(self, w: Word) -> Word:
        return apply(self.forward, w)

    def inverse(self) -> "Automorphism":
        return Automorphism(self.backward, self.forward)

    def is_identity(self) -> bool:
        return self.forward == Endomorphism.identity(self.rank)

    def then(self, other: "Automorphism") -> "Automorphism":
        return compose(self, other)

    def __str__(self):
        from .syntax import format_automorphism

        return format_automorphism(self)


def make_automorphism(fwd: Endomorphism, bwd: Endomorphism) -> Automorphism:
    n = _check_rank(fwd, bwd)
    ident = Endomorphism.identity(n)
    for label, comp in (("backward after forward", _then(fwd, bwd)),
                        ("forward after backward", _then(bwd, fwd))):
        if comp != ident:
            bad = next(i for i in range(n) if comp.images[i] != ident.images[i]) + 1
            raise NotInverse(f"{label} does not fix x{bad}")
    return Automorphism(fwd, bwd)


def identity_automorphism(rank: int) -> Automorphism:
    e = Endomorphism.identity(rank)
    return Automorphism(e, e)


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """``a`` then ``b``: the result sends ``w`` to ``b(a(w))``."""
    _check_rank(a, b)
    return Automorphism(_then(a.forward, b.forward), _then(b.backward, a.backward))


def compose_all(auts: Sequence[Automorphism], rank: int | None = None) -> Automorphism:
    if not auts:
        if rank is None:
            raise ValueError("empty composite needs an explicit rank")
        return identity_automorphism(rank)
    out = auts[0]
    for a in auts[1:]:
        out = compose(out, a)
    return out


def ad(y: Word) -> Automorphism:
    """Conjugation ``x -> y^-1 x y``."""
    n, yi = y.rank, invert(y)
    gens = [Word.generator(n, i) for i in range(1, n + 1)]
    fwd = Endomorphism(n, tuple(product([yi, g, y]) for g in gens))
    bwd = Endomorphism(n, tuple(product([y, g, yi]) for g in gens))
    return Automorphism(fwd, bwd)


# Elementary automorphisms with known inverses.

def _elementary(n: int, i: int, image: Word, inverse_image: Word) -> Automorphism:
    gens = [Word.generator(n, k) for k in range(1, n + 1)]
    fwd, bwd = list(gens), list(gens)
    fwd[i - 1], bwd[i - 1] = image, inverse_image
    return Automorphism(Endomorphism(n, tuple(fwd)), Endomorphism(n, tuple(bwd)))


def _check_indices(n: int, *idx: int, distinct: bool = True):
    for i in idx:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"generator index {i} outside rank {n}")
    if distinct and len(set(idx)) != len(idx):
        raise ValueError(f"indices must be distinct: {idx}")


def conj(n: int, i: int, j: int) -> Automorphism:
    """``x_i -> x_j^-1 x_i x_j``, other generators fixed."""
    _check_indices(n, i, j)
    xi, xj = Word.generator(n, i), Word.generator(n, j)
    return _elementary(n, i, product([~xj, xi, xj]), product([xj, xi, ~xj]))


def mul_r(n: int, i: int, j: int) -> Automorphism:
    """``x_i -> x_i x_j``."""
    _check_indices(n, i, j)
    xi, xj = Word.generator(n, i), Word.generator(n, j)
    return _elementary(n, i, xi * xj, xi * ~xj)


def swap(n: int, i: int, j: int) -> Automorphism:
    _check_indices(n, i, j)
    gens = [Word.generator(n, k) for k in range(1, n + 1)]
    gens[i - 1], gens[j - 1] = gens[j - 1], gens[i - 1]
    e = Endomorphism(n, tuple(gens))
    return Automorphism(e, e)


def inv(n: int, i: int) -> Automorphism:
    _check_indices(n, i)
    xi = Word.generator(n, i, -1)
    return _elementary(n, i, xi, xi)


def transvection(i: int, u: Word) -> Automorphism:
    """``x_i -> x_i u`` where ``u`` avoids ``x_i``; the inverse uses ``u^-1``."""
    n = u.rank
    _check_indices(n, i)
    if any(abs(a) == i for a in u.letters):
        raise ValueError(f"transvection word must not involve x{i}")
    xi = Word.generator(n, i)
    return _elementary(n, i, xi * u, xi * ~u)

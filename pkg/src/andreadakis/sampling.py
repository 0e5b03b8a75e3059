"""Seeded random words and automorphisms for property checks.

Random automorphisms are short products of elementary maps, transvections
by commutators and conjugations ``ad(w)``; membership in ``G_c`` is by
construction, not by testing.
"""
from __future__ import annotations

import random

from . import words as W
from .words import Automorphism, Word


def random_word(rng: random.Random, n: int, max_len: int, min_len: int = 0) -> Word:
    """Uniform length in ``[min_len, max_len]``, then a random reduced word."""
    length = rng.randint(min_len, max_len)
    letters: list[int] = []
    while len(letters) < length:
        a = rng.choice([i for i in range(1, n + 1)] + [-i for i in range(1, n + 1)])
        if letters and letters[-1] == -a:
            continue
        letters.append(a)
    return Word(n, tuple(letters))


def random_gamma_word(rng: random.Random, n: int, k: int, max_len: int = 2,
                      alphabet: list[int] | None = None) -> Word:
    """A bracket of ``k`` random nonempty words: an element of gamma_k."""
    alphabet = alphabet or list(range(1, n + 1))
    if k == 1:
        length = rng.randint(1, max_len)
        letters: list[int] = []
        while len(letters) < length:
            a = rng.choice(alphabet) * rng.choice((1, -1))
            if letters and letters[-1] == -a:
                continue
            letters.append(a)
        return Word(n, tuple(letters))
    split = rng.randint(1, k - 1)
    left = random_gamma_word(rng, n, split, max_len, alphabet)
    right = random_gamma_word(rng, n, k - split, max_len, alphabet)
    return W.commutator(left, right)


def random_elementary(rng: random.Random, n: int) -> Automorphism:
    if n == 1:
        return W.inv(1, 1)
    kind = rng.choice(("conj", "mul_r", "swap", "inv"))
    if kind == "inv":
        return W.inv(n, rng.randint(1, n))
    i, j = rng.sample(range(1, n + 1), 2)
    return getattr(W, kind)(n, i, j)


def random_automorphism(rng: random.Random, n: int, length: int = 3) -> Automorphism:
    return W.compose_all([random_elementary(rng, n) for _ in range(length)], rank=n)


def _ia_generator(rng: random.Random, n: int) -> Automorphism:
    # x_i -> x_j^-1 x_i x_j  or  x_i -> x_i [x_j, x_k]
    if n >= 3 and rng.random() < 0.5:
        i, j, k = rng.sample(range(1, n + 1), 3)
        return W.transvection(i, W.commutator(Word.generator(n, j), Word.generator(n, k)))
    i, j = rng.sample(range(1, n + 1), 2)
    return W.conj(n, i, j)


def random_G_factor(rng: random.Random, n: int, c: int, max_len: int = 2) -> Automorphism:
    """A single automorphism in G_c."""
    choices = ["ad"]
    if n >= 3:
        choices.append("transvection")
    if c == 1 and n >= 2:
        choices.append("ia")
    kind = rng.choice(choices)
    if kind == "ad":
        return W.ad(random_gamma_word(rng, n, c, max_len))
    if kind == "ia":
        return _ia_generator(rng, n)
    i = rng.randint(1, n)
    others = [j for j in range(1, n + 1) if j != i]
    return W.transvection(i, random_gamma_word(rng, n, c + 1, 1, others))


def random_G(rng: random.Random, n: int, c: int, factors: int = 2, conjugate: bool = True,
             max_len: int = 2) -> Automorphism:
    """A random element of G_c: a product of ``1..factors`` factors in G_c,
    optionally conjugated by an elementary automorphism (G_c is normal)."""
    parts = [random_G_factor(rng, n, c, max_len) for _ in range(rng.randint(1, factors))]
    if rng.random() < 0.5:
        parts = [p.inverse() if rng.random() < 0.5 else p for p in parts]
    psi = W.compose_all(parts, rank=n)
    if conjugate and n >= 2 and rng.random() < 0.5:
        s = random_elementary(rng, n)
        psi = W.compose_all([s.inverse(), psi, s])
    return psi

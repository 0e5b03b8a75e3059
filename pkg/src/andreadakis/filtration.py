"""The Andreadakis filtration of Aut(F_n), Johnson homomorphisms and their
outer counterparts.

``G_c`` is the group of automorphisms acting trivially on F_n / gamma_{c+1};
``psi`` lies in it iff each suffix ``w_i = x_i^-1 psi(x_i)`` lies in
gamma_{c+1}.  The Johnson image ``tau_c(psi)`` records the classes of the
suffixes in the degree-(c+1) Lie component, one row per generator.

All depths are certified only below the truncation degree ``D``; reports
carry explicit lower-bound markers past it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Sequence

import numpy as np

from .errors import (
    AllInnerUpToBudget, DepthTooLow, NotInSubgroupLevel, TrivialSubgroup, TruncationTooSmall,
)
from .intlat import IntMatrix, annihilating_functionals, cokernel_residue, member
from .lie import LieElement, dsw_project, lift_lie_to_word, lyndon_basis, tree_word, witt_rank
from .magnus import dense_component, expand_dense, gamma_depth
from .syntax import format_automorphism
from .words import Automorphism, Word, ad, compose, compose_all, multiply


def suffixes(psi: Automorphism) -> tuple[Word, ...]:
    """``w_i`` with ``psi(x_i) = x_i w_i``."""
    n = psi.rank
    return tuple(multiply(Word.generator(n, i, -1), img) for i, img in enumerate(psi.images, 1))


@dataclass(frozen=True)
class AutDepthReport:
    """Largest ``c`` with ``psi`` in ``G_c``.

    ``value == 0`` means the automorphism is not in IA_n.  When ``exact`` is
    False only ``depth >= value`` is certified (``value`` is then ``D``).
    """

    value: int
    exact: bool = True

    @property
    def is_ia(self) -> bool:
        return self.value >= 1

    def at_least(self, c: int) -> bool:
        return self.value >= c

    def __str__(self):
        if self.value == 0:
            return "not-IA"
        return str(self.value) if self.exact else f">= {self.value}"

    def to_json(self):
        return str(self)


def aut_depth(psi: Automorphism, D: int) -> AutDepthReport:
    if D < 2:
        raise TruncationTooSmall("truncation must be at least 2")
    best = None
    for w in suffixes(psi):
        if not w.letters:
            continue
        g = gamma_depth(w, D)
        if g.exact and (best is None or g.value < best):
            best = g.value
            if best == 1:
                break
    if best is None:
        return AutDepthReport(D, exact=False)
    return AutDepthReport(best - 1)


@dataclass(frozen=True)
class JohnsonImage:
    """Matrix of ``tau_c(psi)``: row i holds the coordinates of ``w_i`` in the
    Lyndon basis of the degree-(c+1) component."""

    rank: int
    level: int
    matrix: IntMatrix

    def __post_init__(self):
        want = (self.rank, witt_rank(self.rank, self.level + 1))
        if self.matrix.shape != want:
            raise ValueError(f"Johnson matrix must be {want}, got {self.matrix.shape}")

    @classmethod
    def from_flat(cls, rank: int, level: int, flat: Sequence[int]):
        w = witt_rank(rank, level + 1)
        flat = list(flat)
        return cls(rank, level, IntMatrix(rank, w, [flat[i * w:(i + 1) * w] for i in range(rank)]))

    def flatten(self) -> tuple:
        return tuple(x for r in self.matrix.data for x in r)

    def row(self, i: int) -> LieElement:
        """Image of generator ``x_i`` (1-based)."""
        return LieElement(self.rank, self.level + 1, self.matrix.data[i - 1])

    def is_zero(self) -> bool:
        return not any(self.flatten())

    def __add__(self, other: "JohnsonImage") -> "JohnsonImage":
        if (self.rank, self.level) != (other.rank, other.level):
            raise ValueError("Johnson images at different rank or level")
        return JohnsonImage.from_flat(self.rank, self.level,
                                      [a + b for a, b in zip(self.flatten(), other.flatten())])

    def __neg__(self):
        return JohnsonImage.from_flat(self.rank, self.level, [-a for a in self.flatten()])

    def __sub__(self, other):
        return self + (-other)

    def to_json(self):
        return {
            "rank": self.rank,
            "level": self.level,
            "basis": lyndon_basis(self.rank, self.level + 1).labels(),
            "matrix": self.matrix.to_json(),
        }


def _check_truncation(c: int, D: int):
    if c < 1:
        raise ValueError("level must be at least 1")
    if D < c + 2:
        raise TruncationTooSmall(f"level {c} needs truncation at least {c + 2}, got {D}")


def johnson(psi: Automorphism, c: int, D: int) -> JohnsonImage:
    _check_truncation(c, D)
    n = psi.rank
    width = witt_rank(n, c + 1)
    rows = []
    for i, w in enumerate(suffixes(psi), 1):
        if not w.letters:
            rows.append((0,) * width)
            continue
        # degrees <= c must vanish; only degree c+1 is read
        arrs = expand_dense(w, c + 1)
        if any(np.any(arrs[d]) for d in range(1, c + 1)):
            raise DepthTooLow(f"suffix of x{i} is not in gamma_{c + 1}; automorphism not in G_{c}")
        rows.append(dsw_project(dense_component(arrs[c + 1]), n, c + 1).coords)
    return JohnsonImage(n, c, IntMatrix(n, width, rows))


@lru_cache(maxsize=None)
def _ad_matrix(n: int, c: int) -> IntMatrix:
    cols = [johnson(ad(tree_word(n, t)), c, c + 2).flatten() for t in lyndon_basis(n, c).words]
    return IntMatrix.from_columns(cols, rows=n * witt_rank(n, c + 1))


def ad_matrix(n: int, c: int, D: int) -> IntMatrix:
    """Columns: flattened ``tau_c(ad(t))`` for the Lyndon basis trees ``t`` of
    degree c.  Row order is generator-major, matching
    :meth:`JohnsonImage.flatten`."""
    _check_truncation(c, D)
    return _ad_matrix(n, c)


def is_inner_mod_next(psi: Automorphism, c: int, D: int) -> LieElement | None:
    """``y`` in the degree-c component with ``tau_c(ad(lift y)) == tau_c(psi)``,
    or None when ``psi G_{c+1}`` contains no inner automorphism."""
    tau = johnson(psi, c, D)
    coeffs = member(tau.flatten(), ad_matrix(psi.rank, c, D))
    if coeffs is None:
        return None
    return LieElement(psi.rank, c, coeffs)


def _strip_inner(psi: Automorphism, y: LieElement) -> Automorphism:
    return compose(psi, ad(lift_lie_to_word(-y)))


@dataclass(frozen=True)
class OuterClass:
    """Outer depth of an automorphism.

    ``representative`` differs from the input by an inner automorphism and
    lies in ``G_level``.  If ``inner_up_to_budget`` is set, normalization
    reached the truncation before finding a non-inner Johnson image: the
    class lies in ``H_level`` at least, and may be deeper or trivial.
    """

    level: int
    representative: Automorphism
    johnson: JohnsonImage | None
    residue: tuple
    inner_up_to_budget: bool = False
    witnesses: tuple = field(default=(), compare=False)

    def to_json(self):
        return {
            "level": self.level,
            "inner_up_to_budget": self.inner_up_to_budget,
            "representative": format_automorphism(self.representative),
            "johnson": None if self.johnson is None else self.johnson.to_json(),
            "residue": [str(x) for x in self.residue],
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def outer_depth(psi: Automorphism, D: int) -> OuterClass:
    """Strip inner parts level by level until the Johnson image leaves the ad-lattice."""
    rep, witnesses = psi, []
    for _ in range(D + 1):
        d = aut_depth(rep, D)
        if d.value == 0:
            raise DepthTooLow("automorphism is not in IA_n")
        if not d.exact or d.value > D - 2:
            return OuterClass(d.value, rep, None, (), True, tuple(witnesses))
        c = d.value
        y = is_inner_mod_next(rep, c, D)
        if y is None:
            tau = johnson(rep, c, D)
            residue = cokernel_residue(tau.flatten(), ad_matrix(rep.rank, c, D))
            return OuterClass(c, rep, tau, residue, False, tuple(witnesses))
        if y.is_zero():
            raise AssertionError("nonzero Johnson image with zero inner witness")
        witnesses.append(y)
        rep = _strip_inner(rep, y)
    raise AssertionError("outer normalization failed to terminate")


def _nontrivial(gens: Sequence[Automorphism]) -> list[Automorphism]:
    gens = list(gens)
    out = [g for g in gens if not g.is_identity()]
    if not out:
        raise TrivialSubgroup("all generators are the identity")
    return out


def _inner_level(gens, D) -> int:
    levels = []
    for g in _nontrivial(gens):
        d = aut_depth(g, D)
        if d.value == 0:
            raise DepthTooLow("a generator is not in IA_n")
        if d.exact:
            levels.append(d.value)
    if not levels:
        raise TruncationTooSmall(f"every generator lies in G_{D}; raise the truncation")
    return min(levels)


def _outer_classes(gens, D) -> tuple[int, list[OuterClass]]:
    classes = [outer_depth(g, D) for g in _nontrivial(gens)]
    levels = [oc.level for oc in classes if not oc.inner_up_to_budget]
    if not levels:
        raise AllInnerUpToBudget("every generator is inner up to the truncation")
    return min(levels), classes


def subgroup_depth(gens: Sequence[Automorphism], D: int, outer: bool = False) -> int:
    """Level ``c`` with the subgroup in ``G_c`` (or ``H_c``) but not the next term."""
    if outer:
        return _outer_classes(gens, D)[0]
    return _inner_level(gens, D)


@dataclass(frozen=True)
class ZFunctional:
    """Homomorphism ``g -> f(tau_c(g)) / divisor`` onto Z.

    In outer mode ``f`` kills the ad-lattice, so the map factors through
    ``H_c``; arguments are first multiplied by inner automorphisms to land
    in ``G_c``.
    """

    rank: int
    level: int
    functional: tuple
    divisor: int
    outer: bool
    truncation: int
    generator_values: tuple = ()

    def _representative(self, psi: Automorphism) -> Automorphism:
        c, D = self.level, max(self.truncation, self.level + 2)
        rep = psi
        for _ in range(c + 1):
            d = aut_depth(rep, D)
            if d.value >= c:
                return rep
            if d.value == 0 or not self.outer:
                raise NotInSubgroupLevel(f"automorphism is not in G_{c}")
            y = is_inner_mod_next(rep, d.value, D)
            if y is None:
                raise NotInSubgroupLevel(f"automorphism is not in H_{c}")
            rep = _strip_inner(rep, y)
        raise AssertionError("normalization failed to terminate")

    def raw(self, psi: Automorphism) -> int:
        rep = self._representative(psi)
        tau = johnson(rep, self.level, max(self.truncation, self.level + 2))
        return sum(a * b for a, b in zip(self.functional, tau.flatten()))

    def __call__(self, psi: Automorphism) -> int:
        v = self.raw(psi)
        if v % self.divisor:
            raise NotInSubgroupLevel("value is not divisible by the divisor; not in the subgroup")
        return v // self.divisor

    def to_json(self):
        return {
            "rank": self.rank,
            "level": self.level,
            "outer": self.outer,
            "functional": [str(x) for x in self.functional],
            "divisor": str(self.divisor),
            "generator_values": [str(x) for x in self.generator_values],
        }


def map_to_Z(gens: Sequence[Automorphism], D: int, outer: bool = False) -> ZFunctional:
    """A surjection from the subgroup generated by ``gens`` onto Z."""
    gens = list(gens)
    if not gens:
        raise TrivialSubgroup("no generators")
    n = gens[0].rank
    if outer:
        c, classes = _outer_classes(gens, D)
        _check_truncation(c, D)
        by_gen = {id(g): oc for g, oc in zip(_nontrivial(gens), classes)}
        images = [johnson(by_gen[id(g)].representative, c, D).flatten() if id(g) in by_gen
                  else (0,) * (n * witt_rank(n, c + 1)) for g in gens]
        candidates = annihilating_functionals(ad_matrix(n, c, D), n * witt_rank(n, c + 1)).data
    else:
        c = _inner_level(gens, D)
        _check_truncation(c, D)
        images = [johnson(g, c, D).flatten() for g in gens]
        size = n * witt_rank(n, c + 1)
        candidates = [tuple(int(i == k) for i in range(size)) for k in range(size)]
    for f in candidates:
        values = [sum(a * b for a, b in zip(f, img)) for img in images]
        if any(values):
            d = 0
            for v in values:
                d = gcd(d, v)
            return ZFunctional(n, c, tuple(f), d, outer, D, tuple(v // d for v in values))
    # exactness with torsion-free quotient guarantees a candidate in outer mode
    raise AssertionError("no functional separates the generators from the ad-lattice")


def predicted_value(zf: ZFunctional, letters: Sequence[int]) -> int:
    """Value predicted by homomorphy for the product of ``gens`` spelled by
    signed 1-based ``letters``."""
    return sum((1 if a > 0 else -1) * zf.generator_values[abs(a) - 1] for a in letters)


def word_in_generators(letters: Sequence[int], gens: Sequence[Automorphism]) -> Automorphism:
    """Composite ``g_{a1} then g_{a2} ...`` with negative letters inverted."""
    parts = [gens[a - 1] if a > 0 else gens[-a - 1].inverse() for a in letters]
    return compose_all(parts, rank=gens[0].rank)


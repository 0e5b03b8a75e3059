"""Truncated noncommutative power series over Z and the Magnus expansion.

``x_i -> 1 + X_i`` extends to an embedding of F_n into the units of
Z<<X_1..X_n>>; a word lies in the c-th lower central term exactly when
``mu(w) - 1`` has no terms below degree c.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Mapping

import numpy as np

from .errors import NonUnit, ParameterMismatch
from .words import Word

Monomial = tuple  # tuple of variable indices in 1..n

_INT64_SAFE = 2**62


def _monomial_key(m: Monomial):
    return (len(m), m)


@dataclass(frozen=True)
class Series:
    """Element of Z<X_1..X_n> modulo terms of degree > ``degree``.

    ``coeffs`` is sparse: zero coefficients and over-degree monomials are
    dropped on construction.
    """

    rank: int
    degree: int
    coeffs: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, c in self.coeffs.items():
            m = tuple(int(i) for i in m)
            if any(not 1 <= i <= self.rank for i in m):
                raise ValueError(f"monomial {m} outside rank {self.rank}")
            c = int(c)
            if c and len(m) <= self.degree:
                clean[m] = clean.get(m, 0) + c
        object.__setattr__(self, "coeffs", {m: c for m, c in clean.items() if c})

    @classmethod
    def one(cls, rank, degree):
        return cls(rank, degree, {(): 1})

    @classmethod
    def zero(cls, rank, degree):
        return cls(rank, degree, {})

    @classmethod
    def variable(cls, rank, degree, i, coefficient=1):
        return cls(rank, degree, {(i,): coefficient})

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.rank, self.degree, self.coeffs) == (other.rank, other.degree, other.coeffs)

    def __hash__(self):
        return hash((self.rank, self.degree, frozenset(self.coeffs.items())))

    def __getitem__(self, m):
        return self.coeffs.get(tuple(m), 0)

    def _check(self, other):
        if (self.rank, self.degree) != (other.rank, other.degree):
            raise ParameterMismatch(
                f"series parameters differ: {(self.rank, self.degree)} vs {(other.rank, other.degree)}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return Series(self.rank, self.degree, out)

    def __neg__(self):
        return Series(self.rank, self.degree, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Series(self.rank, self.degree, {m: c * other for m, c in self.coeffs.items()})
        return series_mul(self, other)

    __rmul__ = __mul__

    def component(self, d: int) -> dict:
        """Homogeneous degree-``d`` part as a plain dict."""
        return {m: c for m, c in self.coeffs.items() if len(m) == d}

    def lowest_degree(self, start: int = 0):
        """Smallest degree >= ``start`` carrying a nonzero term, or None."""
        degs = [len(m) for m in self.coeffs if len(m) >= start]
        return min(degs) if degs else None

    def terms(self):
        return sorted(self.coeffs.items(), key=lambda mc: _monomial_key(mc[0]))

    def to_json(self):
        return [[list(m), str(c)] for m, c in self.terms()]

    @classmethod
    def from_json(cls, rank, degree, data):
        return cls(rank, degree, {tuple(m): int(c) for m, c in data})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m, c in self.terms():
            mono = "".join(f"X{i}" for i in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def series_mul(a: Series, b: Series) -> Series:
    a._check(b)
    D = a.degree
    by_deg: dict[int, list] = {}
    for m, c in b.coeffs.items():
        by_deg.setdefault(len(m), []).append((m, c))
    out: dict = {}
    for m1, c1 in a.coeffs.items():
        room = D - len(m1)
        for d, items in by_deg.items():
            if d > room:
                continue
            for m2, c2 in items:
                key = m1 + m2
                out[key] = out.get(key, 0) + c1 * c2
    return Series(a.rank, D, out)


def series_inverse(a: Series) -> Series:
    """Inverse of a series with constant term 1, degree by degree."""
    if a[()] != 1:
        raise NonUnit(f"constant term is {a[()]}, not 1")
    n, D = a.rank, a.degree
    parts = [a.component(d) for d in range(D + 1)]
    inv_parts = [{(): 1}]
    for d in range(1, D + 1):
        acc: dict = {}
        for k in range(1, d + 1):
            for m1, c1 in parts[k].items():
                for m2, c2 in inv_parts[d - k].items():
                    key = m1 + m2
                    acc[key] = acc.get(key, 0) - c1 * c2
        inv_parts.append({m: c for m, c in acc.items() if c})
    out = {}
    for p in inv_parts:
        out.update(p)
    return Series(n, D, out)


# Dense kernel: degree-d part stored as an n^d numpy array; right
# multiplication by (1 + X_i)^{+-1} touches only the slices ending in i.

def _coefficient_bound(length: int, D: int) -> int:
    return math.comb(length + D - 1, D) if length else 1


def expand_dense(w: Word, D: int) -> list:
    """Per-degree arrays of mu(w); index tuples are 0-based variable indices."""
    if D < 1:
        raise ValueError("truncation degree must be at least 1")
    n = w.rank
    dtype = np.int64 if _coefficient_bound(len(w), D) < _INT64_SAFE else object
    arrs = [np.ones((), dtype=dtype)] + [np.zeros((n,) * d, dtype=dtype) for d in range(1, D + 1)]
    for a in w.letters:
        i = abs(a) - 1
        if a > 0:
            for d in range(D, 0, -1):
                arrs[d][..., i] += arrs[d - 1]
        else:
            for d in range(1, D + 1):
                arrs[d][..., i] -= arrs[d - 1]
    return arrs


def dense_component(arr) -> dict:
    """Nonzero entries of one degree slice as {monomial: int} (1-based)."""
    if arr.ndim == 0:
        v = int(arr)
        return {(): v} if v else {}
    return {tuple(int(k) + 1 for k in idx): int(arr[idx]) for idx in zip(*np.nonzero(arr))}


def magnus_expand(w: Word, D: int) -> Series:
    arrs = expand_dense(w, D)
    coeffs = {}
    for arr in arrs:
        coeffs.update(dense_component(arr))
    return Series(w.rank, D, coeffs)


@dataclass(frozen=True)
class DepthReport:
    """Lower-central depth of a word, certified below the truncation.

    ``exact`` is False when only the bound ``depth >= value`` is known.
    """

    value: int
    exact: bool = True

    def __str__(self):
        return str(self.value) if self.exact else f">= {self.value}"

    def at_least(self, c: int) -> bool:
        return self.value >= c

    def to_json(self):
        return str(self)


def _lowest_nonzero_degree(arrs):
    for d in range(1, len(arrs)):
        if np.any(arrs[d]):
            return d
    return None


def gamma_depth(w: Word, D: int) -> DepthReport:
    d = _lowest_nonzero_degree(expand_dense(w, D))
    return DepthReport(D + 1, exact=False) if d is None else DepthReport(d)


def monomials(n: int, d: int):
    return [tuple(m) for m in _cartesian(range(1, n + 1), repeat=d)]

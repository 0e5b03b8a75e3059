"""The free Lie ring on x_1..x_n in the Lyndon basis.

Basis elements of degree c are Lyndon words of length c, bracketed by their
standard factorization.  Elements are integer coordinate vectors over the
lex-ordered basis.  Associative images live in Z<X_1..X_n> as
``{monomial: coefficient}`` dicts, which is where the Magnus expansion of a
group element puts its leading term.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy import divisors, factorint, isprime

from .errors import (
    DepthExceedsTruncation, IdentityWord, InvalidModulus, NotLie, ParameterMismatch,
    ZeroElement,
)
from .intlat import IntMatrix, matrix_rank
from .magnus import Series, dense_component, expand_dense
from .words import Word, commutator, power, product


# -- Lyndon words -----------------------------------------------------------

def is_lyndon(w: tuple) -> bool:
    """Strictly smaller than each of its proper rotations."""
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def lyndon_words(n: int, c: int) -> tuple:
    """All Lyndon words of length ``c`` over ``1..n`` in lex order (Duval)."""
    out = []
    w = [0]
    while w:
        if len(w) == c:
            out.append(tuple(a + 1 for a in w))
        m = len(w)
        while len(w) < c:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
        if w:
            w[-1] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def standard_factorization(w: tuple) -> tuple:
    """Split a Lyndon word ``w = uv`` with ``v`` its longest proper Lyndon suffix."""
    if len(w) < 2:
        raise ValueError("letters have no standard factorization")
    k = min(range(1, len(w)), key=lambda i: w[i:])
    return w[:k], w[k:]


@dataclass(frozen=True, order=True)
class LyndonTree:
    """Standard bracketing of a Lyndon word."""

    word: tuple

    def __post_init__(self):
        if not is_lyndon(self.word):
            raise ValueError(f"{self.word} is not a Lyndon word")

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def is_letter(self) -> bool:
        return len(self.word) == 1

    @property
    def children(self) -> tuple["LyndonTree", "LyndonTree"]:
        u, v = standard_factorization(self.word)
        return LyndonTree(u), LyndonTree(v)

    def nested(self):
        """The tree as nested 2-tuples with integer leaves."""
        if self.is_letter:
            return self.word[0]
        u, v = self.children
        return (u.nested(), v.nested())

    def __str__(self):
        return _tree_str(self.word)


@lru_cache(maxsize=None)
def _tree_str(w: tuple) -> str:
    if len(w) == 1:
        return f"x{w[0]}"
    u, v = standard_factorization(w)
    return f"[{_tree_str(u)},{_tree_str(v)}]"


@dataclass(frozen=True)
class GradedBasis:
    rank: int
    degree: int
    words: tuple

    @property
    def trees(self) -> list[LyndonTree]:
        return [LyndonTree(w) for w in self.words]

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.trees)

    def index(self, word: tuple) -> int:
        return _basis_index(self.rank, self.degree)[tuple(word)]

    def labels(self) -> list[str]:
        return [_tree_str(w) for w in self.words]


@lru_cache(maxsize=None)
def lyndon_basis(n: int, c: int) -> GradedBasis:
    if n < 1 or c < 1:
        raise ValueError("rank and degree must be positive")
    return GradedBasis(n, c, lyndon_words(n, c))


@lru_cache(maxsize=None)
def _basis_index(n: int, c: int) -> dict:
    return {w: k for k, w in enumerate(lyndon_words(n, c))}


def _mobius(d: int) -> int:
    exps = factorint(d).values()
    return 0 if any(e > 1 for e in exps) else (-1) ** len(exps)


def witt_rank(n: int, c: int) -> int:
    """Rank of the degree-c part of the free Lie ring of rank n."""
    if n < 1 or c < 1:
        raise ValueError("rank and degree must be positive")
    total = sum(_mobius(d) * n ** (c // d) for d in divisors(c))
    return total // c


# -- Lie elements -----------------------------------------------------------

@dataclass(frozen=True)
class LieElement:
    rank: int
    degree: int
    coords: tuple

    def __post_init__(self):
        coords = tuple(int(x) for x in self.coords)
        if len(coords) != witt_rank(self.rank, self.degree):
            raise ValueError(
                f"expected {witt_rank(self.rank, self.degree)} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, n, c):
        return cls(n, c, (0,) * witt_rank(n, c))

    @classmethod
    def from_dict(cls, n, c, data: dict):
        """From ``{lyndon word: coefficient}``."""
        coords = [0] * witt_rank(n, c)
        index = _basis_index(n, c)
        for w, k in data.items():
            coords[index[tuple(w)]] += k
        return cls(n, c, tuple(coords))

    @classmethod
    def basis_element(cls, n, word):
        word = tuple(word)
        return cls.from_dict(n, len(word), {word: 1})

    @classmethod
    def generator(cls, n, i):
        return cls.basis_element(n, (i,))

    def as_dict(self) -> dict:
        words = lyndon_words(self.rank, self.degree)
        return {words[k]: x for k, x in enumerate(self.coords) if x}

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other):
        if (self.rank, self.degree) != (other.rank, other.degree):
            raise ParameterMismatch("Lie elements of different rank or degree")

    def __add__(self, other):
        self._check(other)
        return LieElement(self.rank, self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return LieElement(self.rank, self.degree, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return LieElement(self.rank, self.degree, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __str__(self):
        terms = self.as_dict()
        if not terms:
            return "0"
        parts = []
        for w, k in terms.items():
            s = _tree_str(w)
            parts.append(s if k == 1 else f"-{s}" if k == -1 else f"{k}*{s}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return {
            "rank": self.rank,
            "degree": self.degree,
            "basis": lyndon_basis(self.rank, self.degree).labels(),
            "coefficients": [str(x) for x in self.coords],
        }


# -- bracket by Lyndon rewriting -------------------------------------------

def _add_into(acc: dict, terms: dict, scale: int):
    for w, k in terms.items():
        v = acc.get(w, 0) + scale * k
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


@lru_cache(maxsize=None)
def _bracket_words(u: tuple, v: tuple) -> dict:
    """``[P_u, P_v]`` in Lyndon coordinates, as ``{word: coefficient}``.

    Callers must not mutate the returned dict (it is cached).
    """
    if u == v:
        return {}
    if u > v:
        return {w: -k for w, k in _bracket_words(v, u).items()}
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return {u + v: 1}
    # Jacobi: [[u1,u2],v] = [u1,[u2,v]] - [u2,[u1,v]]
    u1, u2 = standard_factorization(u)
    acc: dict = {}
    for w, k in _bracket_words(u2, v).items():
        _add_into(acc, _bracket_words(u1, w), k)
    for w, k in _bracket_words(u1, v).items():
        _add_into(acc, _bracket_words(u2, w), -k)
    return acc


def bracket(a: LieElement, b: LieElement) -> LieElement:
    if a.rank != b.rank:
        raise ParameterMismatch("Lie elements of different rank")
    acc: dict = {}
    bd = b.as_dict()
    for u, x in a.as_dict().items():
        for v, y in bd.items():
            _add_into(acc, _bracket_words(u, v), x * y)
    return LieElement.from_dict(a.rank, a.degree + b.degree, acc)


def left_normed(elements) -> LieElement:
    """``[[..[e1, e2], e3], .., ek]``."""
    elements = list(elements)
    out = elements[0]
    for e in elements[1:]:
        out = bracket(out, e)
    return out


# -- associative images and Dynkin-Specht-Wever -----------------------------

def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            out[m1 + m2] = out.get(m1 + m2, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _poly_commutator(p: dict, q: dict) -> dict:
    out = _poly_mul(p, q)
    for m, c in _poly_mul(q, p).items():
        out[m] = out.get(m, 0) - c
    return {m: c for m, c in out.items() if c}


@lru_cache(maxsize=None)
def lyndon_polynomial(w: tuple) -> dict:
    """Associative expansion of the basis element for Lyndon word ``w``."""
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    return _poly_commutator(lyndon_polynomial(u), lyndon_polynomial(v))


def associative(a: LieElement) -> dict:
    out: dict = {}
    for w, x in a.as_dict().items():
        for m, c in lyndon_polynomial(w).items():
            out[m] = out.get(m, 0) + x * c
    return {m: c for m, c in out.items() if c}


@lru_cache(maxsize=None)
def _left_normed_monomial(m: tuple) -> dict:
    if len(m) == 1:
        return {m: 1}
    return _poly_commutator(_left_normed_monomial(m[:-1]), {m[-1:]: 1})


def _homogeneous_terms(h, n, c) -> dict:
    if isinstance(h, Series):
        if h.rank != n:
            raise ParameterMismatch("series rank differs")
        h = h.coeffs
    out = {}
    for m, k in h.items():
        m = tuple(m)
        if len(m) != c:
            raise ValueError(f"monomial {m} is not of degree {c}")
        if any(not 1 <= i <= n for i in m):
            raise ValueError(f"monomial {m} outside rank {n}")
        if k:
            out[m] = out.get(m, 0) + int(k)
    return {m: k for m, k in out.items() if k}


def lyndon_coordinates(poly: dict, n: int, c: int) -> LieElement:
    """Coordinates of an associative Lie polynomial, by triangular peeling.

    Each basis polynomial is its Lyndon word plus lex-larger words, so the
    lex-smallest surviving monomial names the next basis element to remove.
    """
    rest = dict(poly)
    coords: dict = {}
    while rest:
        m = min(rest)
        if not is_lyndon(m):
            raise NotLie(f"leading monomial {m} is not a Lyndon word")
        k = rest[m]
        coords[m] = k
        for mm, cc in lyndon_polynomial(m).items():
            v = rest.get(mm, 0) - k * cc
            if v:
                rest[mm] = v
            else:
                rest.pop(mm, None)
    return LieElement.from_dict(n, c, coords)


def dsw_project(h, n: int, c: int) -> LieElement:
    """Lyndon coordinates of a homogeneous degree-``c`` Lie polynomial.

    ``h`` is a ``{monomial: coefficient}`` dict or a homogeneous Series.
    Raises :class:`NotLie` unless the left-normed bracketing of ``h`` equals
    ``c * h``.
    """
    if c < 1:
        raise ValueError("degree must be positive")
    h = _homogeneous_terms(h, n, c)
    theta: dict = {}
    for m, k in h.items():
        for mm, cc in _left_normed_monomial(m).items():
            theta[mm] = theta.get(mm, 0) + k * cc
    theta = {m: k for m, k in theta.items() if k}
    if theta != {m: c * k for m, k in h.items()}:
        raise NotLie("input is not a Lie element")
    return lyndon_coordinates({m: k // c for m, k in theta.items()}, n, c)


def leading_lie_part(w: Word, D: int) -> tuple[int, LieElement]:
    """Depth ``c`` of ``w`` and its image in the degree-c Lie component."""
    if not w.letters:
        raise IdentityWord("the identity has no leading Lie part")
    arrs = expand_dense(w, D)
    for c in range(1, D + 1):
        comp = dense_component(arrs[c])
        if comp:
            return c, dsw_project(comp, w.rank, c)
    raise DepthExceedsTruncation(f"word lies deeper than truncation {D}")


# -- group-commutator lifts -------------------------------------------------

@lru_cache(maxsize=None)
def tree_word(n: int, w: tuple) -> Word:
    """Group commutator realizing the standard bracketing of ``w``."""
    if len(w) == 1:
        return Word.generator(n, w[0])
    u, v = standard_factorization(w)
    return commutator(tree_word(n, u), tree_word(n, v))


def lift_lie_to_word(v: LieElement) -> Word:
    """A word in the degree-``deg v`` lower central term whose leading part is ``v``."""
    if v.is_zero():
        raise ZeroElement("cannot lift the zero element")
    return product([power(tree_word(v.rank, w), k) for w, k in v.as_dict().items()])


# -- centres ----------------------------------------------------------------

def ad_generators_matrix(n: int, d: int) -> list[list[int]]:
    """Matrix of ``v -> ([x_i, v])_i`` from degree d to n copies of degree d+1.

    Rows are ordered generator-major: row ``i * w + j`` is coordinate ``j`` of
    ``[x_{i+1}, v]``.
    """
    width = witt_rank(n, d + 1)
    cols = []
    for t in lyndon_words(n, d):
        v = LieElement.basis_element(n, t)
        col = []
        for i in range(1, n + 1):
            col.extend(bracket(LieElement.generator(n, i), v).coords)
        cols.append(col)
    rows = n * width
    return [[cols[j][r] for j in range(len(cols))] for r in range(rows)]


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def center_kernel_rank(n: int, d: int, m: int = 0) -> int:
    """Rank of the kernel of ``v -> ([x_i, v])_i`` on the degree-d component.

    ``m = 0`` works over Z, a prime ``m`` over Z/m.  For ``n >= 2`` the free
    Lie ring and its mod-p reductions are centreless, so this is always 0.
    """
    if m != 0 and not (m > 1 and isprime(m)):
        raise InvalidModulus(f"modulus must be 0 or a prime, got {m}")
    mat = ad_generators_matrix(n, d)
    dim = witt_rank(n, d)
    if m == 0:
        r = matrix_rank(IntMatrix.from_rows(mat, cols=dim))
    else:
        r = rank_mod_p(mat, m)
    return dim - r

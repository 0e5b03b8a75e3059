"""Seeded invariant suites behind the ``verify`` command.

Each suite draws its own generator from ``(seed, suite name)`` so results do
not depend on which suites run or in what order.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import words as W
from .errors import DepthExceedsTruncation, IdentityWord
from .filtration import ad_matrix, aut_depth, johnson
from .intlat import IntMatrix, member, snf
from .lie import (
    LieElement, associative, bracket, center_kernel_rank, dsw_project, leading_lie_part,
    lift_lie_to_word, lyndon_words, witt_rank,
)
from .magnus import gamma_depth, magnus_expand, series_inverse, series_mul
from .sampling import random_G, random_automorphism, random_gamma_word, random_word


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    first_failure: str | None = None
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def check(self, ok: bool, detail: Callable[[], str] | str = ""):
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = detail() if callable(detail) else detail

    def to_json(self):
        return {
            "suite": self.name,
            "cases": str(self.cases),
            "failures": str(self.failures),
            "passed": self.passed,
            "first_failure": self.first_failure,
            "notes": {k: str(v) for k, v in self.notes.items()},
        }


SUITES: dict[str, Callable] = {}


def suite(name):
    def deco(fn):
        SUITES[name] = fn
        return fn
    return deco


def _levels(D):
    return range(1, min(3, D - 2) + 1)


@suite("commutator-identities")
def _commutators(rng, n, D, cases, res):
    C, M = W.commutator, W.multiply
    for _ in range(cases):
        x, y, z = (random_word(rng, n, 6) for _ in range(3))
        lhs = C(x, M(y, z))
        rhs = W.product([C(x, z), C(z, C(y, x)), C(x, y)])
        res.check(lhs == rhs, lambda: f"[x,yz] fails for {x}, {y}, {z}")
        lhs = C(M(x, y), z)
        rhs = W.product([C(x, z), C(C(x, z), y), C(y, z)])
        res.check(lhs == rhs, lambda: f"[xy,z] fails for {x}, {y}, {z}")


@suite("automorphism-algebra")
def _auts(rng, n, D, cases, res):
    for _ in range(cases):
        a, b, c = (random_automorphism(rng, n, 2) for _ in range(3))
        u, v = random_word(rng, n, 6), random_word(rng, n, 6)
        res.check(a(W.multiply(u, v)) == W.multiply(a(u), a(v)), "apply not multiplicative")
        res.check(a(W.invert(u)) == W.invert(a(u)), "apply does not respect inverses")
        res.check(W.compose(W.compose(a, b), c) == W.compose(a, W.compose(b, c)), "compose not associative")
        res.check(W.ad(W.multiply(u, v)) == W.compose(W.ad(u), W.ad(v)), "ad not a homomorphism")


@suite("magnus")
def _magnus(rng, n, D, cases, res):
    for _ in range(cases):
        u, v = random_word(rng, n, 8), random_word(rng, n, 8)
        mu, mv = magnus_expand(u, D), magnus_expand(v, D)
        res.check(magnus_expand(W.multiply(u, v), D) == series_mul(mu, mv),
                  lambda: f"mu not multiplicative on {u}, {v}")
        res.check(magnus_expand(W.invert(u), D) == series_inverse(mu),
                  lambda: f"mu(w^-1) != mu(w)^-1 for {u}")


@suite("gamma-filtration")
def _gamma(rng, n, D, cases, res):
    done = 0
    while done < cases:
        u = random_gamma_word(rng, n, rng.randint(1, 2))
        v = random_gamma_word(rng, n, rng.randint(1, 2))
        du, dv = gamma_depth(u, D), gamma_depth(v, D)
        if not (du.exact and dv.exact):
            continue
        done += 1
        dc = gamma_depth(W.commutator(u, v), D)
        res.check(dc.value >= min(du.value + dv.value, D + 1),
                  lambda: f"depth([u,v]) < depth u + depth v for {u}, {v}")


def _random_lie(rng, n, c, bound=3):
    while True:
        v = LieElement(n, c, [rng.randint(-bound, bound) for _ in range(witt_rank(n, c))])
        if not v.is_zero():
            return v


@suite("lie-jacobi")
def _jacobi(rng, n, D, cases, res):
    for _ in range(cases):
        a, b, c = (_random_lie(rng, n, rng.randint(1, 2)) for _ in range(3))
        parts = [bracket(a, bracket(b, c)), bracket(b, bracket(c, a)), bracket(c, bracket(a, b))]
        total = parts[0] + parts[1] + parts[2]
        res.check(total.is_zero(), lambda: f"Jacobi fails for {a}, {b}, {c}")


@suite("lie-dsw-roundtrip")
def _dsw(rng, n, D, cases, res):
    for _ in range(cases):
        c = rng.randint(1, min(5, D))
        v = _random_lie(rng, n, c)
        res.check(dsw_project(associative(v), n, c) == v, lambda: f"DSW roundtrip fails for {v}")


@suite("lie-lift-roundtrip")
def _lift(rng, n, D, cases, res):
    for _ in range(cases):
        c = rng.randint(1, min(3, D))
        v = _random_lie(rng, n, c, bound=2)
        res.check(leading_lie_part(lift_lie_to_word(v), D) == (c, v),
                  lambda: f"lift roundtrip fails for {v}")


@suite("lie-group-compatibility")
def _compat(rng, n, D, cases, res):
    done = 0
    while done < cases:
        u = random_gamma_word(rng, n, rng.randint(1, 2))
        v = random_gamma_word(rng, n, rng.randint(1, 2))
        try:
            cu, lu = leading_lie_part(u, D)
            cv, lv = leading_lie_part(v, D)
        except (DepthExceedsTruncation, IdentityWord):
            continue
        if cu + cv > D:
            continue
        b = bracket(lu, lv)
        if b.is_zero():
            continue
        done += 1
        res.check(leading_lie_part(W.commutator(u, v), D) == (cu + cv, b),
                  lambda: f"leading part of [u,v] is not the bracket for {u}, {v}")


@suite("johnson-kernel-additivity")
def _johnson(rng, n, D, cases, res):
    for k in range(cases):
        c = _levels(D)[k % len(_levels(D))]
        psi = random_G(rng, n, c if rng.random() < 0.7 else c + 1)
        phi = random_G(rng, n, c)
        tp, tf = johnson(psi, c, D), johnson(phi, c, D)
        res.check(johnson(W.compose(psi, phi), c, D) == tp + tf,
                  lambda: f"additivity fails at level {c}")
        res.check(tp.is_zero() == aut_depth(psi, D).at_least(c + 1),
                  lambda: f"kernel law fails at level {c}")


@suite("eq-mod")
def _eqmod(rng, n, D, cases, res):
    for k in range(cases):
        c = _levels(D)[k % len(_levels(D))]
        psi = random_G(rng, n, c)
        x = random_gamma_word(rng, n, 2)
        d = gamma_depth(W.multiply(W.invert(x), psi(x)), D)
        res.check(d.value >= min(c + 2, D + 1), lambda: f"x^-1 psi(x) too shallow at level {c}")


@suite("inner-depth")
def _centres(rng, n, D, cases, res):
    done = 0
    while done < cases:
        y = random_gamma_word(rng, n, rng.randint(1, min(4, D - 1)))
        g = gamma_depth(y, D)
        if not g.exact or g.value > min(4, D - 1):
            continue
        done += 1
        res.check(aut_depth(W.ad(y), D).value == g.value, lambda: f"depth(ad(y)) != depth(y) for {y}")


@suite("centre-kernel")
def _centre_kernel(rng, n, D, cases, res):
    if n < 2:
        return
    for d in range(1, min(5, D) + 1):
        for m in (0, 2, 3, 5):
            res.check(center_kernel_rank(n, d, m) == 0, f"nonzero centre at degree {d} mod {m}")


@suite("ad-injective")
def _ad_inj(rng, n, D, cases, res):
    if n < 2:
        return
    for c in range(1, min(4, D - 2) + 1):
        r = snf(ad_matrix(n, c, D))
        res.notes[f"invariants(c={c})"] = sorted(set(r.invariants))
        res.check(r.rank == witt_rank(n, c), f"ad map not injective at level {c}")


@suite("torsion-probe")
def _torsion(rng, n, D, cases, res):
    if n < 2:
        return
    for k in range(cases):
        c = _levels(D)[k % len(_levels(D))]
        lattice = ad_matrix(n, c, D)
        tau = johnson(random_G(rng, n, c), c, D).flatten()
        for p in (2, 3, 5):
            if member([p * x for x in tau], lattice) is not None:
                res.check(member(tau, lattice) is not None, f"torsion at level {c}, p={p}")
            else:
                res.check(True)


@suite("witt-lyndon")
def _witt(rng, n, D, cases, res):
    for c in range(1, 9):
        res.check(len(lyndon_words(n, c)) == witt_rank(n, c), f"Witt mismatch at degree {c}")


@suite("snf")
def _snf(rng, n, D, cases, res):
    for _ in range(cases):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        a = IntMatrix(r, c, [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)])
        s = snf(a)
        inv = s.invariants
        chain = all(inv[i + 1] % inv[i] == 0 if inv[i] else inv[i + 1] == 0 for i in range(len(inv) - 1))
        res.check(s.left @ a @ s.right == s.diagonal and chain and all(x >= 0 for x in inv),
                  lambda: f"SNF fails on {a.tolist()}")


def run_suites(n: int, D: int, cases: int, seed: int, names=None) -> list[SuiteResult]:
    out = []
    for name in names or SUITES:
        res = SuiteResult(name)
        SUITES[name](random.Random(f"{seed}:{name}:{n}:{D}"), n, D, cases, res)
        out.append(res)
    return out

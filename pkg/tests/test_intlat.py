import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from andreadakis.errors import DimensionMismatch
from andreadakis.intlat import (
    IntMatrix, annihilating_functionals, cokernel_residue, invariant_factors, member,
    saturation, saturation_index, snf,
)


def det(m: IntMatrix) -> int:
    return int(Matrix(m.tolist()).det()) if m.rows else 1


def sympy_invariants(m: IntMatrix):
    d = smith_normal_form(Matrix(m.tolist()), domain=ZZ)
    return sorted(abs(d[i, i]) for i in range(min(m.rows, m.cols)))


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c),
                           min_size=r, max_size=r))).map(IntMatrix.from_rows)


class TestSNF:
    def test_identity(self):
        r = snf(IntMatrix.identity(3))
        assert r.diagonal == r.left == r.right == IntMatrix.identity(3)

    def test_diag_2_3(self):
        assert snf(IntMatrix.diagonal([2, 3], 2, 2)).diagonal == IntMatrix.diagonal([1, 6], 2, 2)

    def test_zero(self):
        assert snf(IntMatrix.zeros(2, 3)).diagonal == IntMatrix.zeros(2, 3)

    def test_empty(self):
        r = snf(IntMatrix.zeros(3, 0))
        assert r.rank == 0 and r.left == IntMatrix.identity(3)

    def test_deterministic(self):
        m = IntMatrix.from_rows([[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]])
        assert snf(m) == snf(m)
        assert snf(m).invariants == [1, 10, 30, 0]

    @given(matrices)
    def test_decomposition(self, a):
        r = snf(a)
        assert r.left @ a @ r.right == r.diagonal
        assert abs(det(r.left)) == 1 and abs(det(r.right)) == 1
        assert r.left @ r.left_inverse == IntMatrix.identity(a.rows)
        inv = r.invariants
        assert all(x >= 0 for x in inv)
        for p, q in zip(inv, inv[1:]):
            assert (q % p == 0) if p else q == 0

    @given(matrices)
    def test_matches_sympy_oracle(self, a):
        assert sorted(invariant_factors(a)) == sympy_invariants(a)


class TestMember:
    def test_examples(self):
        assert member((2, 4), [(1, 2)]) == (2,)
        assert member((1, 0), [(0, 1)]) is None
        assert member((0, 0, 0), [(1, 2, 3), (4, 5, 6)]) == (0, 0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            member((1, 2, 3), IntMatrix.from_columns([(1, 2)]))

    @given(matrices, st.lists(st.integers(-5, 5), min_size=5, max_size=5))
    def test_certificate(self, a, coeffs):
        v = a @ coeffs[: a.cols]
        c = member(v, a)
        assert c is not None and a @ c == v

    def test_non_member_detected(self):
        a = IntMatrix.from_columns([(2, 0), (0, 3)])
        assert member((1, 0), a) is None and member((4, 3), a) == (2, 1)


def same_lattice(a: IntMatrix, b: IntMatrix) -> bool:
    return all(member(col, b) is not None for col in a.columns()) and \
        all(member(col, a) is not None for col in b.columns())


class TestSaturation:
    def test_content(self):
        assert same_lattice(saturation([(2, 0)]), IntMatrix.from_columns([(1, 0)]))

    def test_unimodular(self):
        a = IntMatrix.from_columns([(1, 1), (0, 1)])
        assert same_lattice(saturation(a), a)

    def test_empty(self):
        assert saturation(IntMatrix.zeros(3, 0)).shape == (3, 0)

    @given(matrices)
    def test_idempotent_and_finite_index(self, a):
        s = saturation(a)
        assert same_lattice(saturation(s), s)
        for col in a.columns():
            assert member(col, s) is not None
        idx = saturation_index(a)
        # idx * (saturated vector) lies back in the lattice
        for col in s.columns():
            assert member([idx * t for t in col], a) is not None


class TestAnnihilator:
    def test_full_dual(self):
        f = annihilating_functionals(IntMatrix.zeros(2, 0), 2)
        assert f.rows == 2 and abs(det(f)) == 1

    def test_full_rank(self):
        f = annihilating_functionals(IntMatrix.from_columns([(0, -1), (1, 0)]), 2)
        assert f.rows == 0

    def test_rank_three_in_nine(self):
        from andreadakis.filtration import ad_matrix

        f = annihilating_functionals(ad_matrix(3, 1, 3), 9)
        assert f.rows == 6
        assert f @ ad_matrix(3, 1, 3) == IntMatrix.zeros(6, 3)

    @given(matrices)
    def test_kills_and_rank(self, a):
        f = annihilating_functionals(a, a.rows)
        assert f.rows == a.rows - snf(a).rank
        for row in f.data:
            assert all(sum(x * y for x, y in zip(row, col)) == 0 for col in a.columns())


def test_residue_zero_iff_member():
    rng = random.Random(3)
    a = IntMatrix.from_columns([(2, 0, 0), (0, 3, 1)])
    for _ in range(100):
        v = [rng.randint(-6, 6) for _ in range(3)]
        assert (not any(cokernel_residue(v, a))) == (member(v, a) is not None)


def test_json_roundtrip():
    m = IntMatrix.from_rows([[1, -2], [10**30, 0]])
    assert IntMatrix.from_json(m.to_json()) == m
    assert m.to_json()[1][0] == str(10**30)

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quivertree import linalg as la
from quivertree.linalg import LinearAlgebraError, PrimeField, QQ

FP = PrimeField(1000003)


def test_rank_small_cases():
    assert la.rank(QQ, QQ.zeros(0, 0)) == 0
    assert la.rank(QQ, QQ.eye(2)) == 2
    assert la.rank(QQ, QQ.array([[1, 2], [2, 4]])) == 1


def test_kernel_cases():
    assert la.kernel_basis(QQ, QQ.eye(3)).shape == (3, 0)
    assert la.kernel_basis(QQ, QQ.zeros(2, 3)).shape == (3, 3)
    k = la.kernel_basis(QQ, QQ.array([[1, 1]]))
    assert k.shape == (2, 1)
    assert k[0, 0] == -k[1, 0] != 0


def test_solve_cases():
    b = QQ.array([[3], [4]])
    assert (la.solve(QQ, QQ.eye(2), b) == b).all()
    with pytest.raises(LinearAlgebraError):
        la.solve(QQ, QQ.zeros(2, 2), QQ.array([[1], [0]]))
    assert la.solve(QQ, QQ.array([[2]]), QQ.array([[1]]))[0, 0] == Fraction(1, 2)


def test_solve_over_prime_field():
    x = la.solve(FP, FP.array([[2]]), FP.array([[1]]))
    assert (2 * int(x[0, 0])) % FP.p == 1


def test_charpoly_cases():
    assert la.charpoly(QQ, QQ.array([[5]])) == [-5, 1]
    assert la.charpoly(QQ, QQ.eye(2)) == [1, -2, 1]
    assert la.charpoly(QQ, QQ.array([[0, 1], [0, 0]])) == [0, 0, 1]


def test_root_splitting_cases():
    assert la.factor_squarefree_roots([0, 0, 1], 5) == ([(0, 2)], [1])
    roots, rest = la.factor_squarefree_roots([2, -3, 1], 7)
    assert [r for r, _ in roots] == [1, 2] and rest == [1]
    roots, rest = la.factor_squarefree_roots([1, 0, 1], 7)
    assert roots == [] and len(rest) == 3


def test_root_splitting_large_prime():
    p = FP.p
    want = [3, 17, 999999]
    f = [1]
    for r in want:
        f = la.poly_mul(f, [(-r) % p, 1], p)
    f = la.poly_mul(f, [1, 0, 1], p)  # -1 is a non-residue since p = 3 mod 4
    roots, rest = la.factor_squarefree_roots(f, p, seed=3)
    assert [r for r, _ in roots] == want
    assert rest == [1, 0, 1]


def test_inverse_and_singular():
    a = QQ.array([[1, 2], [3, 4]])
    assert (QQ.matmul(a, la.inverse(QQ, a)) == QQ.eye(2)).all()
    with pytest.raises(LinearAlgebraError):
        la.inverse(QQ, QQ.array([[1, 2], [2, 4]]))


matrices = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2**31)).map(
    lambda t: np.array([[random.Random(t[2] + 7 * i + j).randint(-2, 2) for j in range(t[1])] for i in range(t[0])], dtype=object).reshape(t[0], t[1])
)


@given(matrices)
def test_rank_nullity(raw):
    for field in (QQ, FP):
        m = field.array(raw, raw.shape)
        assert la.rank(field, m) + la.kernel_basis(field, m).shape[1] == m.shape[1]
        k = la.kernel_basis(field, m)
        if k.size and m.size:
            assert not field.matmul(m, k).any()


@given(matrices, st.integers(0, 2**31))
def test_solve_returns_solution(raw, seed):
    m = QQ.array(raw, raw.shape)
    rng = random.Random(seed)
    x0 = QQ.array([[rng.randint(-3, 3)] for _ in range(m.shape[1])], (m.shape[1], 1))
    b = QQ.matmul(m, x0)
    x = la.solve(QQ, m, b)
    assert (QQ.matmul(m, x) == b).all()


@given(st.integers(1, 4), st.integers(0, 2**31))
def test_cayley_hamilton(n, seed):
    rng = random.Random(seed)
    for field in (QQ, FP):
        a = field.array([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        cp = la.charpoly(field, a)
        assert len(cp) == n + 1 and cp[-1] == 1
        assert not np.any(la.poly_eval_matrix(field, cp, a) != 0)

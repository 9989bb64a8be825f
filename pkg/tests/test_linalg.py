import numpy as np
import pytest
from hypothesis import given, strategies as st

from phantoms.linalg import Field, kron

F101 = Field(101)
Q = Field(None)


@st.composite
def matrices(draw, max_side=6):
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    seed = draw(st.integers(0, 2**16))
    return F101.random(np.random.default_rng(seed), (r, c))


@given(matrices())
def test_rank_nullity(a):
    n = F101.nullspace(a)
    assert F101.rank(a) + n.shape[1] == a.shape[1]
    assert F101.is_zero(F101.matmul(a, n))


@given(matrices())
def test_solve_recovers_a_solution(a):
    x = F101.random(np.random.default_rng(1), (a.shape[1], 2))
    b = F101.matmul(a, x)
    y = F101.solve(a, b)
    assert np.array_equal(F101.matmul(a, y), b)


def test_solve_inconsistent_raises():
    a = F101.array([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        F101.solve(a, F101.array([[0], [1]]))


def test_inverse_mod_p():
    for c in range(1, 101):
        assert F101.scalar(c * F101.inverse(c)) == 1


def test_rational_field_rank():
    a = Q.array([[1, 2], [2, 4]])
    assert Q.rank(a) == 1
    assert Q.is_invertible(Q.array([[1, 2], [3, 4]]))


def test_kron_shape():
    a, b = F101.eye(2), F101.array([[1, 2, 3]])
    assert kron(F101, a, b).shape == (2, 6)

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import matrices, small_rationals
from mackeylab.qlinalg import (
    RationalMatrix as M,
    complement_indices,
    image_basis,
    kernel_basis,
    rank,
    rref,
    solve,
)


def test_rref_rank_one():
    red, piv = rref(M([[1, 2], [2, 4]]))
    assert red == M([[1, 2], [0, 0]])
    assert piv == [0]


def test_rref_identity():
    red, piv = rref(M.identity(3))
    assert red == M.identity(3)
    assert piv == [0, 1, 2]


def test_rref_swap():
    # hand reduction: swap rows
    red, piv = rref(M([[0, 1], [1, 0]]))
    assert red == M([[1, 0], [0, 1]])
    assert piv == [0, 1]


def test_rref_is_idempotent():
    red, piv = rref(M([[2, 4, 1], [1, 2, 0], [3, 6, 5]]))
    assert rref(red) == (red, piv)


def _proportional(v, w):
    return M([list(v), list(w)]).rank() == 1


def test_kernel_examples():
    (v,) = kernel_basis(M([[1, 1]]))
    assert _proportional(v, (1, -1))
    assert kernel_basis(M.identity(2)) == []
    (v,) = kernel_basis(M([[2, -1], [-4, 2]]))
    assert _proportional(v, (1, 2))


def test_image_examples():
    assert image_basis(M.zeros(2, 2)) == []
    (v,) = image_basis(M([[1, 2], [2, 4]]))
    assert _proportional(v, (1, 2))
    assert len(image_basis(M([[1, 0], [1, 1]]))) == 2


def test_solve_examples():
    assert solve(M.identity(2), (3, 5)) == (3, 5)
    x = solve(M([[1, 1]]), (2,))
    assert x[0] + x[1] == 2
    assert solve(M([[2]]), (1,)) == (Fraction(1, 2),)
    assert solve(M([[1, 1], [1, 1]]), (1, 2)) is None


def test_solve_rejects_wrong_length():
    with pytest.raises(ValueError):
        solve(M.identity(2), (1,))


def test_no_floats():
    with pytest.raises(TypeError):
        M([[0.5]])


def test_zero_sized_shapes():
    z = M.zeros(3, 0)
    assert z.shape == (3, 0)
    assert (M.zeros(2, 3) @ z).shape == (2, 0)
    assert kernel_basis(M.zeros(0, 2)) == [(1, 0), (0, 1)]
    assert solve(z, (0, 0, 0)) == ()
    assert solve(z, (0, 1, 0)) is None


def test_big_integers_stay_exact():
    big = 10 ** 40 + 7
    red, _ = rref(M([[big, 1], [1, Fraction(1, big)]]))
    assert red == M([[1, Fraction(1, big)], [0, 0]])


def test_complement_indices():
    assert complement_indices(M([[1], [1]], (2, 1))) == [0]
    assert complement_indices(M([[0], [1]], (2, 1))) == [0]
    assert complement_indices(M([[1], [0]], (2, 1))) == [1]
    assert complement_indices(M.zeros(3, 0)) == [0, 1, 2]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.transpose())


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    ker = kernel_basis(m)
    assert m.ncols == rank(m) + len(ker)
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    assert len(image_basis(m)) == rank(m)


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=4, max_cols=4), st.data())
def test_solve_round_trip(m, data):
    x = data.draw(st.lists(small_rationals, min_size=m.ncols, max_size=m.ncols))
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None
    assert m.apply(y) == b

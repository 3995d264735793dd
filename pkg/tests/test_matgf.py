import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hyperlrc.errors import ParameterError, WorkCapExceeded
from hyperlrc.galois import field_new
from hyperlrc.matgf import (EchelonBasis, MatrixGF, WorkCounter, all_subsets_independent,
                            block_diag, columns_independent, find_dependent_columns, hstack,
                            nullspace, rank, rref, solve, vandermonde, vstack)


def brute_rank(m: MatrixGF) -> int:
    """Rank from the size of the row space, by enumerating all combinations."""
    q = m.field.q
    span = set()
    for coeffs in itertools.product(range(q), repeat=m.rows):
        v = tuple(sum(c * m.data[i][j] for i, c in enumerate(coeffs)) % q for j in range(m.cols))
        span.add(v)
    r = 0
    while q ** r < len(span):
        r += 1
    return r


def matrices(q=5, max_rows=3, max_cols=4):
    f = field_new(q)
    return st.integers(0, max_rows).flatmap(lambda r: st.integers(0, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, q - 1), min_size=c, max_size=c),
                           min_size=r, max_size=r).map(lambda d: MatrixGF(f, d, c))))


def test_vandermonde_examples(gf7):
    assert vandermonde(gf7, [1, 2, 4], 0, 3).data == ((1, 1, 1), (1, 2, 4), (1, 4, 2))
    assert vandermonde(gf7, [0, 3], 0, 2).data == ((1, 1), (0, 3))
    assert vandermonde(gf7, [1, 2], 0, 2, scale=[5, 6]).data == ((5, 6), (5, 5))


def test_vandermonde_errors(gf7):
    with pytest.raises(ParameterError):
        vandermonde(gf7, [1, 1], 0, 2)
    with pytest.raises(ParameterError):
        vandermonde(gf7, [1, 2], 0, 2, scale=[1])


def test_rank_examples(gf7):
    assert rank(MatrixGF.identity(gf7, 3)) == 3
    assert rank(MatrixGF.zeros(gf7, 2, 4)) == 0
    assert rank(vandermonde(gf7, [1, 2, 4], 0, 3)) == 3
    assert rank(MatrixGF.zeros(gf7, 0, 0)) == 0


def test_solve_examples(gf7):
    x, ker = solve(MatrixGF.identity(gf7, 3), [4, 5, 6])
    assert x == [4, 5, 6] and ker == []
    assert solve(MatrixGF(gf7, [[1, 1], [2, 2]]), [1, 3]) is None
    x, ker = solve(MatrixGF(gf7, [[1, 1]]), [3])
    assert x == [3, 0]
    assert len(ker) == 1
    # kernel spans (1, 6): proportional vectors
    k0 = ker[0]
    assert (k0[0] * 6 - k0[1]) % 7 == 0 and any(k0)


def test_solve_dimension_mismatch(gf7):
    with pytest.raises(ParameterError):
        solve(MatrixGF.identity(gf7, 2), [1])


def test_columns_independent_examples(gf7, code_a):
    m = MatrixGF(gf7, [[0, 1], [0, 2]])
    assert columns_independent(m, [])
    assert not columns_independent(m, [0])
    H = code_a.parity_check
    assert all(columns_independent(H, s) for s in itertools.combinations(range(10), 4))
    with pytest.raises(ParameterError):
        columns_independent(m, [0, 0])
    with pytest.raises(ParameterError):
        columns_independent(m, [2])


def test_empty_matrix_is_legal(gf7):
    m = MatrixGF(gf7, [], 0)
    assert m.shape == (0, 0)
    e = MatrixGF.zeros(gf7, 3, 0)
    assert rank(e) == 0 and nullspace(e) == []


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_brute_force_and_transpose(m):
    r = rank(m)
    assert r == brute_rank(m) == rank(m.transpose())
    assert len(rref(m)[1]) == r
    assert len(nullspace(m)) == m.cols - r


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_solve_witness_and_kernel(m, seedvec):
    f = m.field
    if m.cols == 0:
        return
    x0 = seedvec[:m.cols] + [0] * (m.cols - len(seedvec))
    rhs = m.apply(x0)  # guaranteed consistent
    x, ker = solve(m, rhs)
    assert m.apply(x) == rhs
    for k in ker:
        assert not any(m.apply(k))
    assert len(ker) == m.cols - rank(m)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=1, max_size=6, unique=True))
def test_square_vandermonde_full_rank(points):
    f = field_new(13)
    assert rank(vandermonde(f, points, 0, len(points))) == len(points)


def test_stacking(gf7):
    a = MatrixGF(gf7, [[1, 2]])
    b = MatrixGF(gf7, [[3]])
    assert hstack([a, b]).data == ((1, 2, 3),)
    assert vstack([a, a]).data == ((1, 2), (1, 2))
    assert block_diag([a, b]).data == ((1, 2, 0), (0, 0, 3))
    assert (a @ MatrixGF(gf7, [[1], [1]])).data == ((3,),)


def test_json_round_trip():
    f = field_new(3, 2)
    m = MatrixGF(f, [[0, 8, 3], [1, 2, 7]])
    obj = m.to_json()
    assert obj["entries"] == [0, 8, 3, 1, 2, 7] and obj["q"] == 9
    assert MatrixGF.from_json(obj) == m
    assert m.to_text().splitlines() == ["0 8 3", "1 2 7"]


def test_echelon_push_pop(gf7):
    b = EchelonBasis(gf7)
    assert b.push([1, 2, 3])
    assert not b.push([2, 4, 6])
    assert b.push([0, 1, 0])
    b.pop()
    assert b.push([0, 1, 0])
    assert len(b) == 2


def test_find_dependent_columns(gf7):
    m = MatrixGF(gf7, [[1, 0, 1, 0], [0, 1, 1, 1]])
    assert find_dependent_columns(m, 1) is None
    assert find_dependent_columns(m, 2) == [1, 3]
    assert not all_subsets_independent(m, 3)
    with pytest.raises(WorkCapExceeded):
        find_dependent_columns(m, 2, WorkCounter(2))


def test_element_out_of_range(gf7):
    with pytest.raises(ParameterError):
        MatrixGF(gf7, [[7]])

import dataclasses
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hyperlrc.construct import construct_a, construct_a_repeated, construct_b
from hyperlrc.errors import ParameterError, WorkCapExceeded
from hyperlrc.galois import field_new
from hyperlrc.hypergraph import FreenessSpec, check_generating_system, greedy_sparse
from hyperlrc.matgf import MatrixGF, columns_independent
from hyperlrc.verify import (ErasurePattern, applicable_bound, distance_search, lemma_nk,
                             min_distance, meets_recovery_conditions, recoverable,
                             singleton_bound, singleton_report, verify_locality)


def brute_distance(H: MatrixGF) -> int:
    """Smallest weight of a nonzero vector in the kernel, by plain enumeration."""
    q = H.field.q
    best = None
    for v in itertools.product(range(q), repeat=H.cols):
        if any(v) and not any(H.apply(list(v))):
            w = sum(1 for x in v if x)
            best = w if best is None else min(best, w)
    return best


def test_small_codes():
    f2 = field_new(2)
    assert min_distance(MatrixGF(f2, [[1, 1, 0], [0, 1, 1]])) == 3
    f7 = field_new(7)
    assert min_distance(MatrixGF(f7, [[1, 1, 1, 1]])) == 2


def test_fixture_a_both_methods(code_a):
    a = distance_search(code_a, "codewords")
    b = distance_search(code_a, "columns")
    assert a.d == b.d == 5
    for res in (a, b):
        assert not columns_independent(code_a.parity_check, res.support)
        assert len(res.support) == 5


def test_dimension_zero_rejected(gf7):
    with pytest.raises(ParameterError):
        min_distance(MatrixGF.identity(gf7, 3))
    c = construct_a_repeated(gf7, range(3), 1, 2, 2, 4)
    assert c.k == 0
    with pytest.raises(ParameterError):
        min_distance(c)


def test_caps(code_a3):
    with pytest.raises(WorkCapExceeded):
        distance_search(code_a3, "codewords", cap_codewords=1000)
    with pytest.raises(WorkCapExceeded):
        distance_search(code_a3, "columns", cap_subsets=100)
    with pytest.raises(WorkCapExceeded):
        distance_search(code_a3, "auto", cap_codewords=1000, cap_subsets=100)
    with pytest.raises(ParameterError):
        distance_search(code_a3, "guess")


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.integers(r + 1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n),
                       min_size=r, max_size=r))))
def test_methods_agree_with_brute_force(rows):
    f = field_new(3)
    H = MatrixGF(f, rows)
    d0 = brute_distance(H)
    if d0 is None:
        return
    assert distance_search(H, "codewords").d == d0
    assert distance_search(H, "columns").d == d0


def test_extension_field_methods_agree():
    f = field_new(2, 3)
    c = construct_a(f, [range(1, 5), range(4, 8)], 3, 2, 4)
    assert distance_search(c, "codewords").d == distance_search(c, "columns").d


def test_locality(code_a, code_a3, code_b):
    assert verify_locality(code_a) and verify_locality(code_a3) and verify_locality(code_b)
    f = field_new(13)

    def powers(pts, first, count):
        return [[f.pow(x, first + i) for x in pts] for i in range(count)]

    # delta=3 layout whose first block repeats the generator 0
    b0, b1 = [0, 0, 2, 3, 4, 5, 6], list(range(6, 13))
    rows = ([r + [0] * 7 for r in powers(b0, 0, 2)] + [[0] * 7 + r for r in powers(b1, 0, 2)]
            + [x + y for x, y in zip(powers(b0, 2, 4), powers(b1, 2, 4))])
    sab = dataclasses.replace(code_a3, parity_check=MatrixGF(f, rows))
    assert not verify_locality(sab)
    assert not verify_locality(code_a, r=3)


def test_singleton_examples(code_a, code_a3, gf13):
    rep = singleton_report(code_a, 5)
    assert (rep.bound_used, rep.d_bound, rep.defect, rep.optimal) == (1, 5, 0, True)
    rep = singleton_report(code_a3, 7)
    assert (rep.n, rep.k, rep.bound_used, rep.defect) == (14, 6, 1, 0)
    assert singleton_bound(12, 6, 3, 2, 3) == 5 and applicable_bound(12, 3, 2, 5) == 3
    c = construct_a(gf13, [[0, 1, 2, 3], [3, 4, 5, 6], [6, 7, 8, 0]], 3, 2, 5)
    d = min_distance(c)
    rep = singleton_report(c, d)
    assert (c.n, c.k, d, rep.bound_used, rep.defect) == (12, 6, 5, 3, 0)


def test_lemma_examples():
    r = lemma_nk(12, 2, 2, 5)
    assert (r.nk, r.k, r.consistent) == (6, 6, True)
    r = lemma_nk(10, 3, 3, 8)
    assert (r.nk, r.consistent) == (7, True)
    r = lemma_nk(12, 2, 2, 4)
    assert (r.nk, r.consistent) == (6, False)
    with pytest.raises(ParameterError):
        lemma_nk(11, 2, 2, 5)


def test_recoverable_examples(code_a, code_b):
    assert recoverable(code_a, ErasurePattern.of([[2], []]))
    assert not recoverable(code_a, ErasurePattern.of([range(5), []]))
    assert recoverable(code_b, [0])
    with pytest.raises(ParameterError):
        recoverable(code_a, ErasurePattern.of([[9], []]))
    with pytest.raises(ParameterError):
        recoverable(code_a, ErasurePattern.of([[], []], [10]))


def test_recovery_predicate_examples(code_b, code_a):
    empty = ErasurePattern.of([[0], [4], [7]], [10, 11, 12])
    assert meets_recovery_conditions(code_b, empty)
    p = ErasurePattern.of([[0, 1, 2, 3], [], []], [10])
    assert not meets_recovery_conditions(code_b, p)
    p = ErasurePattern.of([[0, 1], [3, 4], []])
    assert meets_recovery_conditions(code_b, p) and recoverable(code_b, p)
    with pytest.raises(ParameterError):
        meets_recovery_conditions(code_a, ErasurePattern.of([[], []]))


@settings(max_examples=200, deadline=None)
@given(st.sets(st.integers(0, 13), max_size=7))
def test_recovery_predicate_soundness_sampled(code_b, cols):
    p = ErasurePattern.from_columns(code_b, cols)
    assert p.columns(code_b) == sorted(cols)
    if meets_recovery_conditions(code_b, p):
        assert recoverable(code_b, p)


@pytest.mark.parametrize("seed", range(3))
def test_generating_system_condition_gives_distance(seed):
    f = field_new(11)
    delta, mu, R = 2, 2, 4
    hg = greedy_sparse(range(11), R, FreenessSpec(delta, mu), seed=seed)
    groups = hg.edges[:3]
    r, d = R - delta + 1, 5
    assert check_generating_system(groups, r, delta, mu).passed
    c = construct_a(f, groups, r, delta, d)
    H = c.parity_check
    assert all(columns_independent(H, s) for s in itertools.combinations(range(c.n), d - 1))


@pytest.mark.parametrize("delta,d", [(2, 3), (2, 4), (3, 4), (3, 5), (3, 6)])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_repeated_group_regime_is_optimal(delta, d, m):
    f = field_new(2, 3)
    c = construct_a_repeated(f, range(2 * delta - 1), m, delta, delta, d)
    if m == 1 and d == 2 * delta:
        assert c.k == 0  # R = d-1 independent rows leave no codeword
        return
    dm = min_distance(c)
    assert dm == d and singleton_report(c, dm).optimal


@pytest.mark.parametrize("h,v", [(1, 2), (2, 2), (2, 1), (3, 1)])
def test_identical_groups_correct_h_plus_delta_minus_one(h, v):
    f = field_new(11)
    r, delta, l = 2, 3, 2
    G = [0, 1, 2, 3]
    S = list(range(11 - h, 11))
    c = construct_b(f, [G] * l + [G[:v + delta - 1]], S, r, delta, v, h)
    w = h + delta - 1
    assert all(columns_independent(c.parity_check, s) for s in itertools.combinations(range(c.n), w))

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hyperlrc.codec import decode_erasures, encode, generator_matrix, local_repair, syndrome
from hyperlrc.errors import DecodeFailure, ParameterError
from hyperlrc.galois import field_new
from hyperlrc.matgf import MatrixGF, rank
from hyperlrc.verify import distance_search


class Bare:
    def __init__(self, H):
        self.parity_check = H


def test_repetition_generator():
    f2 = field_new(2)
    gen = generator_matrix(Bare(MatrixGF(f2, [[1, 1, 0], [0, 1, 1]])))
    assert gen.matrix.data == ((1, 1, 1),) and gen.info_set == (0,)


def test_fixture_generator(code_a):
    gen = generator_matrix(code_a)
    G, H = gen.matrix, code_a.parity_check
    assert G.shape == (5, 10) and rank(G) == 5
    assert (G @ H.transpose()).is_zero()
    for i, c in enumerate(gen.info_set):
        assert G.column(c) == [int(j == i) for j in range(5)]
    # leftmost information set
    assert gen.info_set == tuple(sorted(gen.info_set))


def test_dimension_zero_generator(gf7):
    with pytest.raises(ParameterError):
        generator_matrix(Bare(MatrixGF.identity(gf7, 2)))


def test_encode_examples(code_a):
    gen = generator_matrix(code_a)
    assert encode(code_a, [0] * 5) == [0] * 10
    assert encode(code_a, [1, 0, 0, 0, 0]) == list(gen.matrix.row(0))
    w = encode(code_a, [1, 2, 3, 4, 5])
    assert not any(syndrome(code_a, w))
    assert [w[c] for c in gen.info_set] == [1, 2, 3, 4, 5]
    with pytest.raises(ParameterError):
        encode(code_a, [1, 2])


def test_decode_no_erasures(code_a):
    w = encode(code_a, [1, 2, 3, 4, 5])
    assert decode_erasures(code_a, w) == w
    bad = list(w)
    bad[0] = (bad[0] + 1) % 11
    with pytest.raises(DecodeFailure) as exc:
        decode_erasures(code_a, bad)
    assert exc.value.reason == "corrupt"


def test_decode_corrupt_with_erasures(code_a):
    w = encode(code_a, [1, 2, 3, 4, 5])
    bad = list(w)
    bad[9] = (bad[9] + 1) % 11
    bad[0] = None
    with pytest.raises(DecodeFailure) as exc:
        decode_erasures(code_a, bad)
    assert exc.value.reason == "corrupt"


def test_decode_ambiguous_on_minimum_weight_support(code_a, code_b):
    for code in (code_a, code_b):
        res = distance_search(code)
        w = encode(code, list(range(1, code.k + 1)))
        for c in res.support:
            w[c] = None
        with pytest.raises(DecodeFailure) as exc:
            decode_erasures(code, w)
        assert exc.value.reason == "ambiguous"


def test_round_trip_code_a3(code_a3):
    rng = random.Random(7)
    for _ in range(20):
        msg = [rng.randrange(13) for _ in range(code_a3.k)]
        w = encode(code_a3, msg)
        for s in rng.sample(list(itertools.combinations(range(14), 6)), 5):
            e = list(w)
            for c in s:
                e[c] = None
            assert decode_erasures(code_a3, e) == w


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=8, max_size=8),
       st.sets(st.integers(0, 13), max_size=4))
def test_round_trip_code_b(code_b, msg, erased):
    w = encode(code_b, msg)
    e = [None if i in erased else x for i, x in enumerate(w)]
    assert decode_erasures(code_b, e) == w


def test_local_repair_single_parity(code_a):
    w = encode(code_a, [3, 1, 4, 1, 5])
    e = list(w)
    e[7] = None
    e[0] = None  # outside the block, ignored
    res = local_repair(code_a, e, 1)
    assert res.values == {7: w[7]}
    assert res.read == (5, 6, 8, 9)


def test_local_repair_two_erasures(code_a3):
    w = encode(code_a3, [1, 2, 3, 4, 5, 6])
    for s in itertools.combinations(range(7, 14), 2):
        e = [None if i in s else x for i, x in enumerate(w)]
        res = local_repair(code_a3, e, 1)
        assert res.values == {i: w[i] for i in s}
        assert all(7 <= i < 14 for i in res.read) and len(res.read) == 5


def test_local_repair_too_many(code_a3):
    w = encode(code_a3, [1, 2, 3, 4, 5, 6])
    e = list(w)
    for i in (0, 1, 2):
        e[i] = None
    with pytest.raises(ParameterError):
        local_repair(code_a3, e, 0)
    assert decode_erasures(code_a3, e) == w


def test_local_repair_no_erasures(code_a):
    w = encode(code_a, [1, 1, 1, 1, 1])
    assert local_repair(code_a, w, 0).values == {}
    with pytest.raises(ParameterError):
        local_repair(code_a, w, 2)

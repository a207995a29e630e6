import random

import pytest

from sturmlab import (
    DigitVector,
    basis_value,
    congruent,
    digit_at,
    from_digits,
    get_basis,
    normalize,
    to_digits,
    uniqueness_oracle,
)


def test_basis_seeds_and_recurrence():
    # f_{-2} = 1 - k, f_{-1} = 1, f_0 = 1, then f_{n+2} = k f_{n+1} + f_n.
    assert basis_value(1, -2) == 0
    assert basis_value(3, -2) == -2
    for k in (1, 2, 3, 4):
        assert basis_value(k, -1) == 1
        assert basis_value(k, 0) == 1
        assert basis_value(k, 1) == k + 1
        for n in range(0, 20):
            assert basis_value(k, n + 2) == k * basis_value(k, n + 1) + basis_value(k, n)


def test_basis_known_rows():
    assert [basis_value(1, n) for n in range(8)] == [1, 2, 3, 5, 8, 13, 21, 34]
    assert [basis_value(2, n) for n in range(7)] == [1, 3, 7, 17, 41, 99, 239]
    assert [basis_value(3, n) for n in range(6)] == [1, 4, 13, 43, 142, 469]


def test_largest_index_leq():
    basis = get_basis(2)
    assert basis.largest_index_leq(0) == -1
    assert basis.largest_index_leq(1) == 0
    assert basis.largest_index_leq(2) == 0
    assert basis.largest_index_leq(3) == 1
    assert basis.largest_index_leq(7) == 2
    assert basis.largest_index_leq(16) == 2
    assert basis.largest_index_leq(17) == 3


def test_digit_vector_basics():
    d = DigitVector([0, 2, 1, 0, 0])
    assert d.digits == (0, 2, 1)
    assert d.digit(1) == 2
    assert d.digit(10) == 0
    assert d == [0, 2, 1]
    assert d == DigitVector((0, 2, 1, 0))
    assert DigitVector([]) == DigitVector([0, 0])
    with pytest.raises(ValueError):
        DigitVector([1, -1])
    with pytest.raises(ValueError):
        d.digit(-1)


def test_digit_vector_csv_round_trip():
    d = DigitVector([1, 0, 2])
    assert d.to_csv() == "1,0,2"
    assert DigitVector.from_csv("1,0,2") == d
    assert DigitVector.from_csv("") == DigitVector([])


def test_regularity_predicate():
    assert DigitVector([1, 0, 1]).is_regular(1)
    assert not DigitVector([1, 1]).is_regular(1)        # digit k over nonzero
    assert not DigitVector([0, 2]).is_regular(1)        # digit above k
    assert DigitVector([0, 2, 0, 2]).is_regular(2)
    assert not DigitVector([1, 2]).is_regular(2)
    assert DigitVector([2, 1, 0, 2]).is_regular(2)


def test_to_digits_examples():
    # 12 = f_4 + f_2 + f_0 = 8 + 3 + 1 for k=1.
    assert to_digits(1, 12) == [1, 0, 1, 0, 1]
    assert to_digits(1, 0) == []
    # 16 = 2*f_2 + 2*f_0 = 14 + 2 for k=2.
    assert to_digits(2, 16) == [2, 0, 2]


def test_round_trip_dense_range():
    for k in (1, 2, 3, 4):
        for n in range(20000):
            d = to_digits(k, n)
            assert d.is_regular(k)
            assert from_digits(k, d) == n


def test_round_trip_sparse_large():
    rng = random.Random(7)
    for k in (1, 2, 3):
        for _ in range(200):
            n = rng.randrange(10**12)
            assert from_digits(k, to_digits(k, n)) == n


def test_to_digits_greedy_is_msf():
    """The greedy expansion takes the largest basis element first."""
    for k in (1, 2, 3):
        basis = get_basis(k)
        for n in (1, 5, 29, 104, 9999):
            d = to_digits(k, n)
            if n > 0:
                top = basis.largest_index_leq(n)
                assert len(d) == top + 1
                assert d.digit(top) >= 1


def test_uniqueness_oracle_small():
    for k in (1, 2, 3, 4):
        assert uniqueness_oracle(k, 500)


def test_uniqueness_oracle_bound_handling():
    assert uniqueness_oracle(1, 1)
    assert uniqueness_oracle(4, 2)
    with pytest.raises(ValueError):
        uniqueness_oracle(1, 0)


def test_from_digits_rejects_negative():
    with pytest.raises(ValueError):
        from_digits(1, [1, -1])


def test_digit_at_and_congruence():
    assert digit_at(1, 12, 0) == 1
    assert digit_at(1, 12, 1) == 0
    assert digit_at(1, 12, 4) == 1
    assert digit_at(1, 12, 9) == 0
    # 12 = (1,0,1,0,1), 4 = (1,0,1): first disagreement at position 4.
    assert congruent(1, 12, 4, 4)
    assert not congruent(1, 12, 4, 5)
    assert congruent(2, 0, 0, 10)


def test_normalize_identity_on_regular():
    rng = random.Random(11)
    for _ in range(500):
        k = rng.randint(1, 4)
        n = rng.randrange(10**6)
        d = to_digits(k, n)
        assert normalize(k, list(d.digits)) == d


def test_normalize_rewrites_violations():
    # k=1: (0,1,1) means f_1 + f_2 = 2 + 3 = 5 = f_3, i.e. (0,0,0,1).
    assert normalize(1, [0, 1, 1]) == [0, 0, 0, 1]
    # k=2: (1,2,0) is fine, but (0,1,2) = 3 + 14 = value 17 = f_3.
    assert normalize(2, [0, 1, 2]) == [0, 0, 0, 1]


def test_normalize_properties_random():
    rng = random.Random(2024)
    for _ in range(10000):
        k = rng.randint(1, 4)
        raw = [rng.randint(0, k) for _ in range(rng.randint(0, 24))]
        nd = normalize(k, raw)
        # Value-preserving and regular.
        assert from_digits(k, nd) == from_digits(k, raw)
        assert nd.is_regular(k)
        # Idempotent.
        assert normalize(k, list(nd.digits)) == nd
        # Low-index stability: digits below the lowest violation survive.
        viol = [i for i in range(len(raw) - 1) if raw[i + 1] == k and raw[i] != 0]
        if viol:
            vmin = min(viol)
            assert all(nd.digit(i) == raw[i] for i in range(vmin))
        else:
            assert nd == DigitVector(raw)


def test_normalize_rejects_out_of_range():
    with pytest.raises(ValueError):
        normalize(1, [2, 0])
    with pytest.raises(ValueError):
        normalize(2, [0, -1])

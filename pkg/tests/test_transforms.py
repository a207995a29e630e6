import warnings
from fractions import Fraction

import pytest

from sturmlab import (
    GeneralWord,
    IndecisiveEnclosureError,
    MissingCodingError,
    NonSturmianError,
    NonSturmianWarning,
    Word,
    affine_decompose,
    block_determinism,
    default_pair_coding,
    difference,
    difference_by_binomial,
    fixed_point_prefix,
    fixed_point_series,
    floor_golden,
    rotation_sum_relation,
    shift_product,
    value_affine_relation,
)


def test_difference_basic():
    assert difference(Word("0110")) == Word("101")
    assert difference(Word("0110"), 0) == Word("0110")
    assert difference(Word("01100"), 2) == Word("111")


def test_difference_known_prefix():
    w = fixed_point_prefix(1, 13)
    assert difference(w, 2).to_string() == "01100011011"


def test_difference_validates():
    with pytest.raises(ValueError):
        difference(Word("01"), -1)
    with pytest.raises(ValueError):
        difference(Word("01"), 2)
    with pytest.raises(ValueError):
        difference(GeneralWord("012"), 1)


def test_binomial_oracle_agrees():
    u = fixed_point_prefix(2, 3000)
    for order in range(0, 9):
        assert difference(u, order) == difference_by_binomial(u, order)


def test_shift_product_default_coding():
    # Pairs of 01001 under (x, y) -> 2x + y: 01, 10, 00, 01.
    v = shift_product(fixed_point_prefix(1, 5))
    assert v.to_string() == "1201"
    assert v.alphabet_size == 4


def test_shift_product_custom_coding():
    coding = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 2}
    v = shift_product(Word("0110"), coding)
    assert list(v) == [1, 2, 1]


def test_shift_product_missing_block():
    with pytest.raises(MissingCodingError):
        shift_product(Word("0011"), {(0, 0): 0, (0, 1): 1, (1, 0): 2})


def test_affine_decompose_default_coding():
    dec = affine_decompose(fixed_point_prefix(1, 200), default_pair_coding())
    assert (dec.a0, dec.a1, dec.a2) == (2, 1, 0)
    assert dec.blocks_present == ((0, 0), (0, 1), (1, 0))
    assert not dec.eventually_periodic_capable


def test_affine_decompose_constant_coding():
    coding = {(x, y): 5 for x in (0, 1) for y in (0, 1)}
    dec = affine_decompose(fixed_point_prefix(2, 200), coding)
    assert (dec.a0, dec.a1, dec.a2) == (0, 0, 5)
    assert dec.eventually_periodic_capable


def test_affine_decompose_needs_three_blocks():
    with pytest.raises(NonSturmianError):
        affine_decompose(Word("00000"), default_pair_coding())
    with pytest.raises(NonSturmianError):
        # Four distinct blocks cannot occur in these words; force them.
        affine_decompose(Word("001101"), default_pair_coding())


def test_affine_identity_certified_tight():
    for k in (1, 2):
        for b in (2, 3):
            u = fixed_point_prefix(k, 201)
            rep = value_affine_relation(u, default_pair_coding(), b, 200)
            assert rep.consistent
            assert rep.gap_bound < Fraction(1, 2**195)
            assert (rep.a0, rep.a1, rep.a2) == (2, 1, 0)


def test_affine_identity_numeric_sanity():
    """Evaluate both sides in floating point at moderate depth."""
    u = fixed_point_prefix(1, 61)
    rep = value_affine_relation(u, default_pair_coding(), 2, 60)
    xu = float(fixed_point_series(1, 2, 60).value)
    xv = float(rep.left.value)
    rhs = float(rep.a0) * xu + float(rep.a1) * 2 * (xu - u[0]) + float(rep.a2) * 2
    assert xv == pytest.approx(rhs, abs=1e-14)


def test_value_relation_rejects_non_affine_coding():
    # XOR coding is affine on three blocks but not on all four.
    xor = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0}
    sturmian = fixed_point_prefix(1, 101)
    rep = value_affine_relation(sturmian, xor, 2, 100)
    assert rep.consistent and (rep.a0, rep.a1, rep.a2) == (1, 1, 0)
    four_blocks = Word("0011010" * 20)
    with pytest.raises(NonSturmianError):
        value_affine_relation(four_blocks, xor, 2, 100)


def test_value_relation_validates():
    u = fixed_point_prefix(1, 50)
    with pytest.raises(ValueError):
        value_affine_relation(u, default_pair_coding(), 1, 10)
    with pytest.raises(ValueError):
        value_affine_relation(u, default_pair_coding(), 2, 0)
    with pytest.raises(ValueError):
        value_affine_relation(u, default_pair_coding(), 2, 50)


def test_block_determinism_counts():
    u = fixed_point_prefix(1, 10000)
    for order in (1, 2, 3, 5, 8):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            count, table = block_determinism(u, order)
        assert count == order + 2
        assert all(len(block) == order + 1 for block in table)


def test_block_determinism_warns_on_short_prefix():
    # An all-zero word has a single block, far from order + 2.
    with pytest.warns(NonSturmianWarning):
        count, _ = block_determinism(Word("0" * 50), 2)
    assert count == 1


def test_block_table_consistent_with_difference():
    u = fixed_point_prefix(2, 2000)
    order = 3
    _count, table = block_determinism(u, order)
    d = difference(u, order)
    sym = u.symbols
    for i in range(0, 1500, 7):
        block = Word(sym[i : i + order + 1])
        assert table[block] == d[i]


def test_floor_golden():
    phi = (1 + 5**0.5) / 2
    for n in range(2000):
        assert floor_golden(n) == int(n * phi)
    with pytest.raises(ValueError):
        floor_golden(-1)


def test_floor_golden_large():
    # Beyond float precision: 10^17 * phi needs exact integer arithmetic.
    n = 10**17
    v = floor_golden(n)
    assert v == 161803398874989484


def test_rotation_sum_decisive_binary():
    rep = rotation_sum_relation(2, 400)
    assert rep.matching == "index_shifted"
    assert rep.shifted_matches and not rep.direct_matches
    assert rep.shifted_pair == (Fraction(-1, 2), Fraction(1))
    assert rep.residual_bound < Fraction(1, 2**390)
    # S is about 0.70980, the value about 0.58039.
    assert float(rep.sum_lo) == pytest.approx(0.7098034, abs=1e-6)
    assert float(rep.value_lo) == pytest.approx(0.5803931, abs=1e-6)


def test_rotation_sum_decisive_other_bases():
    for b in (3, 10):
        rep = rotation_sum_relation(b, 120)
        assert rep.matching == "index_shifted"
        assert rep.shifted_pair == (Fraction(-(b - 1), b), Fraction(1))


def test_rotation_sum_validates():
    with pytest.raises(ValueError):
        rotation_sum_relation(1, 400)
    with pytest.raises(ValueError):
        rotation_sum_relation(2, 10)

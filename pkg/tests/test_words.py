import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from artifact.words import (BitSeq, Word, binom_mod, bit_reverse, bitop, delta, exp_mod, inv_odd,
                            ord2_wt2, rational_mod, rational_to_bits, reverse_bits)


def w8(v):
    return Word(v, 8)


def test_xor_and_small_values():
    assert bitop("xor", w8(1), w8(3)).value == 2
    assert bitop("and", w8(1), w8(3)).value == 1


def test_xor_zero_identity_exhaustive():
    assert all(bitop("xor", w8(u), w8(0)).value == u for u in range(256))


def test_bitop_width_mismatch_and_arity():
    with pytest.raises(ValueError):
        bitop("xor", Word(1, 8), Word(1, 9))
    with pytest.raises(ValueError):
        bitop("neg", w8(1), w8(2))


def test_logic_identities_exhaustive_width8():
    for u in range(256):
        for v in range(256):
            x = bitop("xor", w8(u), w8(v)).value
            a = bitop("and", w8(u), w8(v)).value
            o = bitop("or", w8(u), w8(v)).value
            assert x == u + v - 2 * a
            assert o == u + v - a
        assert (bitop("neg", w8(u)).value + u) % 256 == 255


def _base4_digits(x):
    out = []
    while x:
        out.append(x % 4)
        x //= 4
    return out


def test_delta_digits():
    assert delta(0, 1, 7) == 1
    assert delta(1, 2, 7) == _base4_digits(7)[1] == 1
    assert all(delta(j, 1, 0) == 0 for j in range(100))


def test_bit_reverse_small():
    assert bit_reverse(4, 1, 7) == 14
    assert bit_reverse(2, 2, 7) == 13


def test_bit_reverse_rejects_bad_width():
    with pytest.raises(ValueError):
        bit_reverse(3, 2, Word(1, 5))


@pytest.mark.parametrize("s,t", [(s, t) for s in range(1, 13) for t in range(1, 13) if s * t <= 12])
def test_bit_reverse_involutive_permutation(s, t):
    img = [bit_reverse(s, t, x) for x in range(1 << (s * t))]
    assert sorted(img) == list(range(1 << (s * t)))
    assert all(bit_reverse(s, t, y) == x for x, y in enumerate(img))


def _factorial_valuation(i):
    f, v = math.factorial(i), 0
    while f % 2 == 0:
        f //= 2
        v += 1
    return v


def test_ord2_wt2():
    assert ord2_wt2(7) == (4, 3)
    assert 5040 == 2 ** 4 * 315
    assert ord2_wt2(0) == (0, 0)
    for k in range(21):
        assert ord2_wt2(1 << k)[0] == (1 << k) - 1
    for k in range(13):  # independent valuation of the factorial itself
        assert ord2_wt2(1 << k)[0] == _factorial_valuation(1 << k)


def test_binom_mod_values():
    assert all(binom_mod(x, 0, 8) == 1 for x in range(256))
    assert binom_mod(3, 2, 8) == 3


@pytest.mark.parametrize("a,b", [(a, b) for b in range(5) for a in range(b)])
def test_binom_low_bit_is_bit_product(a, b):
    for x in range(256):
        assert binom_mod(x, (1 << a) + (1 << b), 8) & 1 == delta(a, 1, x) * delta(b, 1, x)


def test_rational_to_bits_known_expansions():
    assert str(rational_to_bits(1, 3, 8)) == "11010101"
    assert str(rational_to_bits(-3, 1, 5)) == "10111"
    assert str(rational_to_bits(3, 1, 5)) == "11000"
    with pytest.raises(ValueError):
        rational_to_bits(1, 2, 4)


@given(st.integers(-10**6, 10**6), st.integers(0, 10**6), st.integers(1, 80))
def test_rational_bits_times_denominator(u, h, n):
    v = 2 * h + 1
    x = rational_to_bits(u, v, n).to_int()
    assert (x * v - u) % (1 << n) == 0
    assert x == rational_mod(u, v, n)


def test_bitseq_is_lsb_first():
    assert BitSeq.parse("0011").to_int() == 12
    assert Word.from_bits("0011").value == 12


@given(st.integers(1, 300).flatmap(lambda w: st.tuples(st.just(w), st.integers(0, (1 << w) - 1))))
def test_word_serialization_round_trip(wv):
    width, value = wv
    w = Word(value, width)
    assert len(w.hex()) == -(-width // 4)
    assert w.hex() == w.hex().lower()
    assert Word.from_hex(w.hex(), width) == w
    assert len(str(w.bits())) == width
    assert Word.from_bits(w.bits()) == w


def test_word_range_enforced():
    with pytest.raises(ValueError):
        Word(256, 8)


@given(st.integers(0, 2**64 - 1), st.integers(1, 64))
def test_inverse_and_power_fast_path_agree(x, n):
    x |= 1
    arr = np.array([x & ((1 << n) - 1)], dtype=np.uint64)
    y = inv_odd(x, n)
    assert (x * y) % (1 << n) == 1
    assert int(inv_odd(arr, n)[0]) == y
    assert int(exp_mod(3, arr, n)[0]) == exp_mod(3, x, n) == pow(3, x & ((1 << n) - 1), 1 << n)


def test_wide_inverse():
    x = (1 << 4000) + 12345
    assert (x * inv_odd(x, 4096)) % (1 << 4096) == 1


def test_reverse_bits_vector_matches_scalar():
    xs = np.arange(1 << 10, dtype=np.uint64)
    vec = reverse_bits(xs, 10)
    assert [int(v) for v in vec] == [reverse_bits(int(x), 10) for x in xs]

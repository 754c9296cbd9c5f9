import json
import random

import pytest

from artifact import analyze as A
from artifact import cipher as C
from artifact import expr as E
from artifact import verify as V
from artifact.words import Word, delta


def psi_oracle(params, x):
    """Evaluate each psi_j monomial by monomial from the variable lists."""
    out = 0
    for j, psi in enumerate(params.psis):
        b = sum(all(delta(v, 1, x) for v in mono) for mono in psi) % 2
        out |= b << j
    return out


def test_gen_params_shape_and_determinism():
    p = C.gen_params(8, 3, 16, 42)
    assert p.k == 3 and len(p.psis) == 3
    assert all(len(psi) == 16 and len(set(psi)) == 16 for psi in p.psis)
    assert C.gen_params(8, 3, 16, 42) == p


def test_distinct_seeds_differ():
    base = C.gen_params(8, 3, 16, 0)
    differ = sum(C.gen_params(8, 3, 16, s) != base for s in range(1, 101))
    assert differ == 100


def test_gen_params_caps():
    with pytest.raises(ValueError):
        C.gen_params(4, 1, 17, 0)
    with pytest.raises(ValueError):
        C.gen_params(2, 1, 5, 0)  # only 4 monomials exist


def test_params_validation_and_json():
    with pytest.raises(ValueError):
        C.CipherParams(4, 1, (((4,),),))
    p = C.gen_params(6, 2, 10, 5)
    assert C.CipherParams.from_dict(json.loads(p.to_json())) == p


def test_sampler_is_reproducible():
    a, b = C.CongruentialRng(9), C.CongruentialRng(9)
    assert [a.next32() for _ in range(10)] == [b.next32() for _ in range(10)]
    r = C.CongruentialRng(1)
    assert all(0 <= r.below(37) < 37 for _ in range(500))


@pytest.mark.parametrize("seed", range(5))
def test_law_bit_zero_and_formula(seed):
    p = C.gen_params(5, 3, 12, seed)
    for x in range(1 << p.width):
        y = C.f_F_eval(p, x)
        assert delta(0, 1, y) == 1 ^ delta(0, 1, x)
        assert y == ((x + 1) % (1 << p.width)) ^ (psi_oracle(p, x) << (p.n + 1))


def test_law_width_checked():
    p = C.gen_params(4, 2, 4, 0)
    with pytest.raises(ValueError):
        C.f_F_eval(p, Word(0, 8))
    with pytest.raises(ValueError):
        C.f_F_eval(p, 1 << 7)


@pytest.mark.parametrize("seed", range(4))
def test_law_is_transitive(seed):
    p = C.gen_params(6, 5, 20, seed)  # width 12
    law = C.f_F_table(p)
    for j in range(1, p.width + 1):
        assert V.transitive_mod(law, j).ok
    assert V.ergodic(law, "anf", width=p.width).result == "yes"


@pytest.mark.parametrize("seed", range(3))
def test_anf_criterion_exhaustive_width16(seed):
    p = C.gen_params(10, 5, 30, seed)
    assert V.ergodic(C.f_F_table(p), "anf", width=16).result == "yes"


def test_zero_polynomials_give_counter():
    p = C.CipherParams(4, 2, ((), ()))
    assert all(C.f_F_eval(p, x) == (x + 1) % 128 for x in range(128))


@pytest.mark.parametrize("seed", range(3))
def test_table_matches_scalar_law(seed):
    p = C.gen_params(6, 3, 15, seed)
    assert list(C.f_F_table(p).values) == [C.f_F_eval(p, x) for x in range(1 << p.width)]


def test_binomial_route_matches_table():
    p = C.gen_params(5, 2, 8, 3)
    assert list(E.table(C.f_F_expr(p), p.width)) == list(C.f_F_table(p).values)


def test_keystream_first_symbol_and_period():
    p = C.gen_params(6, 2, 12, 11)
    for z in range(64):
        assert C.keystream(p, z, 1)[0] == C.F(p, z) == psi_oracle(p, z)
    ys = C.keystream(p, 0, 1 << 10)
    assert A.min_period(ys) == 1 << 9
    census = A.residue_census(ys[: 1 << 9], 2)
    assert set(census.counts.values()) == {1 << 7}


def test_keystream_uniform_at_width14():
    p = C.gen_params(8, 5, 24, 2)
    ys = C.keystream(p, 7, 1 << 14)
    assert set(A.residue_census(ys, 5).counts.values()) == {1 << 9}


def test_key_range():
    p = C.gen_params(4, 2, 4, 0)
    with pytest.raises(ValueError):
        C.keystream(p, 16, 4)


def test_encrypt_round_trip():
    p = C.gen_params(8, 3, 16, 4)
    data = random.Random(1).randbytes(1024)
    ct = C.encrypt(p, 77, data)
    assert C.decrypt(p, 77, ct) == data
    assert C.encrypt(p, 77, b"") == b""
    ks = C.keystream_bits(p, 77, 8 * len(data))
    diff = [a ^ b for a, b in zip(C.unpack_bits(ct), C.unpack_bits(data))]
    assert diff == ks


def test_kpa_trace():
    n = 8
    p = C.gen_params(n, 3, 16, 8)
    assert C.kpa_trace(p, 0, 1 << (n - 2)).agreement == 1.0
    assert C.kpa_trace(p, 0, 0).agreement == 1.0
    assert C.kpa_trace(C.gen_params(6, 2, 12, 0), 0, 16).agreement == 1.0


def test_kpa_trace_random_keys():
    n, m = 10, 64
    p = C.gen_params(n, 3, 20, 13)
    r = random.Random(5)
    for _ in range(100):
        z = r.randrange(1 << n)
        assert C.kpa_trace(p, z, m).agreement >= 1 - m / (1 << n)


def test_keystream_accumulates_by_xor():
    p = C.gen_params(6, 2, 12, 21)
    ys = C.keystream(p, 5, 20)
    acc = 0
    for i, y in enumerate(ys):
        acc ^= C.F(p, 5 + i)
        assert y == acc


def test_test_vector_round_trip():
    p = C.gen_params(6, 2, 12, 1)
    text = C.make_test_vector(p, 9, 10)
    assert text.splitlines()[0] == "6 2 9"
    assert C.parse_test_vector(text) == (6, 2, 9, C.keystream(p, 9, 10))

import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from artifact import expr as E
from artifact.gen import random_law
from artifact.words import delta


def test_parse_shapes():
    assert E.parse("x + 2*x*x") == E.Expr("add", (E.X, E.Expr("mul", (E.const(2), E.Expr("mul", (E.X, E.X))))))
    assert E.parse("x + (x*x | 5)") == E.Expr("add", (E.X, E.Expr("or", (E.Expr("mul", (E.X, E.X)), E.const(5)))))
    inv = E.parse("inv(2*x - 1) - x")
    assert inv.kind == "sub" and inv.args[0].kind == "inv"


def test_bit_operators_bind_looser_than_sum():
    assert E.parse("x + 1 ^ 3") == E.parse("(x + 1) ^ 3")
    assert E.parse("x | 1 & 3 ^ 2") == E.parse("x | ((1 & 3) ^ 2)")
    assert E.parse("0x1f") == E.const(31)


@pytest.mark.parametrize("text", ["x +", "exp(2, x)", "inv(2*x)", "foo(x)", "x $ 1", "(x", "binom(x)"])
def test_parse_errors(text):
    with pytest.raises(E.ParseError):
        E.parse(text)


def test_parse_error_carries_position():
    with pytest.raises(E.ParseError) as info:
        E.parse("x + $")
    assert info.value.pos == 4


@given(st.integers(0, 10**9))
def test_print_parse_round_trip(seed):
    e = random_law(random.Random(seed), depth=4, allow_i=True)
    assert E.parse(E.to_text(e)) == e


def test_evaluation_examples():
    assert E.evaluate("x + 2*x*x", 3, 2) == 1
    assert E.evaluate("3*x + exp(3, x)", 0, 8) == 1


def test_exp_law_matches_its_binomial_series():
    # 3x + 3^x = 1 + 5x + sum_{i>=2} 2^i C(x, i); terms with i >= 8 vanish mod 2^8 (ord2 >= 1)
    series = "1 + 5*x + " + " + ".join(f"{1 << i}*binom(x, {i})" for i in range(2, 40))
    vals = E.table(series, 8)
    assert list(vals) == list(E.table("3*x + exp(3, x)", 8))
    assert all(E.evaluate(series, x, 8) == int(vals[x]) for x in range(256))


def test_inverse_of_even_value_names_subexpression():
    with pytest.raises(E.EvalError) as info:
        E.evaluate(E.Expr("inv", (E.X,)), 2, 8)  # the parser would reject this
    assert "x" in str(info.value)


@pytest.mark.parametrize("text,verdict", [
    ("x + (x*x | 5)", "compatible"),
    ("shr(x, 1) + x", "incompatible"),
    ("x ^ (2*(x*x + 3*x))", "compatible"),
    ("rev(x)", "incompatible"),
    ("binom(x, 3)", "unknown"),
    ("2*binom(x, 3)", "compatible"),
    ("x + shr(7, 1)", "compatible"),
])
def test_structural_compatibility(text, verdict):
    assert E.structural_compatibility(text).verdict == verdict


def test_incompatible_names_node():
    assert E.structural_compatibility("shr(x, 1) + x").node == "shr(x, 1)"


@given(st.integers(0, 10**9), st.integers(1, 10))
def test_compatible_laws_respect_congruences(seed, n):
    e = random_law(random.Random(seed), depth=4)
    assert E.structural_compatibility(e).verdict == "compatible"
    vals = E.table(e, n)
    for r in range(n + 1):
        m = (1 << r) - 1
        red = vals & np.uint64(m)
        assert np.all(red.reshape(-1, 1 << r) == red[: 1 << r]) if r else True


def test_anf_of_increment():
    t = E.anf("x + 1", 3)
    assert t.rows[0].monomials == [0, 1]        # 1 + chi_0
    assert t.rows[1].monomials == [1, 2]        # chi_0 + chi_1
    assert t.rows[2].monomials == [3, 4]        # chi_0 chi_1 + chi_2


def test_anf_truth_tables_match_bitwise_increment():
    t = E.anf("x + 1", 3)
    for j, row in enumerate(t.rows):
        assert [int(b) for b in row.truth] == [delta(j, 1, x + 1) for x in range(1 << (j + 1))]


@pytest.mark.parametrize("c", [0, 5, 0xA3])
def test_anf_of_xor_constant(c):
    t = E.anf(f"x ^ {c}", 8)
    for j, row in enumerate(t.rows):
        want = [1 << j] + ([0] if delta(j, 1, c) else [])
        assert sorted(row.monomials) == sorted(want)


@pytest.mark.parametrize("c", [5, 7, 13, 0x25, 0xFD])
def test_anf_quadratic_or_law_has_odd_weights(c):
    t = E.anf(f"x + (x*x | {c})", 8)
    assert t.rows[0].phi()[0] == 1
    assert all(r.phi_weight() % 2 == 1 for r in t.rows[1:])
    assert t.ergodic_up_to_width()


@given(st.integers(0, 10**9), st.integers(1, 12))
def test_anf_reconstructs_values(seed, n):
    e = random_law(random.Random(seed), depth=3)
    t = E.anf(e, n)
    vals = E.table(e, n)
    xs = range(1 << n) if n <= 8 else random.Random(seed).sample(range(1 << n), 200)
    assert all(t.evaluate(x) == int(vals[x]) for x in xs)


@given(st.integers(0, 10**9))
def test_weight_parity_matches_top_monomial(seed):
    e = random_law(random.Random(seed), depth=3)
    t = E.anf(e, 6)
    if not t.measure_preserving():
        return
    for r in t.rows[1:]:
        top = (1 << r.index) - 1  # chi_0 ... chi_{i-1}
        assert r.phi_weight() % 2 == int(r.coeffs[top])


def test_anf_width_cap_and_incompatible():
    with pytest.raises(ValueError):
        E.anf("x", 25)
    with pytest.raises(ValueError):
        E.anf("shr(x, 1)", 4)


def test_derivative_of_xor_and_and():
    d = E.empirical_derivative("x ^ 5", 1, 6)
    assert set(d.table) == {1}
    d = E.empirical_derivative("x & 5", 1, 6)
    assert set(d.table) == {0}


def test_derivative_of_quadratic_or_law():
    d = E.empirical_derivative("x + (x*x | 5)", 2, 6)
    assert d.K <= 3
    assert all(v == (1 + 2 * u) % 4 for u, v in enumerate(d.table))
    # the larger constant K = 3 is valid as well
    D3 = E._derivative_at(E.parse("x + (x*x | 5)"), 2, 3, 7, 0)
    assert D3 is not None and all(v == (1 + 2 * u) % 4 for u, v in enumerate(D3))


def test_not_differentiable():
    with pytest.raises(E.NotDifferentiable):
        E.empirical_derivative("x ^ (x*x*x & 0x55)", 1, 3)


def test_table_law():
    t = E.TableLaw(tuple((x + 1) % 16 for x in range(16)), 4)
    assert E.evaluate(t, 15, 4) == 0
    assert E.structural_compatibility(t).verdict == "compatible"
    assert list(E.table(t, 3)) == [(x + 1) % 8 for x in range(8)]
    flip = E.TableLaw((1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10, 13, 12, 15, 14), 4)
    assert E.structural_compatibility(flip).verdict == "compatible"
    swap = E.TableLaw(tuple(range(15, -1, -1)), 4)
    assert E.structural_compatibility(swap).verdict == "compatible"  # negation is compatible
    shift = E.TableLaw(tuple(x >> 1 for x in range(16)), 4)
    assert E.structural_compatibility(shift).verdict == "incompatible"
    with pytest.raises(ValueError):
        E.TableLaw((0, 1, 2), 2)


def test_substitute():
    e = E.substitute(E.parse("x*x + 1"), E.parse("x + 3"))
    assert all(E.evaluate(e, x, 8) == ((x + 3) ** 2 + 1) % 256 for x in range(256))


def test_polynomial_extraction():
    from fractions import Fraction
    assert E.as_polynomial("1 + x + 4*binom(x, 2)") == [Fraction(1), Fraction(-1), Fraction(2)]
    assert E.as_polynomial("x ^ 1") is None

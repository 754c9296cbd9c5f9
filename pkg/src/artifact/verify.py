"""Bijectivity, transitivity and ergodicity checks, plus the counting formulas.

Every "yes"/"no" carries either a finite witness (a collision, a cycle length)
or names the criterion whose hypotheses were checked.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import expr as E
from .words import mask, ord2, wt2

MAX_BRUTE_BITS = 24


@dataclass
class Verdict:
    property: str
    result: str  # yes | no | inconclusive | inconclusive-yes
    criterion: str
    modulus_bits: int | None = None
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.result in ("yes", "inconclusive-yes")

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class HypothesisError(ValueError):
    """A strategy was asked to judge a law outside its theorem's scope."""


def _check_bits(k: int):
    if not 1 <= k <= MAX_BRUTE_BITS:
        raise ValueError(f"modulus bits must be in 1..{MAX_BRUTE_BITS}, got {k}")


# ---------------------------------------------------------------- brute force

def bijective_mod(e, k: int, i: int = 0) -> Verdict:
    e = E.as_expr(e)
    _check_bits(k)
    vals = E.table(e, k, i)
    seen = np.full(1 << k, -1, dtype=np.int64)
    for x, y in enumerate(vals.tolist()):
        if seen[y] >= 0:
            return Verdict("bijective", "no", "exhaustive", k,
                           {"collision": [int(seen[y]), x], "image": int(y)})
        seen[y] = x
    w = {"images": [int(v) for v in vals]} if k <= 4 else {}
    return Verdict("bijective", "yes", "exhaustive", k, w)


def orbit_length(vals, start: int = 0) -> int:
    """Length of the cycle through start, or 0 if start is not on a cycle."""
    vals = vals.tolist() if isinstance(vals, np.ndarray) else list(vals)
    x = start
    for t in range(1, len(vals) + 1):
        x = vals[x]
        if x == start:
            return t
    return 0


def transitive_mod(e, k: int, i: int = 0) -> Verdict:
    e = E.as_expr(e)
    _check_bits(k)
    length = orbit_length(E.table(e, k, i), 0)
    res = "yes" if length == 1 << k else "no"
    return Verdict("transitive", res, "orbit of 0", k, {"orbit_length": length})


def _brute(e, bound: int) -> Verdict:
    for k in range(1, bound + 1):
        v = transitive_mod(e, k)
        if not v.ok:
            return Verdict("ergodic", "no", f"brute({bound})", k, v.witness)
    # a finite sweep is a necessary condition only
    return Verdict("ergodic", "inconclusive-yes", f"brute({bound})", bound,
                   {"transitive_up_to_bits": bound})


# ---------------------------------------------------------------- strategies

ARITHMETIC_NODES = {"const", "x", "add", "sub", "mul", "neg", "inv", "exp", "div1p", "ff", "shl"}
KOTOMINA_NODES = {"const", "x", "add", "xor"}


def _is_arithmetic(e: E.Expr) -> bool:
    return all(n.kind in ARITHMETIC_NODES for n in e.walk())


def _is_add_xor_chain(e: E.Expr) -> bool:
    # (...((x + c0) ^ d0) + c1 ...) with constants on the right
    while e.kind in ("add", "xor"):
        if e.args[1].kind != "const":
            return False
        e = e.args[0]
    return e.kind == "x"


def _integer_poly(e: E.Expr):
    p = E.as_polynomial(e)
    if p is None or any(c.denominator != 1 for c in p):
        return None
    return [int(c) for c in p]


def ergodic(e, strategy: str = "anf", width: int = 12, bound: int = 10) -> Verdict:
    """Decide ergodicity with the named criterion.

    Strategies: anf, poly_Z, mahler, ff_basis, bp_class, qpol, differentiable,
    brute, kotomina.
    """
    e = E.as_expr(e)
    if strategy == "brute":
        return _brute(e, bound)
    if strategy == "anf":
        table = E.anf(e, width)
        ok = table.ergodic_up_to_width()
        w = {"scope_bits": width, "measure_preserving": table.measure_preserving()}
        if table.measure_preserving():
            w["phi0"] = int(table.rows[0].phi()[0])
            w["even_weight_rows"] = [r.index for r in table.rows[1:] if r.phi_weight() % 2 == 0]
        return Verdict("ergodic", "yes" if ok else "no", "anf odd-weight criterion", width, w)
    if strategy == "poly_Z":
        if _integer_poly(e) is None:
            raise HypothesisError("poly_Z needs an integer polynomial in x")
        return _lift(transitive_mod(e, 3), "integer polynomial: transitive mod 8")
    if strategy == "bp_class":
        if not _is_arithmetic(e):
            raise HypothesisError("bp_class needs a composition of arithmetic operations only")
        return _lift(transitive_mod(e, 3), "falling-factorial series class: transitive mod 8")
    if strategy == "qpol":
        p = E.as_polynomial(e)
        if p is None:
            raise HypothesisError("qpol needs a polynomial over the rationals")
        deg = max(len(p) - 1, 1)
        k = deg.bit_length() - 1 + 3
        if not _integer_valued(p):
            return Verdict("ergodic", "no", "rational polynomial", k, {"reason": "not integer valued"})
        return _lift(transitive_mod(e, k), f"rational polynomial of degree {deg}: transitive mod 2^{k}")
    if strategy in ("mahler", "ff_basis"):
        p = E.as_polynomial(e)
        if p is None:
            raise HypothesisError(f"{strategy} needs a polynomial over the rationals")
        if strategy == "mahler":
            return mahler_check(poly_to_mahler(p))
        ff = poly_to_falling(p)
        if any(c.denominator % 2 == 0 for c in ff):
            raise HypothesisError("falling-factorial coefficients are not 2-adic integers")
        return ff_check(ff)
    if strategy == "differentiable":
        d = E.empirical_derivative(e, 2, bound)
        k = d.K + 2
        v = transitive_mod(e, k)
        r = _lift(v, f"uniformly differentiable mod 4 with N2={d.K}: transitive mod 2^{k}")
        r.witness["N2"] = d.K
        return r
    if strategy == "kotomina":
        if not _is_add_xor_chain(e):
            raise HypothesisError("kotomina needs an add/xor chain with constant operands")
        r = _lift(transitive_mod(e, 2), "add/xor chain: transitive mod 4")
        r.witness["note"] = "criterion cited without proof"
        return r
    raise ValueError(f"unknown strategy {strategy!r}")


def _lift(v: Verdict, criterion: str) -> Verdict:
    w = dict(v.witness)
    w["checked_bits"] = v.modulus_bits
    return Verdict("ergodic", "yes" if v.ok else "no", criterion, v.modulus_bits, w)


def _integer_valued(p: Sequence[Fraction]) -> bool:
    # 2-adically integer valued iff every Mahler coefficient has odd denominator
    return all(c.denominator % 2 == 1 for c in poly_to_mahler(p))


def measure_preserving(e, width: int = 12) -> Verdict:
    e = E.as_expr(e)
    t = E.anf(e, width)
    mp = t.measure_preserving()
    bad = [r.index for r in t.rows if not r.is_linear_in_top()]
    return Verdict("measure_preserving", "yes" if mp else "no", "anf linear-in-top criterion",
                   width, {"scope_bits": width, "nonlinear_rows": bad})


# ---------------------------------------------------------------- polynomial criteria

def _coeff(c, j):
    return c[j] if j < len(c) else 0


def rivest_check(coeffs: Sequence[int]) -> Verdict:
    a = list(coeffs)
    ok = (_coeff(a, 1) % 2 == 1 and sum(a[2::2]) % 2 == 0 and sum(a[3::2]) % 2 == 0)
    return Verdict("bijective", "yes" if ok else "no", "Rivest parity conditions", None,
                   {"a1": _coeff(a, 1) % 2, "even_sum": sum(a[2::2]) % 2, "odd_sum": sum(a[3::2]) % 2})


def larin_check(coeffs: Sequence[int]) -> Verdict:
    a = list(coeffs)
    c1 = (sum(a[3::2]) - 2 * _coeff(a, 2)) % 4 == 0
    c2 = (sum(a[4::2]) - (_coeff(a, 1) + _coeff(a, 2) - 1)) % 4 == 0
    c3 = _coeff(a, 1) % 2 == 1
    c4 = _coeff(a, 0) % 2 == 1
    ok = c1 and c2 and c3 and c4
    return Verdict("transitive", "yes" if ok else "no", "Larin congruences", None,
                   {"conditions": [c1, c2, c3, c4]})


def _v2(c: Fraction) -> float:
    if c == 0:
        return math.inf
    v = ord2(c.numerator)
    if c.denominator % 2 == 0:
        v -= ord2(c.denominator)
    return v


def _residue(c: Fraction, m: int) -> int:
    return c.numerator * pow(c.denominator, -1, m) % m


def ff_check(coeffs: Sequence) -> Verdict:
    """Polynomial in the falling-factorial basis: only c_0..c_3 mod 4 matter."""
    c = [Fraction(v) for v in coeffs] + [Fraction(0)] * 4
    if any(x.denominator % 2 == 0 for x in c):
        raise HypothesisError("coefficients must be 2-adic integers")
    erg = (_residue(c[0], 2) == 1 and _residue(c[1], 4) == 1
           and _residue(c[2], 2) == 0 and _residue(c[3], 4) == 0)
    mp = _residue(c[1], 2) == 1 and _residue(c[2], 2) == 0 and _residue(c[3], 2) == 0
    return Verdict("ergodic", "yes" if erg else "no", "falling-factorial congruences", None,
                   {"measure_preserving": mp})


def _floor_log2(i: int) -> int:
    return i.bit_length() - 1


def mahler_check(coeffs: Sequence) -> Verdict:
    """Classify sum c_i C(x, i) by the 2-adic valuations of its coefficients."""
    c = [Fraction(v) for v in coeffs] + [Fraction(0)] * 2
    compatible = _v2(c[0]) >= 0 and all(_v2(c[i]) >= _floor_log2(i) for i in range(1, len(c)))
    mp = (compatible and _v2(c[1] - 1) >= 1
          and all(_v2(c[i]) >= _floor_log2(i) + 1 for i in range(2, len(c))))
    shift = [1, 1] + [0] * (len(c) - 2)  # the leading 1 + x
    erg = compatible and all(_v2(c[i] - shift[i]) >= _floor_log2(i + 1) + 1 for i in range(len(c)))
    return Verdict("ergodic", "yes" if erg else "no", "Mahler valuations", None,
                   {"compatible": compatible, "measure_preserving": mp})


def poly_to_mahler(p: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients c_i with f(x) = sum c_i C(x, i): iterated differences at 0."""
    d = len(p) - 1
    vals = [sum(Fraction(c) * x**j for j, c in enumerate(p)) for x in range(d + 1)]
    out = []
    for _ in range(d + 1):
        out.append(vals[0])
        vals = [vals[j + 1] - vals[j] for j in range(len(vals) - 1)]
    return out


def poly_to_falling(p: Sequence[Fraction]) -> list[Fraction]:
    return [c / math.factorial(i) for i, c in enumerate(poly_to_mahler(p))]


def mahler_to_poly(c: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(c), 1)
    for i, ci in enumerate(c):
        # C(x, i) = x(x-1)...(x-i+1)/i!
        f = [Fraction(1)]
        for t in range(i):
            g = [Fraction(0)] * (len(f) + 1)
            for j, a in enumerate(f):
                g[j + 1] += a
                g[j] -= t * a
            f = g
        for j, a in enumerate(f):
            out[j] += ci * a / math.factorial(i)
    return out


# ---------------------------------------------------------------- wreath families

def _phi_tables(vals: np.ndarray, n: int):
    """phi_k truth tables of a compatible measure-preserving map, or the bad row."""
    out = []
    for k in range(n):
        bits = ((vals[: 1 << (k + 1)] >> np.uint64(k)) & np.uint64(1)).astype(np.uint8)
        h = 1 << k
        if not np.all(bits[h:] == bits[:h] ^ 1):
            return None, k
        out.append(bits[:h])
    return out, None


def validate_wreath_family(fs, n: int) -> Verdict:
    """Uniform distribution of x_{i+1} = g_{i mod m}(x_i) mod 2^n for all n."""
    fs = [E.as_expr(f) for f in fs]
    m = len(fs)
    tables = []
    for j, f in enumerate(fs):
        if E.structural_compatibility(f).verdict == "incompatible":
            raise ValueError(f"member {j} is structurally incompatible")
        vals = E.table(f, n, j)
        phis, bad = _phi_tables(vals, n)
        if phis is None:
            raise ValueError(f"member {j} is not measure preserving (bit {bad})")
        tables.append(phis)
    c = [int(t[0][0]) for t in tables]
    period = next(d for d in range(1, m + 1) if m % d == 0 and all(c[r] == c[r % d] for r in range(m)))
    cond1 = period == m
    cond2 = sum(c) % 2 == 1
    weights = [sum(int(t[k].sum()) for t in tables) % 2 for k in range(1, n)]
    bad3 = [k for k, w in zip(range(1, n), weights) if w != 1]
    cond3 = not bad3
    failed = [i for i, ok in ((1, cond1), (2, cond2), (3, cond3)) if not ok]
    return Verdict("equiprobable_output", "yes" if not failed else "no", "wreath family conditions", n,
                   {"constants_mod2": c, "constant_period": period, "failed_conditions": failed,
                    "even_weight_levels": bad3})


def wreath_sum_condition(fs, n: int) -> list[int]:
    """Levels k where sum_j sum_{z<2^k} (g_j(z) - z) is not 2^k mod 2^(k+1)."""
    bad = []
    fs = [E.as_expr(f) for f in fs]
    for k in range(1, n):
        mod = 1 << (k + 1)
        s = 0
        for j, f in enumerate(fs):
            s += sum(E.evaluate(f, z, k + 1, j) - z for z in range(1 << k))
        if s % mod != 1 << k:
            bad.append(k)
    return bad


# ---------------------------------------------------------------- counting

def rho(n: int) -> int:
    """Largest r with r - wt2(r) < n, via the recursive formula."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = n.bit_length() - 1
    t = n - (1 << k)
    if t == (1 << k) - 1:
        return n
    return (1 << k) + rho(t + 1)


def rho_direct(n: int) -> int:
    # r - wt2(r) never decreases, so walk up until the next step reaches n
    r = 0
    while (r + 1) - wt2(r + 1) < n:
        r += 1
    return r


def eta(n: int) -> int:
    """log2 of the number of transitive maps mod 2^n induced by integer polynomials."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n <= 3:
        return {1: 1, 2: 2, 3: 16}[n]
    return sum(n - i + wt2(i) for i in range(rho(n) + 1)) - 6


def counting(n: int) -> dict:
    return {"n": n, "log2_all_transitive": (1 << n) - n - 1, "rho": rho(n), "eta": eta(n)}


def enumerate_single_cycle(n: int) -> int:
    """Count compatible single-cycle maps of Z/2^n by building all phi tables."""
    # every measure-preserving choice of phi tables; orbits decide, not the weight criterion
    count = 0
    choices = [list(itertools.product((0, 1), repeat=1 << k)) for k in range(n)]
    for combo in itertools.product(*choices):
        vals = []
        for x in range(1 << n):
            y = 0
            for k, phi in enumerate(combo):
                y |= (((x >> k) & 1) ^ phi[x & mask(k)]) << k
            vals.append(y)
        if orbit_length(vals, 0) == 1 << n:
            count += 1
    return count

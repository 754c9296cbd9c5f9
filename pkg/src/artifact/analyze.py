"""Exact measurements on generator runs: periods, censuses, coordinate structure,
linear and 2-adic complexity, k-tuple fullness and Knuth's Q1 test.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import gen as G
from .words import BitSeq, delta

FERMAT_CAP = 16  # largest j for which 2^(2^j)+1 gcds are computed


class PeriodCapExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------- periods

def default_cap(spec: G.GeneratorSpec) -> int:
    return 1 << (spec.n + spec.m + 2)


def exact_period(state: "G.GeneratorState | G.GeneratorSpec", cap: int | None = None) -> int:
    """Least t > 0 after which the configuration (x, counter) recurs."""
    if isinstance(state, G.GeneratorSpec):
        state = G.build(state, validate=False)
    cap = default_cap(state.spec) if cap is None else cap
    s = G.GeneratorState(state.spec, state.x, state.counter, state.step, state._tables)
    start = s.config()
    for t in range(1, cap + 1):
        s.advance()
        if s.config() == start:
            return t
    raise PeriodCapExceeded(f"no recurrence within {cap} steps")


def one_period(state: "G.GeneratorState | G.GeneratorSpec", what: str = "outputs",
               cap: int | None = None) -> list[int]:
    """Outputs (or states) over one exact configuration period, starting from the given state."""
    if isinstance(state, G.GeneratorSpec):
        state = G.build(state, validate=False)
    p = exact_period(state, cap)
    s = G.GeneratorState(state.spec, state.x, state.counter, state.step, state._tables)
    return G.states(s, p) if what == "states" else G.run_values(s, p)


def min_period(seq: Sequence) -> int:
    """Exact period of a sequence given over one full (possibly non-minimal) period."""
    n = len(seq)
    if n == 0:
        raise ValueError("empty sequence")
    # prefix function: the shortest border gives the smallest shift
    pi = [0] * n
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = pi[k - 1]
        if seq[i] == seq[k]:
            k += 1
        pi[i] = k
    p = n - pi[-1]
    return p if n % p == 0 else n


# ---------------------------------------------------------------- distribution

@dataclass
class Census:
    modulus_bits: int
    counts: dict
    strict: bool

    def summary(self) -> dict:
        vals = list(self.counts.values())
        return {"modulus_bits": self.modulus_bits, "strict": self.strict,
                "min": min(vals) if vals else 0, "max": max(vals) if vals else 0,
                "distinct": len(vals)}


def residue_census(seq: Sequence[int], k: int) -> Census:
    """Counts of each residue mod 2^k; strict iff every residue occurs equally often."""
    c = Counter(int(v) & ((1 << k) - 1) for v in seq)
    counts = {r: c.get(r, 0) for r in range(1 << k)}
    strict = len(set(counts.values())) == 1
    return Census(k, counts, strict)


def coordinate_extract(words: Sequence[int], j: int) -> BitSeq:
    return BitSeq(tuple(delta(j, 1, w) for w in words))


def binary_representation(words: Sequence[int], width: int) -> list[int]:
    return [(int(w) >> j) & 1 for w in words for j in range(width)]


def half_negation_check(bits: Sequence[int], halflen: int) -> bool:
    bits = list(bits)
    if len(bits) < 2 * halflen:
        raise ValueError("need at least two half periods")
    return all(bits[i + halflen] == 1 - bits[i] for i in range(len(bits) - halflen))


def ktuple_census(bits: Sequence[int], k: int) -> dict:
    """Cyclic counts of every k-chain; full iff all 2^k chains occur equally often."""
    b = np.asarray(bits, dtype=np.int64)
    n = b.size
    if n < 1 << k:
        raise ValueError("cycle shorter than 2^k")
    codes = _window_codes(np.concatenate([b, b[: k - 1]]), k)
    counts = np.bincount(codes, minlength=1 << k)
    full = bool(np.all(counts == counts[0]) and counts[0] > 0)
    return {"k": k, "length": n, "full": full, "min": int(counts.min()), "max": int(counts.max()),
            "counts": {_chain(c, k): int(v) for c, v in enumerate(counts)}}


def _window_codes(b: np.ndarray, k: int) -> np.ndarray:
    # code of a window = its bits read first-to-last as an LSB-first number
    m = b.size - k + 1
    codes = np.zeros(max(m, 0), dtype=np.int64)
    for t in range(k):
        codes |= b[t: t + m] << t
    return codes


def _chain(code: int, k: int) -> str:
    return "".join(str((code >> t) & 1) for t in range(k))


def q1_check(bits: Sequence[int]) -> dict:
    """Knuth's Q1 on the finite word: |nu(b)/N - 2^-k| <= N^-1/2 for all k <= log2 N."""
    b = np.asarray(bits, dtype=np.int64)
    n = b.size
    if n < 2:
        raise ValueError("need at least two bits")
    bound = 1 / math.sqrt(n)
    by_k, failing, first_chain = {}, [], None
    for k in range(1, int(math.floor(math.log2(n))) + 1):
        counts = np.bincount(_window_codes(b, k), minlength=1 << k)
        dev = np.abs(counts / n - 2.0 ** -k)
        ok = bool(np.all(dev <= bound + 1e-12))
        by_k[k] = ok
        if not ok:
            failing.append(k)
            if first_chain is None:
                first_chain = _chain(int(np.argmax(dev)), k)
    return {"pass": not failing, "failing_k": failing, "first_failing_chain": first_chain,
            "by_k": by_k, "length": n}


# ---------------------------------------------------------------- complexity

@dataclass
class LinearComplexity:
    L: int
    poly: list  # connection polynomial coefficients c_0 = 1, c_1, ..., c_L

    def to_dict(self) -> dict:
        return {"L": self.L, "poly": "".join(map(str, self.poly))}


def linear_complexity(bits: Sequence[int]) -> LinearComplexity:
    """Berlekamp-Massey over GF(2) with polynomials packed into Python integers."""
    bits = [int(b) & 1 for b in bits]
    c, b = 1, 1  # bit t = coefficient of z^t
    L, m = 0, 1
    window = 0  # bit t = s_{n-t}
    for n, s in enumerate(bits):
        window = (window << 1) | s
        d = bin(c & window).count("1") & 1
        if d == 0:
            m += 1
        elif 2 * L <= n:
            t = c
            c ^= b << m
            L, b, m = n + 1 - L, t, 1
        else:
            c ^= b << m
            m += 1
    poly = [(c >> t) & 1 for t in range(L + 1)]
    if not _recurrence_holds(bits, poly):
        raise AssertionError("Berlekamp-Massey result does not generate the input")
    return LinearComplexity(L, poly)


def _recurrence_holds(bits: Sequence[int], poly: Sequence[int]) -> bool:
    L = len(poly) - 1
    taps = [t for t in range(1, L + 1) if poly[t]]
    return all(bits[n] == sum(bits[n - t] for t in taps) % 2 for n in range(L, len(bits)))


@dataclass
class TwoAdic:
    u: int
    v: int
    phi2: float

    def to_dict(self) -> dict:
        return {"numerator": self.u, "denominator": self.v, "phi2": self.phi2,
                "fcsr_cells": math.ceil(self.phi2)}


def two_adic(period_bits: Sequence[int]) -> TwoAdic:
    """The rational u/v whose 2-adic expansion repeats the given period: -g/(2^P - 1)."""
    p = len(period_bits)
    if p == 0:
        raise ValueError("empty period")
    g = sum(int(b) << t for t, b in enumerate(period_bits))
    q = Fraction(-g, (1 << p) - 1)
    u, v = q.numerator, q.denominator
    return TwoAdic(u, v, _log2(max(abs(u), abs(v))))


def _log2(x: int) -> float:
    if x <= 0:
        return float("-inf") if x == 0 else float("nan")
    # exact for huge integers: scale down before taking the float log
    shift = max(x.bit_length() - 64, 0)
    return math.log2(x >> shift) + shift


def two_adic_halfper(gamma: int, halflen: int, fermat_cap: int = FERMAT_CAP) -> TwoAdic:
    """Closed form for a period whose second half negates the first (first half = gamma).

    The value is (gamma+1)/(N+1) - 1 with N = 2^halflen, so phi2 = log2((N+1)/gcd(gamma+1, N+1)).
    """
    if halflen & (halflen - 1) == 0 and halflen.bit_length() - 1 > fermat_cap:
        raise ValueError(f"Fermat gcd beyond the cap 2^(2^{fermat_cap})+1")
    big = (1 << halflen) + 1
    g = math.gcd(gamma + 1, big)
    q = Fraction(gamma + 1, big) - 1
    return TwoAdic(q.numerator, q.denominator, _log2(big // g))


# ---------------------------------------------------------------- reports

@dataclass
class AnalysisReport:
    exact_period: int | None = None
    residue_census: dict | None = None
    coordinate_reports: dict = field(default_factory=dict)
    linear_complexity: dict | None = None
    two_adic: dict | None = None
    ktuple: dict = field(default_factory=dict)
    q1: dict | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: v for k, v in d.items() if v not in (None, {})}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def coordinate_report(words: Sequence[int], j: int) -> dict:
    """Period and half-negation of coordinate j, given one full period of words."""
    bits = list(coordinate_extract(words, j))
    p = min_period(bits)
    neg = p % 2 == 0 and half_negation_check(bits + bits[:p // 2], p // 2)
    return {"exact_period": p, "half_negation": bool(neg)}


def analyze_words(words: Sequence[int], width: int, *, census: int | None = None,
                  coords: Sequence[int] = (), lincomp: int | None = None,
                  two_adic_j: int | None = None, ktuple: int | None = None,
                  q1: bool = False, period: int | None = None) -> AnalysisReport:
    """Report on one full period of words of the given width."""
    r = AnalysisReport(exact_period=period)
    if census is not None:
        r.residue_census = residue_census(words, census).summary()
    for j in coords:
        r.coordinate_reports[str(j)] = coordinate_report(words, j)
    if lincomp is not None:
        bits = list(coordinate_extract(words, lincomp))
        r.linear_complexity = linear_complexity(bits + bits).to_dict()
    if two_adic_j is not None:
        bits = list(coordinate_extract(words, two_adic_j))
        r.two_adic = two_adic(bits[: min_period(bits)]).to_dict()
    binary = None
    if ktuple is not None:
        binary = binary_representation(words, width)
        kt = ktuple_census(binary, ktuple)
        kt.pop("counts")
        r.ktuple[str(ktuple)] = kt
    if q1:
        binary = binary or binary_representation(words, width)
        r.q1 = q1_check(binary)
    return r


# ---------------------------------------------------------------- extremal sequences

def runs_and_gaps(block: int, length: int) -> list[int]:
    """Alternating blocks of `block` zeros and `block` ones."""
    return [(i // block) & 1 for i in range(length)]


def extremal_half_periods(n: int, ell: int) -> tuple[list[int], list[int]]:
    """First half periods (length 2^(n-1)*ell) of the two extremal coordinate sequences.

    The first is runs and gaps of length 2^(n-1) (linear complexity 2^(n-1)+1). The
    second xors it with a sequence whose period is a run of 2^(n-1)(ell-1) ones then a
    gap of 2^(n-1) zeros (linear complexity 2^(n-1)*ell+1). ell must be odd.
    """
    if n < 2 or ell < 1 or ell % 2 == 0:
        raise ValueError("need n >= 2 and odd ell")
    b = 1 << (n - 1)
    half = b * ell
    u = runs_and_gaps(b, half)
    v = [1 if i % half < b * (ell - 1) else 0 for i in range(half)]
    return u, [p ^ q for p, q in zip(u, v)]

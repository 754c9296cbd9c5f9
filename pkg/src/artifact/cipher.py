"""A toy stream cipher: a truncated congruential generator keyed by its seed.

The state law is f(x) = (x + 1) xor sum_j Psi_j(x) 2^(n+1+j) over n+k+1 bits,
where Psi_j evaluates a sparse Boolean polynomial on the low n bits. Output is
bits n+1 .. n+k of the state. No security claims are made.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import expr as E
from .gen import pack_bits, unpack_bits
from .words import Word, mask


# ---------------------------------------------------------------- sampling

class CongruentialRng:
    """Fixed-law sampler for reproducible parameters.

    State law x -> x + (x*x | 5) mod 2^64 (a single cycle); each draw is the top 32
    bits of the new state. The seed is spread by an odd multiplier first.
    """
    WIDTH = 64
    SPREAD = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self.x = (int(seed) * self.SPREAD + 1) & mask(self.WIDTH)

    def next32(self) -> int:
        x = self.x
        self.x = (x + ((x * x) | 5)) & mask(self.WIDTH)
        return self.x >> 32

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection."""
        if bound < 1:
            raise ValueError("bound must be positive")
        bits = max((bound - 1).bit_length(), 1)
        words = -(-bits // 32)
        while True:
            r = 0
            for _ in range(words):
                r = (r << 32) | self.next32()
            r &= mask(bits)
            if r < bound:
                return r


# ---------------------------------------------------------------- parameters

@dataclass(frozen=True)
class CipherParams:
    n: int
    k: int
    psis: tuple  # psis[j] = tuple of monomials, each a sorted tuple of variable indices

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")
        if len(self.psis) != self.k:
            raise ValueError(f"need {self.k} polynomials, got {len(self.psis)}")
        for psi in self.psis:
            for mono in psi:
                if any(not 0 <= v < self.n for v in mono):
                    raise ValueError(f"monomial {list(mono)} uses a variable index >= n = {self.n}")

    @property
    def width(self) -> int:
        return self.n + self.k + 1

    def masks(self) -> list[list[int]]:
        return [[sum(1 << v for v in mono) for mono in psi] for psi in self.psis]

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "psis": [[list(m) for m in psi] for psi in self.psis]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "CipherParams":
        psis = tuple(tuple(tuple(sorted(int(v) for v in m)) for m in psi) for psi in d["psis"])
        return cls(int(d["n"]), int(d["k"]), psis)


def monomial_cap(n: int) -> int:
    return 4 * n


def gen_params(n: int, k: int, monomials_per_psi: int, entropy_seed: int) -> CipherParams:
    """k random Boolean polynomials in n variables, each with distinct monomials."""
    if monomials_per_psi < 0 or monomials_per_psi > monomial_cap(n):
        raise ValueError(f"monomials per polynomial must lie in 0..{monomial_cap(n)} (4n)")
    if monomials_per_psi > 1 << n:
        raise ValueError(f"only {1 << n} monomials exist in {n} variables")
    rng = CongruentialRng(entropy_seed)
    psis = []
    for _ in range(k):
        chosen: list[int] = []
        seen = set()
        while len(chosen) < monomials_per_psi:
            mono = rng.below(1 << n)
            if mono not in seen:
                seen.add(mono)
                chosen.append(mono)
        psis.append(tuple(tuple(v for v in range(n) if mono >> v & 1) for mono in sorted(chosen)))
    return CipherParams(n, k, tuple(psis))


# ---------------------------------------------------------------- the law

def psi_values(params: CipherParams, x: int) -> int:
    """F(x mod 2^n) = sum_j psi_j(bits of x) 2^j."""
    low = x & mask(params.n)
    out = 0
    for j, masks in enumerate(params.masks()):
        b = 0
        for mk in masks:
            if low & mk == mk:
                b ^= 1
        out |= b << j
    return out


def F(params: CipherParams, x: int) -> int:
    return psi_values(params, x)


def f_F_eval(params: CipherParams, x: "Word | int") -> int:
    if isinstance(x, Word):
        if x.width != params.width:
            raise ValueError(f"width {x.width} does not match n+k+1 = {params.width}")
        x = x.value
    elif not 0 <= x < 1 << params.width:
        raise ValueError(f"state must fit in n+k+1 = {params.width} bits")
    return ((x + 1) & mask(params.width)) ^ (psi_values(params, x) << (params.n + 1))


def f_F_table(params: CipherParams) -> E.TableLaw:
    xs = np.arange(1 << params.width, dtype=np.int64)
    low = xs & mask(params.n)
    psi = np.zeros_like(xs)
    for j, masks in enumerate(params.masks()):
        b = np.zeros_like(xs)
        for mk in masks:
            b ^= (low & mk) == mk
        psi |= b << j
    vals = ((xs + 1) & mask(params.width)) ^ (psi << (params.n + 1))
    return E.TableLaw(tuple(vals.tolist()), params.width)


def f_F_expr(params: CipherParams) -> E.Expr:
    """The same law written with binomials: C(x, sum 2^r) is the product of bits r mod 2."""
    text = "x + 1"
    for j, masks in enumerate(params.masks()):
        if not masks:
            continue
        poly = " + ".join(f"binom(x, {mk})" for mk in masks)
        text = f"({text}) ^ shl(({poly}) & 1, {params.n + 1 + j})"
    return E.parse(text)


# ---------------------------------------------------------------- keystream

def _check_key(params: CipherParams, key: int):
    if not 0 <= key < 1 << params.n:
        raise ValueError(f"key must lie in [0, 2^{params.n})")


def output(params: CipherParams, x: int) -> int:
    return (x >> (params.n + 1)) & mask(params.k)


def keystream(params: CipherParams, key: int, length: int) -> list[int]:
    """y_i = g(x_{i+1}) with x_0 = key; the zero symbol g(x_0) is not emitted."""
    _check_key(params, key)
    x = key
    out = []
    for _ in range(length):
        x = f_F_eval(params, x)
        out.append(output(params, x))
    return out


def keystream_bits(params: CipherParams, key: int, nbits: int) -> list[int]:
    steps = -(-nbits // params.k)
    bits = [(y >> t) & 1 for y in keystream(params, key, steps) for t in range(params.k)]
    return bits[:nbits]


def encrypt(params: CipherParams, key: int, data: bytes) -> bytes:
    bits = unpack_bits(data)
    ks = keystream_bits(params, key, len(bits))
    return pack_bits([a ^ b for a, b in zip(bits, ks)])


decrypt = encrypt


@dataclass(frozen=True)
class KpaTrace:
    m: int
    agreement: float  # fraction of i with y_i xor y_(i-1) = F(z+i)
    literal_agreement: float  # fraction of i with y_i = F(z+i)


def kpa_trace(params: CipherParams, key: int, m: int) -> KpaTrace:
    """Compare the keystream with the relation an attacker would use.

    High state bits accumulate by xor, so the idealised F(z+i) shows up in the
    differences y_i xor y_(i-1) (y_(-1) = 0) until the low counter carries out.
    """
    if not 0 <= m < 1 << params.n:
        raise ValueError("m must lie in [0, 2^n)")
    if m == 0:
        return KpaTrace(0, 1.0, 1.0)
    ys = keystream(params, key, m)
    prev, hit, lit = 0, 0, 0
    for i, y in enumerate(ys):
        want = F(params, key + i)
        hit += (y ^ prev) == want
        lit += y == want
        prev = y
    return KpaTrace(m, hit / m, lit / m)


def make_test_vector(params: CipherParams, key: int, length: int) -> str:
    """Header "n k key" then one hex symbol per line."""
    lines = [f"{params.n} {params.k} {key}"]
    lines += [Word(y, params.k).hex() for y in keystream(params, key, length)]
    return "\n".join(lines) + "\n"


def parse_test_vector(text: str) -> tuple[int, int, int, list[int]]:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    n, k, key = (int(t) for t in lines[0].split())
    return n, k, key, [int(h, 16) for h in lines[1:]]

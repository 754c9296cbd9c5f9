"""Fixed-width residues mod 2^n and the bit primitives built on them.

Bit strings are least-significant-bit first everywhere: "0011" is 12.
Widths up to 64 have a vectorised numpy path (uint64 lanes) that must agree
with the plain big-integer path bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

FAST_WIDTH = 64


def mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class Word:
    value: int
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"width must be >= 1, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} out of range for width {self.width}")

    @classmethod
    def of(cls, value: int, width: int) -> "Word":
        # reduce any integer (including negatives) to its canonical residue
        return cls(value & mask(width), width)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def hex(self) -> str:
        digits = -(-self.width // 4)
        return format(self.value, "x").zfill(digits)

    @classmethod
    def from_hex(cls, text: str, width: int) -> "Word":
        return cls(int(text, 16), width)

    def bits(self) -> "BitSeq":
        return BitSeq(tuple((self.value >> j) & 1 for j in range(self.width)))

    @classmethod
    def from_bits(cls, text: "str | BitSeq") -> "Word":
        seq = BitSeq.parse(text) if isinstance(text, str) else text
        return cls(seq.to_int(), len(seq))


@dataclass(frozen=True)
class BitSeq:
    bits: tuple

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    @classmethod
    def parse(cls, text: str) -> "BitSeq":
        text = "".join(text.split())
        if any(c not in "01" for c in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def of(cls, bits: Iterable[int]) -> "BitSeq":
        return cls(tuple(int(b) for b in bits))

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __getitem__(self, i):
        return self.bits[i]

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def to_int(self) -> int:
        # position j carries weight 2^j
        return sum(b << j for j, b in enumerate(self.bits))


def _width_of(u, v) -> int:
    if u.width != v.width:
        raise ValueError(f"width mismatch: {u.width} vs {v.width}")
    return u.width


def bitop(kind: str, u: Word, v: Word | None = None) -> Word:
    if kind == "neg":
        if v is not None:
            raise ValueError("neg is unary")
        return Word(~u.value & mask(u.width), u.width)
    if v is None:
        raise ValueError(f"{kind} needs two operands")
    n = _width_of(u, v)
    if kind == "xor":
        r = u.value ^ v.value
    elif kind == "and":
        r = u.value & v.value
    elif kind == "or":
        r = u.value | v.value
    else:
        raise ValueError(f"unknown bit operation {kind!r}")
    return Word(r & mask(n), n)


def delta(j: int, m: int, x) -> int:
    """j-th base-2^m digit of x; x is zero-extended past its width."""
    return (int(x) >> (m * j)) & mask(m)


def bit_reverse(s: int, t: int, x) -> int:
    """Write the s base-2^t digits of x in reverse order."""
    if isinstance(x, Word) and x.width != s * t:
        raise ValueError(f"width {x.width} is not {s}*{t}")
    x = int(x)
    if x >> (s * t):
        raise ValueError(f"{x} does not fit in {s}*{t} bits")
    r = 0
    for j in range(s):
        r |= delta(j, t, x) << (t * (s - 1 - j))
    return r


def reverse_bits(x, n: int):
    """pi_n^1 over width n; accepts an int or a uint64 array (n <= 64)."""
    if isinstance(x, np.ndarray):
        x = x.astype(np.uint64)
        r = np.zeros_like(x)
        one = np.uint64(1)
        for j in range(n):
            r |= ((x >> np.uint64(j)) & one) << np.uint64(n - 1 - j)
        return r
    return bit_reverse(n, 1, int(x) & mask(n))


def wt2(i: int) -> int:
    return bin(i).count("1")


def ord2_wt2(i: int) -> tuple[int, int]:
    """(2-adic valuation of i!, binary weight of i)."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    w = wt2(i)
    return i - w, w


def ord2(x: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("ord2(0) is infinite")
    return (x & -x).bit_length() - 1


def binom_mod(x, i: int, n: int) -> int:
    """C(r, i) mod 2^n for the canonical representative r of x."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    r = int(x) & mask(n)
    return math.comb(r, i) & mask(n)


def falling(x: int, i: int, n: int) -> int:
    """x(x-1)...(x-i+1) mod 2^n."""
    m = mask(n)
    r = 1
    for t in range(i):
        r = (r * (x - t)) & m
    return r


def inv_odd(x, n: int):
    """Inverse of an odd residue mod 2^n by Newton-Hensel lifting."""
    if isinstance(x, np.ndarray):
        if n > FAST_WIDTH:
            raise ValueError("vector path is limited to 64 bits")
        x = x.astype(np.uint64)
        if np.any((x & np.uint64(1)) == 0):
            raise ZeroDivisionError("even value has no inverse mod 2^n")
        m = np.uint64(mask(n))
        y = x.copy()  # x*x = 1 mod 8 for odd x
        good = 3
        two = np.uint64(2)
        while good < n:
            y = y * (two - x * y)
            good *= 2
        return y & m
    x = int(x)
    if x % 2 == 0:
        raise ZeroDivisionError(f"{x} is even and has no inverse mod 2^{n}")
    m = mask(n)
    y = x & m
    good = 3
    while good < n:
        y = (y * (2 - x * y)) & m
        good *= 2
    return y & m


_POW_TABLES: dict = {}


def pow_table(a: int, n: int) -> tuple:
    """a^(2^j) mod 2^n for j < n, cached per (a, n)."""
    key = (a, n)
    t = _POW_TABLES.get(key)
    if t is None:
        m = mask(n)
        vals = [a & m]
        for _ in range(n - 1):
            vals.append((vals[-1] * vals[-1]) & m)
        t = tuple(vals)
        _POW_TABLES[key] = t  # dict assignment is atomic, races only recompute
    return t


def exp_mod(a: int, e, n: int):
    """a^e mod 2^n for odd a via the table of repeated squares."""
    if a % 2 == 0:
        raise ValueError("exp base must be odd")
    table = pow_table(a, n)
    if isinstance(e, np.ndarray):
        e = e.astype(np.uint64)
        r = np.ones_like(e)
        one = np.uint64(1)
        for j, t in enumerate(table):
            hit = ((e >> np.uint64(j)) & one).astype(bool)
            r = np.where(hit, r * np.uint64(t), r)
        return r & np.uint64(mask(n))
    e = int(e) & mask(n)  # a^(2^n) = 1 mod 2^n, so only n bits of e matter
    r = 1
    m = mask(n)
    for j, t in enumerate(table):
        if (e >> j) & 1:
            r = (r * t) & m
    return r


def rational_to_bits(u: int, v: int, length: int) -> BitSeq:
    """First `length` 2-adic digits of u/v, v odd."""
    if v % 2 == 0:
        raise ValueError("denominator must be odd")
    bits = []
    r = u
    for _ in range(length):
        # digit b solves r - b*v = 0 mod 2; then divide the remainder by 2
        b = r & 1
        bits.append(b)
        r = (r - b * v) >> 1
    return BitSeq(tuple(bits))


def rational_mod(u: int, v: int, n: int) -> int:
    """u/v as a residue mod 2^n, v odd."""
    if v % 2 == 0:
        raise ValueError("denominator must be odd")
    return (u * inv_odd(v, max(n, 1))) & mask(n)


def bits_from_words(words: Sequence[int], width: int) -> list[int]:
    """Binary representation of a word stream, each word LSB first."""
    out = []
    for w in words:
        out.extend((int(w) >> j) & 1 for j in range(width))
    return out

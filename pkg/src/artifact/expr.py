"""A small language for compositions of machine operations on n-bit words.

Grammar (whitespace ignored, `&` `^` `|` bind looser than `+`, tightest first):

    bitor  := bitxor ('|' bitxor)*
    bitxor := bitand ('^' bitand)*
    bitand := sum ('&' sum)*
    sum    := term (('+'|'-') term)*
    term   := factor ('*' term)?
    factor := atom | '~' atom
    atom   := integer | 'x' | 'i' | '(' bitor ')' | name '(' bitor (',' bitor)* ')'

Every value is reduced mod 2^n after each node, n being the evaluation width.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import words
from .words import FAST_WIDTH, mask

BINARY = {"add": "+", "sub": "-", "mul": "*", "xor": "^", "and": "&", "or": "|"}
PREC = {"or": 1, "xor": 2, "and": 3, "add": 4, "sub": 4, "mul": 5}
SYMBOL_KIND = {v: k for k, v in BINARY.items()}

# call name -> (arity, indices of arguments that must be integer literals)
CALLS = {
    "inv": (1, ()),
    "exp": (2, (0,)),
    "div1p": (2, ()),
    "binom": (2, (1,)),
    "ff": (2, (1,)),
    "shl": (2, (1,)),
    "shr": (2, (1,)),
    "mask": (2, (1,)),
    "mod2n": (2, (1,)),
    "rev": (1, ()),
    "bit": (2, (1,)),
}

STATE_BREAKING = ("shr", "rev", "bit")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class EvalError(ArithmeticError):
    def __init__(self, message: str, node: "Expr"):
        super().__init__(f"{message} in {to_text(node)}")
        self.node = node


@dataclass(frozen=True)
class Expr:
    kind: str
    args: tuple = ()
    value: int | None = None

    def __str__(self) -> str:
        return to_text(self)

    def walk(self) -> Iterable["Expr"]:
        yield self
        for a in self.args:
            yield from a.walk()


X = Expr("x")
I = Expr("i")


def const(c: int) -> Expr:
    if c < 0:
        raise ValueError("literals are nonnegative; write 0 - c")
    return Expr("const", (), c)


def call(name: str, *args: Expr) -> Expr:
    return _check_call(name, tuple(args), 0)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(0[xX][0-9a-fA-F]+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokens(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1):
            out.append(("int", int(m.group(1), 0), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        elif m.group(3):
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*&|^~(),":
                raise ParseError(f"unexpected character {ch!r}", start)
            out.append(("op", ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, ch: str):
        t = self.take()
        if t[0] != "op" or t[1] != ch:
            raise ParseError(f"expected {ch!r}", t[2])

    def binary(self, ops: str, sub):
        left = sub()
        while self.peek()[0] == "op" and self.peek()[1] in ops:
            op = self.take()[1]
            left = Expr(SYMBOL_KIND[op], (left, sub()))
        return left

    def bitor(self):
        return self.binary("|", self.bitxor)

    def bitxor(self):
        return self.binary("^", self.bitand)

    def bitand(self):
        return self.binary("&", self.sum)

    def sum(self):
        return self.binary("+-", self.term)

    def term(self):
        # '*' groups to the right: 2*x*x is 2*(x*x)
        left = self.factor()
        if self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            return Expr("mul", (left, self.term()))
        return left

    def factor(self):
        t = self.peek()
        if t[0] == "op" and t[1] == "~":
            self.take()
            return Expr("neg", (self.atom(),))
        return self.atom()

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return const(val)
        if kind == "op" and val == "(":
            e = self.bitor()
            self.expect(")")
            return e
        if kind == "name":
            if val == "x":
                return X
            if val == "i":
                return I
            if val not in CALLS:
                raise ParseError(f"unknown name {val!r}", pos)
            self.expect("(")
            args = [self.bitor()]
            while self.peek()[0] == "op" and self.peek()[1] == ",":
                self.take()
                args.append(self.bitor())
            self.expect(")")
            return _check_call(val, tuple(args), pos)
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def _check_call(name: str, args: tuple, pos: int) -> Expr:
    arity, literal = CALLS[name]
    if len(args) != arity:
        raise ParseError(f"{name} takes {arity} argument(s), got {len(args)}", pos)
    for j in literal:
        if args[j].kind != "const":
            raise ParseError(f"argument {j + 1} of {name} must be an integer literal", pos)
    if name == "exp" and args[0].value % 2 == 0:
        raise ParseError("exp base must be an odd constant", pos)
    if name == "inv" and parity(args[0]) != 1:
        raise ParseError("inv argument is not structurally odd", pos)
    return Expr(name, args)


def parse(text: str) -> Expr:
    p = _Parser(text)
    e = p.bitor()
    t = p.peek()
    if t[0] != "end":
        raise ParseError(f"unexpected token {t[1]!r}", t[2])
    return e


def as_expr(e: "Expr | str") -> Expr:
    return parse(e) if isinstance(e, str) else e


@dataclass(frozen=True)
class TableLaw:
    """A map of Z/2^width given by its value table; stands in for an Expr."""
    values: tuple
    width: int

    def __post_init__(self):
        if len(self.values) != 1 << self.width:
            raise ValueError(f"table needs {1 << self.width} entries, got {len(self.values)}")
        if any(not 0 <= v < (1 << self.width) for v in self.values):
            raise ValueError("table entries must lie in [0, 2^width)")

    def __str__(self) -> str:
        return f"table[{self.width}]"

    def walk(self):
        yield self

    @property
    def kind(self) -> str:
        return "table"

    def at(self, n: int) -> np.ndarray:
        if n > self.width:
            raise ValueError(f"table law has width {self.width}, asked for {n}")
        return np.array(self.values[: 1 << n], dtype=np.uint64) & np.uint64(mask(n))

    def is_compatible(self) -> bool:
        v = np.array(self.values, dtype=np.uint64)
        for k in range(1, self.width):
            # f(x) mod 2^k must depend on x mod 2^k only
            low = (v & np.uint64(mask(k))).reshape(-1, 1 << k)
            if not np.all(low == low[0]):
                return False
        return True


def substitute(e: Expr, repl: Expr) -> Expr:
    """e with every occurrence of x replaced by repl."""
    if e.kind == "x":
        return repl
    if not e.args:
        return e
    return Expr(e.kind, tuple(substitute(a, repl) for a in e.args), e.value)


def to_text(e: Expr, prec: int = 0) -> str:
    if isinstance(e, TableLaw):
        return str(e)
    k = e.kind
    if k == "const":
        return str(e.value)
    if k in ("x", "i"):
        return k
    if k == "neg":
        inner = to_text(e.args[0], 7)
        # the grammar takes '~' atom, so a nested negation needs parentheses
        return f"~({inner})" if e.args[0].kind == "neg" else "~" + inner
    if k in BINARY:
        p = PREC[k]
        # '*' is right-associative, the rest left-associative
        lp, rp = (p + 1, p) if k == "mul" else (p, p + 1)
        s = f"{to_text(e.args[0], lp)} {BINARY[k]} {to_text(e.args[1], rp)}"
        return f"({s})" if p < prec else s
    return f"{k}({', '.join(to_text(a) for a in e.args)})"


# ---------------------------------------------------------------- structure

def parity(e: Expr) -> int | None:
    """Bit 0 of e when it does not depend on the variables, else None."""
    k = e.kind
    if k == "const":
        return e.value & 1
    if k in ("x", "i"):
        return None
    if k in ("inv", "exp", "div1p"):
        return 1 if k != "div1p" else parity(e.args[0])
    if k == "neg":
        p = parity(e.args[0])
        return None if p is None else 1 - p
    if k in ("add", "sub", "xor"):
        a, b = parity(e.args[0]), parity(e.args[1])
        return None if a is None or b is None else a ^ b
    if k in ("mul", "and"):
        a, b = parity(e.args[0]), parity(e.args[1])
        if a == 0 or b == 0:
            return 0
        return 1 if a == b == 1 else None
    if k == "or":
        a, b = parity(e.args[0]), parity(e.args[1])
        if a == 1 or b == 1:
            return 1
        return 0 if a == b == 0 else None
    if k == "shl":
        return 0 if e.args[1].value > 0 else parity(e.args[0])
    if k == "mask":
        return 0 if e.args[1].value % 2 == 0 else parity(e.args[0])
    if k == "mod2n":
        return 0 if e.args[1].value == 0 else parity(e.args[0])
    if k == "ff":
        return 0 if e.args[1].value >= 2 else (1 if e.args[1].value == 0 else parity(e.args[0]))
    return None


def depends_on_x(e: Expr) -> bool:
    return any(n.kind == "x" for n in e.walk())


@dataclass(frozen=True)
class Compatibility:
    verdict: str  # compatible | unknown | incompatible
    node: str | None = None


def structural_compatibility(e: "Expr | str") -> Compatibility:
    e = as_expr(e)
    if isinstance(e, TableLaw):
        return Compatibility("compatible" if e.is_compatible() else "incompatible")
    found = _compat(e)
    if found is None:
        return Compatibility("compatible")
    verdict, node = found
    return Compatibility(verdict, to_text(node))


def _compat(e: Expr):
    """None when compatible, else (verdict, offending node); incompatible wins."""
    k = e.kind
    if not depends_on_x(e):
        return None
    if k in STATE_BREAKING:
        return ("incompatible", e)
    worst = None
    if k == "mul":
        # c * binom(g, j) is compatible once 2^floor(log2 j) divides c
        for a, b in ((e.args[0], e.args[1]), (e.args[1], e.args[0])):
            if a.kind == "const" and b.kind == "binom":
                j = b.args[1].value
                if a.value == 0:
                    return None
                if j <= 1 or words.ord2(a.value) >= j.bit_length() - 1:
                    return _compat(b.args[0])
    for a in e.args:
        r = _compat(a)
        if r is not None and (worst is None or r[0] == "incompatible"):
            worst = r
            if r[0] == "incompatible":
                return worst
    if worst is not None:
        return worst
    if k == "binom" and e.args[1].value > 1:
        return ("unknown", e)
    return None


# ---------------------------------------------------------------- evaluation

def evaluate(e: "Expr | str", x: int, n: int, i: int = 0) -> int:
    """Value of e at x mod 2^n, the counter variable bound to i."""
    e = as_expr(e)
    if isinstance(e, TableLaw):
        if n > e.width:
            raise ValueError(f"table law has width {e.width}, asked for {n}")
        return e.values[x & mask(n)] & mask(n)
    return _ev(e, x & mask(n), n, i, mask(n))


def _ev(e: Expr, x: int, n: int, i: int, m: int) -> int:
    k = e.kind
    if k == "const":
        return e.value & m
    if k == "x":
        return x
    if k == "i":
        return i & m
    a = e.args
    if k == "add":
        return (_ev(a[0], x, n, i, m) + _ev(a[1], x, n, i, m)) & m
    if k == "sub":
        return (_ev(a[0], x, n, i, m) - _ev(a[1], x, n, i, m)) & m
    if k == "mul":
        return (_ev(a[0], x, n, i, m) * _ev(a[1], x, n, i, m)) & m
    if k == "xor":
        return _ev(a[0], x, n, i, m) ^ _ev(a[1], x, n, i, m)
    if k == "and":
        return _ev(a[0], x, n, i, m) & _ev(a[1], x, n, i, m)
    if k == "or":
        return _ev(a[0], x, n, i, m) | _ev(a[1], x, n, i, m)
    if k == "neg":
        return ~_ev(a[0], x, n, i, m) & m
    if k == "inv":
        v = _ev(a[0], x, n, i, m)
        if v % 2 == 0:
            raise EvalError(f"cannot invert even value {v}", a[0])
        return words.inv_odd(v, n)
    if k == "div1p":
        u = _ev(a[0], x, n, i, m)
        v = _ev(a[1], x, n, i, m)
        return (u * words.inv_odd((1 + 2 * v) & m | 1, n)) & m
    if k == "exp":
        return words.exp_mod(a[0].value, _ev(a[1], x, n, i, m), n)
    if k == "binom":
        return words.binom_mod(_ev(a[0], x, n, i, m), a[1].value, n)
    if k == "ff":
        return words.falling(_ev(a[0], x, n, i, m), a[1].value, n)
    if k == "shl":
        return (_ev(a[0], x, n, i, m) << a[1].value) & m
    if k == "shr":
        return _ev(a[0], x, n, i, m) >> a[1].value
    if k == "mask":
        return _ev(a[0], x, n, i, m) & a[1].value
    if k == "mod2n":
        return _ev(a[0], x, n, i, m) & mask(min(a[1].value, n))
    if k == "rev":
        return words.reverse_bits(_ev(a[0], x, n, i, m), n)
    if k == "bit":
        return words.delta(a[1].value, 1, _ev(a[0], x, n, i, m))
    raise ValueError(f"unknown node {k!r}")


def evaluate_vec(e: "Expr | str", xs: np.ndarray, n: int, i: int = 0) -> np.ndarray:
    """Lane-wise evaluation on uint64 arrays; the fast path for n <= 64."""
    if n > FAST_WIDTH:
        raise ValueError("vector path is limited to 64 bits")
    e = as_expr(e)
    xs = np.asarray(xs, dtype=np.uint64) & np.uint64(mask(n))
    if isinstance(e, TableLaw):
        return e.at(n)[xs.astype(np.int64)]
    with np.errstate(over="ignore"):
        return _ev_vec(e, xs, n, i, np.uint64(mask(n)))


def _full(xs, v):
    return np.full(xs.shape, v, dtype=np.uint64)


def _ev_vec(e: Expr, xs, n: int, i: int, m):
    k = e.kind
    if k == "const":
        return _full(xs, e.value & int(m))
    if k == "x":
        return xs
    if k == "i":
        return _full(xs, i & int(m))
    a = e.args
    if k in ("add", "sub", "mul", "xor", "and", "or"):
        u = _ev_vec(a[0], xs, n, i, m)
        v = _ev_vec(a[1], xs, n, i, m)
        if k == "add":
            return (u + v) & m
        if k == "sub":
            return (u - v) & m
        if k == "mul":
            return (u * v) & m
        if k == "xor":
            return u ^ v
        if k == "and":
            return u & v
        return u | v
    if k == "neg":
        return ~_ev_vec(a[0], xs, n, i, m) & m
    if k == "inv":
        v = _ev_vec(a[0], xs, n, i, m)
        bad = np.flatnonzero((v & np.uint64(1)) == 0)
        if bad.size:
            raise EvalError(f"cannot invert even value {int(v[bad[0]])}", a[0])
        return words.inv_odd(v, n)
    if k == "div1p":
        u = _ev_vec(a[0], xs, n, i, m)
        v = _ev_vec(a[1], xs, n, i, m)
        d = (np.uint64(1) + np.uint64(2) * v) & m | np.uint64(1)
        return (u * words.inv_odd(d, n)) & m
    if k == "exp":
        return words.exp_mod(a[0].value, _ev_vec(a[1], xs, n, i, m), n)
    if k == "binom":
        v = _ev_vec(a[0], xs, n, i, m)
        j = a[1].value
        return np.array([words.binom_mod(int(t), j, n) for t in v], dtype=np.uint64).reshape(xs.shape)
    if k == "ff":
        v = _ev_vec(a[0], xs, n, i, m)
        r = _full(xs, 1)
        for t in range(a[1].value):
            r = (r * (v - np.uint64(t & int(m)))) & m
        return r & m
    if k == "shl":
        s = a[1].value
        v = _ev_vec(a[0], xs, n, i, m)
        return _full(xs, 0) if s >= 64 else (v << np.uint64(s)) & m
    if k == "shr":
        s = a[1].value
        v = _ev_vec(a[0], xs, n, i, m)
        return _full(xs, 0) if s >= 64 else v >> np.uint64(s)
    if k == "mask":
        return _ev_vec(a[0], xs, n, i, m) & np.uint64(a[1].value & int(m))
    if k == "mod2n":
        return _ev_vec(a[0], xs, n, i, m) & np.uint64(mask(min(a[1].value, n)))
    if k == "rev":
        return words.reverse_bits(_ev_vec(a[0], xs, n, i, m), n)
    if k == "bit":
        j = a[1].value
        v = _ev_vec(a[0], xs, n, i, m)
        return _full(xs, 0) if j >= 64 else (v >> np.uint64(j)) & np.uint64(1)
    raise ValueError(f"unknown node {k!r}")


def table(e: "Expr | str", n: int, i: int = 0):
    """f(x) mod 2^n for every x < 2^n (uint64 array when n <= 64)."""
    e = as_expr(e)
    if isinstance(e, TableLaw):
        return e.at(n)
    if n <= FAST_WIDTH:
        return evaluate_vec(e, np.arange(1 << n, dtype=np.uint64), n, i)
    return [evaluate(e, x, n, i) for x in range(1 << n)]


# ---------------------------------------------------------------- ANF

ANF_WIDTH_CAP = 24


def moebius(truth: np.ndarray) -> np.ndarray:
    """Truth table (index = input bits LSB first) to ANF coefficient table."""
    a = np.array(truth, dtype=np.uint8) & 1
    size = a.size
    s = 1
    while s < size:
        v = a.reshape(-1, 2, s)
        v[:, 1, :] ^= v[:, 0, :]
        s *= 2
    return a


@dataclass(frozen=True)
class AnfRow:
    index: int
    truth: np.ndarray  # delta_i(f(x)) for x < 2^(i+1)
    coeffs: np.ndarray  # Moebius transform of truth

    @property
    def monomials(self) -> list[int]:
        """Each monomial is a bitmask over chi_0..chi_i."""
        return [int(t) for t in np.flatnonzero(self.coeffs)]

    def is_linear_in_top(self) -> bool:
        h = 1 << self.index
        return bool(np.all(self.truth[h:] == self.truth[:h] ^ 1))

    def phi(self) -> np.ndarray:
        """Truth table of phi_i where tau_i = chi_i + phi_i."""
        return self.truth[: 1 << self.index]

    def phi_weight(self) -> int:
        return int(self.phi().sum())


@dataclass(frozen=True)
class AnfTable:
    n: int
    rows: tuple

    def measure_preserving(self) -> bool:
        return all(r.is_linear_in_top() for r in self.rows)

    def ergodic_up_to_width(self) -> bool:
        if not self.measure_preserving():
            return False
        if self.rows[0].phi()[0] != 1:
            return False
        return all(r.phi_weight() % 2 == 1 for r in self.rows[1:])

    def evaluate(self, x: int) -> int:
        """Rebuild f(x) mod 2^n from the monomial sets alone."""
        out = 0
        for r in self.rows:
            low = x & mask(r.index + 1)
            b = 0
            for mono in r.monomials:
                if low & mono == mono:
                    b ^= 1
            out |= b << r.index
        return out


def anf(e: "Expr | str", n: int, i: int = 0) -> AnfTable:
    e = as_expr(e)
    if n > ANF_WIDTH_CAP:
        raise ValueError(f"ANF width {n} exceeds cap {ANF_WIDTH_CAP}")
    if structural_compatibility(e).verdict == "incompatible":
        raise ValueError(f"{to_text(e)} is structurally incompatible")
    vals = table(e, n, i)
    rows = []
    for j in range(n):
        bits = ((vals >> np.uint64(j)) & np.uint64(1)).astype(np.uint8)
        blocks = bits.reshape(-1, 1 << (j + 1))
        if not np.all(blocks == blocks[0]):
            raise ValueError(f"bit {j} of {to_text(e)} depends on input bits above {j}")
        truth = blocks[0].copy()
        rows.append(AnfRow(j, truth, moebius(truth)))
    return AnfTable(n, tuple(rows))


# ---------------------------------------------------------------- derivatives

@dataclass(frozen=True)
class Derivative:
    k: int
    K: int
    table: tuple  # D(u) mod 2^k for u < 2^K


class NotDifferentiable(ValueError):
    pass


def empirical_derivative(e: "Expr | str", k: int, bound: int, i: int = 0,
                         depth: int = 4) -> Derivative:
    """Least K <= bound such that, for every scale s in [K, K + depth],
    f(u + 2^s t) = f(u) + 2^s t D(u) mod 2^(s+k) with D periodic mod 2^K.

    Every h with ||h|| <= 2^-K must satisfy the congruence at its own scale,
    so checking s = K alone is not enough: x + (x*x | 5) passes at s = K = 1
    with a derivative that fails at s = 2.
    """
    e = as_expr(e)
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    for K in range(1, bound + 1):
        if K + depth + k > ANF_WIDTH_CAP:
            break
        D = _derivative_at(e, k, K, K + depth, i)
        if D is not None:
            return Derivative(k, K, D)
    raise NotDifferentiable(f"no K <= {bound} makes {to_text(e)} differentiable mod 2^{k}")


def _derivative_at(e: Expr, k: int, K: int, top: int, i: int):
    w = top + k
    vals = table(e, w, i).astype(object if w > 62 else np.int64)
    size = 1 << w
    u = np.arange(size)
    d1 = (vals[(u + (1 << K)) % size] - vals) % size
    if np.any(d1 % (1 << K)):
        return None
    D = ((d1 >> K) % (1 << k))[: 1 << K]
    Dfull = np.tile(D, size >> K)
    for s in range(K, top + 1):
        mod = 1 << (s + k)
        for t in range(1, 1 << k):
            h = t << s
            dt = (vals[(u + h) % size] - vals) % mod
            if np.any(dt != (h * Dfull) % mod):
                return None
    return tuple(int(v) for v in D)


# ---------------------------------------------------------------- polynomials

def as_polynomial(e: "Expr | str", i: int | None = None) -> list[Fraction] | None:
    """Monomial coefficients over Q when e is a polynomial in x, else None."""
    e = as_expr(e)
    return _poly(e, i)


def _padd(p, q, sign=1):
    r = [Fraction(0)] * max(len(p), len(q))
    for j, c in enumerate(p):
        r[j] += c
    for j, c in enumerate(q):
        r[j] += sign * c
    return _trim(r)


def _pmul(p, q):
    r = [Fraction(0)] * (len(p) + len(q) - 1)
    for a, c in enumerate(p):
        if c:
            for b, d in enumerate(q):
                r[a + b] += c * d
    return _trim(r)


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _pfalling(p, k):
    r = [Fraction(1)]
    for t in range(k):
        r = _pmul(r, _padd(p, [Fraction(t)], -1))
    return r


def _poly(e: Expr, i):
    k = e.kind
    if k == "const":
        return [Fraction(e.value)]
    if k == "x":
        return [Fraction(0), Fraction(1)]
    if k == "i":
        return None if i is None else [Fraction(i)]
    sub = [_poly(a, i) for a in e.args] if k not in ("binom", "ff", "shl") else None
    if k in ("add", "sub", "mul", "neg"):
        if any(s is None for s in sub):
            return None
        if k == "add":
            return _padd(sub[0], sub[1])
        if k == "sub":
            return _padd(sub[0], sub[1], -1)
        if k == "mul":
            return _pmul(sub[0], sub[1])
        return _padd([Fraction(-1)], sub[0], -1)
    if k in ("binom", "ff"):
        p = _poly(e.args[0], i)
        if p is None:
            return None
        j = e.args[1].value
        r = _pfalling(p, j)
        return [c / math.factorial(j) for c in r] if k == "binom" else r
    if k == "shl":
        p = _poly(e.args[0], i)
        return None if p is None else [c * (1 << e.args[1].value) for c in p]
    return None


def poly_to_text(coeffs: list[int]) -> str:
    """Integer coefficients a_0..a_d as a parseable expression."""
    pos, neg = [], []
    for d, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "*".join(["x"] * d)
        term = str(abs(c)) if d == 0 else (mono if abs(c) == 1 else f"{abs(c)}*{mono}")
        (pos if c > 0 else neg).append(term)
    text = " + ".join(pos) if pos else "0"
    for t in neg:
        text += f" - {t}"
    return text

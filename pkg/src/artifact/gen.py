"""Generators: congruential, truncated, coordinate and counter-dependent (wreath) ones.

A generator is a spec (immutable, JSON-serializable) plus a state (x, counter,
step). Member j of a family is evaluated with the expression variable i bound
to j, so a single template such as "i + x" describes a whole family.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import expr as E
from . import verify as V
from .words import Word, delta, mask

KINDS = ("congruential", "truncated", "coordinate", "wreath")
TABLE_BITS = 20  # members are tabulated up to this width


class SpecError(ValueError):
    """A generator spec or recipe parameter violates its preconditions."""


# ---------------------------------------------------------------- output functions

@dataclass(frozen=True)
class Output:
    kind: str  # identity | truncate | coordinate | reverse_compose | expr
    arg: object = None
    width: int | None = None

    @classmethod
    def parse(cls, d) -> "Output":
        if d == "identity" or d is None:
            return cls("identity")
        if isinstance(d, Output):
            return d
        if not isinstance(d, dict):
            raise SpecError(f"bad output descriptor {d!r}")
        if "truncate" in d:
            return cls("truncate", int(d["truncate"]))
        if "coordinate" in d:
            return cls("coordinate", int(d["coordinate"]))
        if "reverse_compose" in d:
            return cls("reverse_compose", E.as_expr(d["reverse_compose"]))
        if "expr" in d:
            w = d.get("width")
            return cls("expr", E.as_expr(d["expr"]), None if w is None else int(w))
        raise SpecError(f"bad output descriptor {d!r}")

    def to_json(self):
        if self.kind == "identity":
            return "identity"
        if self.kind in ("truncate", "coordinate"):
            return {self.kind: self.arg}
        if self.kind == "reverse_compose":
            return {"reverse_compose": E.to_text(self.arg)}
        d = {"expr": E.to_text(self.arg)}
        if self.width is not None:
            d["width"] = self.width
        return d

    def out_width(self, n: int) -> int:
        if self.kind == "truncate":
            return self.arg
        if self.kind == "coordinate":
            return 1
        if self.kind == "expr" and self.width is not None:
            return self.width
        return n

    def check(self, n: int):
        if self.kind == "truncate" and not 0 < self.arg < n:
            raise SpecError(f"truncate({self.arg}) needs 0 < t < n = {n}")
        if self.kind == "coordinate" and not 0 <= self.arg < n:
            raise SpecError(f"coordinate({self.arg}) needs j < n = {n}")
        if self.kind == "expr" and self.width is not None and not 0 < self.width <= n:
            raise SpecError(f"output width {self.width} must lie in 1..{n}")

    def apply(self, x: int, n: int, i: int) -> int:
        k = self.kind
        if k == "identity":
            return x
        if k == "truncate":
            return x >> (n - self.arg)
        if k == "coordinate":
            return delta(self.arg, 1, x)
        if k == "reverse_compose":
            return E.evaluate(E.substitute(self.arg, E.call("rev", E.X)), x, n, i)
        return E.evaluate(self.arg, x, n, i) & mask(self.out_width(n))

    def table(self, n: int, i: int) -> np.ndarray:
        xs = np.arange(1 << n, dtype=np.uint64)
        k = self.kind
        if k == "identity":
            return xs
        if k == "truncate":
            return xs >> np.uint64(n - self.arg)
        if k == "coordinate":
            return (xs >> np.uint64(self.arg)) & np.uint64(1)
        if k == "reverse_compose":
            return E.table(E.substitute(self.arg, E.call("rev", E.X)), n, i)
        return E.table(self.arg, n, i) & np.uint64(mask(self.out_width(n)))


# ---------------------------------------------------------------- specs

def _law_to_json(f):
    if isinstance(f, E.TableLaw):
        return {"table": list(f.values), "width": f.width}
    return E.to_text(f)


def _law_from_json(f):
    if isinstance(f, dict):
        vals = tuple(int(v) for v in f["table"])
        width = int(f.get("width", len(vals).bit_length() - 1))
        return E.TableLaw(vals, width)
    return E.as_expr(f)


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    fs: tuple
    outs: tuple = (Output("identity"),)
    seed: int = 0
    perm: tuple | None = None
    claim_max_period: bool = True
    guarantee: str = ""

    @property
    def m(self) -> int:
        return len(self.fs)

    def law(self, j: int):
        return self.fs[j]

    def output(self, j: int) -> Output:
        return self.outs[j] if len(self.outs) > 1 else self.outs[0]

    def out_width(self) -> int:
        return max(o.out_width(self.n) for o in self.outs)

    def next_counter(self, c: int) -> int:
        return self.perm[c] if self.perm is not None else (c + 1) % self.m

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "n": self.n, "m": self.m,
             "fs": [_law_to_json(f) for f in self.fs],
             "outs": [o.to_json() for o in self.outs],
             "seed": Word(self.seed, self.n).hex()}
        if self.perm is not None:
            d["perm"] = list(self.perm)
        if not self.claim_max_period:
            d["claim_max_period"] = False
        if self.guarantee:
            d["guarantee"] = self.guarantee
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def spec_from_dict(d: dict) -> GeneratorSpec:
    """Inverse of GeneratorSpec.to_dict; does not validate (see check_spec)."""
    fs = tuple(_law_from_json(f) for f in d["fs"])
    outs = tuple(Output.parse(o) for o in d.get("outs", ["identity"]))
    n = int(d["n"])
    seed = d.get("seed", 0)
    seed = int(seed, 16) if isinstance(seed, str) else int(seed)
    perm = d.get("perm")
    spec = GeneratorSpec(
        kind=d.get("kind", "congruential" if len(fs) == 1 else "wreath"), n=n, fs=fs, outs=outs,
        seed=seed, perm=None if perm is None else tuple(int(p) for p in perm),
        claim_max_period=bool(d.get("claim_max_period", True)), guarantee=d.get("guarantee", ""))
    if "m" in d and int(d["m"]) != spec.m:
        raise SpecError(f"m = {d['m']} but {spec.m} laws given")
    return spec


def check_spec(spec: GeneratorSpec) -> GeneratorSpec:
    if spec.kind not in KINDS:
        raise SpecError(f"unknown generator kind {spec.kind!r}")
    if spec.n < 1:
        raise SpecError("n must be >= 1")
    if spec.m < 1:
        raise SpecError("at least one state law is required")
    if spec.kind != "wreath" and spec.m != 1:
        raise SpecError(f"{spec.kind} generators have exactly one law")
    if len(spec.outs) not in (1, spec.m):
        raise SpecError(f"need 1 or {spec.m} output descriptors, got {len(spec.outs)}")
    if not 0 <= spec.seed < (1 << spec.n):
        raise SpecError(f"seed does not fit in {spec.n} bits")
    if spec.perm is not None and sorted(spec.perm) != list(range(spec.m)):
        raise SpecError("counter permutation must permute 0..m-1")
    for j, f in enumerate(spec.fs):
        if E.structural_compatibility(f).verdict == "incompatible":
            raise SpecError(f"law {j} ({E.to_text(f)}) is not compatible")
    for o in spec.outs:
        o.check(spec.n)
    if spec.kind == "truncated" and spec.outs[0].kind != "truncate":
        raise SpecError("a truncated generator needs a truncate output")
    if spec.kind == "coordinate" and spec.outs[0].kind != "coordinate":
        raise SpecError("a coordinate generator needs a coordinate output")
    # the family conditions are stated for the increment counter only
    increment = spec.perm is None or all(spec.perm[c] == (c + 1) % spec.m for c in range(spec.m))
    if spec.kind == "wreath" and spec.claim_max_period and increment:
        v = V.validate_wreath_family(spec.fs, spec.n)
        if not v.ok:
            bad = v.witness["failed_conditions"]
            raise SpecError(f"wreath family fails condition(s) {bad}: " + _condition_text(bad))
    return spec


def _condition_text(bad) -> str:
    text = {1: "(1) g_j(0) mod 2 must have exact period m",
            2: "(2) sum of g_j(0) must be odd",
            3: "(3) the phi tables at some level have even total weight"}
    return "; ".join(text[b] for b in bad)


# ---------------------------------------------------------------- running

@dataclass
class GeneratorState:
    spec: GeneratorSpec
    x: int
    counter: int = 0
    step: int = 0
    _tables: dict = field(default_factory=dict, repr=False)

    def config(self) -> tuple:
        return (self.x, self.counter)

    def _law_table(self, c: int):
        t = self._tables.get(("f", c))
        if t is None:
            t = [int(v) for v in E.table(self.spec.law(c), self.spec.n, c)]
            self._tables[("f", c)] = t
        return t

    def _out_table(self, c: int):
        t = self._tables.get(("F", c))
        if t is None:
            t = [int(v) for v in self.spec.output(c).table(self.spec.n, c)]
            self._tables[("F", c)] = t
        return t

    def tabulated(self) -> bool:
        return self.spec.n <= TABLE_BITS

    def advance(self):
        c = self.counter
        try:
            if self.tabulated():
                self.x = self._law_table(c)[self.x]
            else:
                self.x = E.evaluate(self.spec.law(c), self.x, self.spec.n, c)
        except ArithmeticError as err:
            raise ArithmeticError(f"step {self.step}: {err}") from err
        self.counter = self.spec.next_counter(c)
        self.step += 1

    def emit(self) -> int:
        c = self.counter
        if self.tabulated():
            return self._out_table(c)[self.x]
        return self.spec.output(c).apply(self.x, self.spec.n, c)


def build(spec: GeneratorSpec, validate: bool = True) -> GeneratorState:
    if validate:
        check_spec(spec)
    return GeneratorState(spec, spec.seed)


def next_word(state: GeneratorState) -> Word:
    """Emit F_c(x) for the current counter c, then advance the state."""
    y = state.emit()
    w = state.spec.output(state.counter).out_width(state.spec.n)
    state.advance()
    return Word(y, w)


def run(state: GeneratorState, length: int) -> list[Word]:
    return [next_word(state) for _ in range(length)]


def run_values(state: GeneratorState, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(state.emit())
        state.advance()
    return out


def states(state: GeneratorState, length: int) -> list[int]:
    """x_0, x_1, ... (the internal states, not the outputs)."""
    out = []
    for _ in range(length):
        out.append(state.x)
        state.advance()
    return out


# ---------------------------------------------------------------- stream formats

def format_stream(values: Sequence[int], width: int, fmt: str):
    """hex: one symbol per line; words: little-endian bytes per symbol; bits: packed LSB first."""
    if fmt == "hex":
        return "".join(Word(v, width).hex() + "\n" for v in values)
    if fmt == "words":
        size = max(1, -(-width // 8))
        return b"".join(int(v).to_bytes(size, "little") for v in values)
    if fmt == "bits":
        return pack_bits([(int(v) >> j) & 1 for v in values for j in range(width)])
    raise ValueError(f"unknown stream format {fmt!r}")


def pack_bits(bits: Sequence[int]) -> bytes:
    out = bytearray(-(-len(bits) // 8))
    for k, b in enumerate(bits):
        if b:
            out[k >> 3] |= 1 << (k & 7)
    return bytes(out)


def unpack_bits(data: bytes, count: int | None = None) -> list[int]:
    bits = [(byte >> j) & 1 for byte in data for j in range(8)]
    return bits if count is None else bits[:count]


# ---------------------------------------------------------------- recipes

RECIPES = ("delta", "compose", "wp_even", "wp_odd", "intro", "exp", "inverse",
           "reverse_output", "foldrev")


def _x_plus(e: E.Expr, c: int) -> E.Expr:
    return E.substitute(e, E.parse(f"x + {c}"))


def delta_law(g, c: int = 1) -> E.Expr:
    """c + x + 2*(g(x+1) - g(x)); ergodic for every compatible g and odd c."""
    g = E.as_expr(g)
    if c % 2 == 0:
        raise SpecError("delta recipe needs an odd constant c")
    diff = E.Expr("sub", (_x_plus(g, 1), g))
    return E.Expr("add", (E.Expr("add", (E.const(c), E.X)), E.Expr("mul", (E.const(2), diff))))


def delta_guard_table(g, c: int, n: int, i: int = 0) -> np.ndarray:
    """Same law computed with one guard bit: g(x+1) - g(x) at width n+1, then reduced."""
    g = E.as_expr(g)
    xs = np.arange(1 << n, dtype=np.uint64)
    big = np.uint64(mask(n + 1))
    d = (E.evaluate_vec(g, (xs + np.uint64(1)) & big, n + 1, i) - E.evaluate_vec(g, xs, n + 1, i)) & big
    return (np.uint64(c) + xs + np.uint64(2) * d) & np.uint64(mask(n))


COMPOSE_VARIANTS = {
    "f(x+4g)": lambda f, g: E.substitute(f, E.Expr("add", (E.X, _times4(g)))),
    "f(x^4g)": lambda f, g: E.substitute(f, E.Expr("xor", (E.X, _times4(g)))),
    "f+4g": lambda f, g: E.Expr("add", (f, _times4(g))),
    "f^4g": lambda f, g: E.Expr("xor", (f, _times4(g))),
}


def _times4(g: E.Expr) -> E.Expr:
    return E.Expr("mul", (E.const(4), g))


def _congruential(f, n: int, seed: int, outs, guarantee: str) -> GeneratorSpec:
    outs = tuple(Output.parse(o) for o in (outs or ["identity"]))
    kind = "congruential"
    if outs[0].kind == "truncate":
        kind = "truncated"
    elif outs[0].kind == "coordinate":
        kind = "coordinate"
    return GeneratorSpec(kind, n, (E.as_expr(f),), outs, seed, guarantee=guarantee)


def _need(params: dict, *keys):
    missing = [k for k in keys if k not in params]
    if missing:
        raise SpecError(f"missing recipe parameter(s): {', '.join(missing)}")


def make_recipe(kind: str, params: dict) -> GeneratorSpec:
    p = dict(params)
    _need(p, "n")
    n = int(p["n"])
    seed = int(p.get("seed", 0))
    outs = p.get("outs")
    if kind == "delta":
        _need(p, "g")
        f = delta_law(p["g"], int(p.get("c", 1)))
        return check_spec(_congruential(f, n, seed, outs, "ergodic law: single cycle of length 2^n"))
    if kind == "compose":
        _need(p, "f", "g")
        variant = p.get("variant", "f(x+4g)")
        if variant not in COMPOSE_VARIANTS:
            raise SpecError(f"compose variant must be one of {sorted(COMPOSE_VARIANTS)}")
        f = E.as_expr(p["f"])
        if not V.ergodic(f, "anf", width=min(n, 12)).ok:
            raise SpecError("compose recipe needs an ergodic f")
        law = COMPOSE_VARIANTS[variant](f, E.as_expr(p["g"]))
        return check_spec(_congruential(law, n, seed, outs, "ergodic law: single cycle of length 2^n"))
    if kind == "exp":
        a = int(p.get("a", 3))
        if a % 2 == 0:
            raise SpecError("exp recipe needs an odd base a")
        law = E.parse(f"{a}*x + exp({a}, x)")
        return check_spec(_congruential(law, n, seed, outs, "ergodic law: single cycle of length 2^n"))
    if kind == "inverse":
        law = E.parse("inv(2*x - 1) - x")
        return check_spec(_congruential(law, n, seed, outs, "ergodic law: single cycle of length 2^n"))
    if kind == "foldrev":
        _need(p, "k")
        k = int(p["k"])
        if n != 2 * k:
            raise SpecError(f"foldrev runs over a 2k-bit state: n must be {2 * k}")
        f = E.as_expr(p.get("f", "x + 1"))
        out = Output("expr", E.parse("x + rev(x)"), k)
        return check_spec(GeneratorSpec("congruential", n, (f,), (out,), seed,
                                        guarantee="output period 2^(2k), each k-bit value 2^k times"))
    if kind == "wp_even":
        _need(p, "c", "fs")
        cs = [int(c) for c in p["c"]]
        size = len(cs)
        if size < 2 or size & (size - 1):
            raise SpecError("WP-even condition: the family size must be a power of 2 (>= 2)")
        if sum(cs) % 2 == 0:
            raise SpecError("WP-even condition: sum of c_j even")
        fs = _per_member(p["fs"], size)
        laws = tuple(E.parse(f"{c} + x + 4*({E.to_text(f)})") for c, f in zip(cs, fs))
        spec = GeneratorSpec("wreath", n, laws, _outs(outs, size), seed,
                             guarantee="state period exactly 2^(n+log2 m)")
        return check_spec(spec)
    if kind == "wp_odd":
        _need(p, "fs")
        fs = [E.as_expr(f) for f in p["fs"]]
        m = len(fs)
        if m < 3 or m % 2 == 0:
            raise SpecError("WP-odd condition: m must be odd and > 1")
        for j, f in enumerate(fs):
            if not V.ergodic(f, "anf", width=min(n, 12)).ok:
                raise SpecError(f"WP-odd condition: f_{j} is not ergodic")
        d = odd_shift_sequence(p.get("u"), m, int(p.get("z", 0)))
        op = {"xor": "^", "add": "+"}[p.get("variant", "xor")]
        laws = tuple(E.parse(f"{dj} {op} ({E.to_text(f)})") for dj, f in zip(d, fs))
        spec = GeneratorSpec("wreath", n, laws, _outs(outs, m), seed,
                             guarantee="state period exactly 2^n*m, each residue m times")
        return check_spec(spec)
    if kind == "intro":
        _need(p, "vs", "ws")
        vs = [E.as_expr(v) for v in p["vs"]]
        ws = [E.as_expr(w) for w in p["ws"]]
        m = len(vs)
        if len(ws) != m:
            raise SpecError("intro recipe needs as many w_j as v_j")
        if m % 4 != 3:
            raise SpecError(f"intro condition: m = {m} is not 3 mod 4")
        laws, outs_ = [], []
        for j, (v, w) in enumerate(zip(vs, ws)):
            diff = E.Expr("sub", (_x_plus(v, 1), v))
            laws.append(E.Expr("add", (E.Expr("add", (E.const(j), E.X)),
                                       E.Expr("mul", (E.const(2), diff)))))
            r = E.call("rev", E.X)
            wr = E.substitute(w, r)
            wd = E.Expr("sub", (E.substitute(w, E.Expr("add", (r, E.const(1)))), wr))
            outs_.append(Output("expr", E.Expr("add", (E.Expr("add", (E.const(1), r)),
                                                      E.Expr("mul", (E.const(2), wd))))))
        spec = GeneratorSpec("wreath", n, tuple(laws), tuple(outs_), seed,
                             guarantee="state period exactly 2^n*m, each residue m times")
        return check_spec(spec)
    if kind == "reverse_output":
        _need(p, "hs")
        hs = [E.as_expr(h) for h in p["hs"]]
        for j, h in enumerate(hs):
            if not V.ergodic(h, "anf", width=min(n, 12)).ok:
                raise SpecError(f"reverse_output needs ergodic h_j; h_{j} is not")
        fs = [E.as_expr(f) for f in p.get("fs", ["x + 1"])]
        if len(fs) == 1 and len(hs) > 1:
            raise SpecError("a single state law takes a single output law")
        outs_ = tuple(Output("reverse_compose", h) for h in hs)
        kind_ = "wreath" if len(fs) > 1 else "congruential"
        spec = GeneratorSpec(kind_, n, tuple(fs), outs_, seed,
                             guarantee="each output coordinate has period a multiple of 2^n")
        return check_spec(spec)
    raise SpecError(f"unknown recipe {kind!r}; expected one of {', '.join(RECIPES)}")


def _per_member(fs, size: int) -> list:
    fs = [E.as_expr(f) for f in (fs if isinstance(fs, (list, tuple)) else [fs])]
    if len(fs) == 1:
        fs = fs * size
    if len(fs) != size:
        raise SpecError(f"need 1 or {size} laws, got {len(fs)}")
    return fs


def _outs(outs, m: int) -> tuple:
    return tuple(Output.parse(o) for o in (outs or ["identity"]))


def odd_shift_sequence(u, m: int, z: int = 0) -> list[int]:
    """d_i = u^i(z), or u^i(z) + 1 when m = 3 mod 4; period m with an even sum for odd m.

    The +1 is not reduced mod m: reducing would only permute 0..m-1 and keep the odd sum.
    """
    u = list(range(1, m)) + [0] if u is None else [int(t) for t in u]
    if sorted(u) != list(range(m)):
        raise SpecError("u must be a permutation of 0..m-1")
    if V.orbit_length(u, 0) != m:
        raise SpecError("u must be a single cycle")
    extra = 0 if m % 4 == 1 else 1
    out, t = [], z % m
    for _ in range(m):
        out.append(t + extra)
        t = u[t]
    return out


def random_law(rng: random.Random, depth: int = 3, allow_i: bool = False) -> E.Expr:
    """A random compatible composition of +, -, *, ^, &, |, ~ and constants."""
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.5:
            return E.X
        if allow_i and r < 0.6:
            return E.I
        return E.const(rng.randrange(0, 64))
    if rng.random() < 0.1:
        return E.Expr("neg", (random_law(rng, depth - 1, allow_i),))
    k = rng.choice(["add", "sub", "mul", "xor", "and", "or"])
    return E.Expr(k, (random_law(rng, depth - 1, allow_i), random_law(rng, depth - 1, allow_i)))


# ---------------------------------------------------------------- prescribed coordinates

def anyhalfper_sequence(gammas: Sequence[int], n: int, length: int) -> list[int]:
    """Orbit of an ergodic law whose coordinate j starts with the 2^j bits of gamma_j.

    Bit j of z_i is bit (i mod 2^j) of gamma_j, flipped on alternate blocks of 2^j
    steps; bit 0 is gamma_0 + i mod 2.
    """
    if len(gammas) < n:
        raise SpecError(f"need {n} values gamma_j, got {len(gammas)}")
    for j in range(n):
        if not 0 <= gammas[j] < 1 << (1 << j):
            raise SpecError(f"gamma_{j} must lie in [0, 2^(2^{j}))")
    out = []
    for i in range(length):
        z = (gammas[0] + i) & 1
        for j in range(1, n):
            b = delta(i % (1 << j), 1, gammas[j]) ^ ((i >> j) & 1)
            z |= b << j
        out.append(z)
    return out


ANYHALFPER_WREATH_CAP = 16


def anyhalfper_wreath(gammas: Sequence[int], m: int, n: int) -> GeneratorSpec:
    """Table-backed family g_0..g_{m-1} whose coordinate j (j >= 1) opens with gamma_j.

    Level 0 puts g_j(0) odd only for j = m-1. Level j pins phi_j^{k mod m} at the
    state reached after k steps so that the coordinate walks through the bits of
    gamma_j and flips at the end of the half period.
    """
    if m < 2:
        raise SpecError("m must be >= 2")
    if not 1 <= n <= ANYHALFPER_WREATH_CAP:
        raise SpecError(f"n must lie in 1..{ANYHALFPER_WREATH_CAP}")
    if len(gammas) < n:
        raise SpecError(f"need {n} values gamma_j, got {len(gammas)}")
    for j in range(n):
        if not 0 <= gammas[j] < 1 << ((1 << j) * m):
            raise SpecError(f"gamma_{j} must lie in [0, 2^(2^{j}*{m}))")
    x0 = sum(delta(0, 1, gammas[j]) << j for j in range(n))
    # phis[r][j] is the truth table of phi_j for member r, indexed by x mod 2^j
    phis = [[np.zeros(1 << j, dtype=np.uint8) for j in range(n)] for _ in range(m)]
    phis[m - 1][0][0] = 1
    for j in range(1, n):
        tables = [_assemble(phis[r], j) for r in range(m)]
        period = (1 << j) * m
        xi = x0 & mask(j)
        g = gammas[j]
        for k in range(period):
            r = k % m
            b = delta(k, 1, g) ^ delta((k + 1) % period, 1, g)
            if k == period - 1:
                b ^= 1
            phis[r][j][xi] = b
            xi = tables[r][xi]
    vals = tuple(E.TableLaw(tuple(int(v) for v in _assemble(phis[r], n)), n) for r in range(m))
    return GeneratorSpec("wreath", n, vals, (Output("identity"),), x0,
                         guarantee="coordinate j >= 1 opens with the bits of gamma_j")


def _assemble(phi_levels, width: int) -> list[int]:
    """g(x) mod 2^width from phi tables: bit j of g(x) is bit j of x xor phi_j(x mod 2^j)."""
    out = []
    for x in range(1 << width):
        y = 0
        for j in range(width):
            y |= (((x >> j) & 1) ^ int(phi_levels[j][x & mask(j)])) << j
        out.append(y)
    return out

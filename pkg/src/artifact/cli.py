"""Command-line entry point.

Reports are JSON on standard output (keys sorted, no timestamps); streams from
`gen` are raw. Exit status: 0 when every verdict or check passes, 1 when one
fails, 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import jsonschema

from . import analyze as A
from . import cipher as C
from . import expr as E
from . import gen as G
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(ValueError):
    """Bad command input; reported on standard error with exit status 2."""


# ---------------------------------------------------------------- spec files

_LAW = {"oneOf": [
    {"type": "string"},
    {"type": "object", "required": ["table"], "additionalProperties": False,
     "properties": {"table": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "width": {"type": "integer", "minimum": 1}}},
]}
_OUT = {"oneOf": [
    {"const": "identity"},
    {"type": "object", "additionalProperties": False, "minProperties": 1, "maxProperties": 1,
     "properties": {"truncate": {"type": "integer", "minimum": 1},
                    "coordinate": {"type": "integer", "minimum": 0},
                    "reverse_compose": {"type": "string"}}},
    {"type": "object", "additionalProperties": False, "required": ["expr"],
     "properties": {"expr": {"type": "string"}, "width": {"type": "integer", "minimum": 1}}},
]}
SPEC_SCHEMA = {
    "type": "object",
    "required": ["n", "fs"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": list(G.KINDS)},
        "n": {"type": "integer", "minimum": 1},
        "m": {"type": "integer", "minimum": 1},
        "fs": {"type": "array", "minItems": 1, "items": _LAW},
        "outs": {"type": "array", "minItems": 1, "items": _OUT},
        "seed": {"oneOf": [{"type": "string", "pattern": "^[0-9a-fA-F]+$"},
                           {"type": "integer", "minimum": 0}]},
        "perm": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "claim_max_period": {"type": "boolean"},
        "guarantee": {"type": "string"},
    },
}
RECIPE_SCHEMA = {
    "type": "object",
    "required": ["recipe", "params"],
    "additionalProperties": False,
    "properties": {"recipe": {"enum": list(G.RECIPES)}, "params": {"type": "object"}},
}


def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path) if path else "/"


def _validate(doc, schema):
    errors = sorted(jsonschema.Draft202012Validator(schema).iter_errors(doc),
                    key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        raise InputError(f"{_pointer(e.absolute_path)}: {e.message}")


def spec_from_document(doc) -> G.GeneratorSpec:
    """A plain spec or a {"recipe": kind, "params": {...}} document."""
    if isinstance(doc, dict) and "recipe" in doc:
        _validate(doc, RECIPE_SCHEMA)
        try:
            return G.make_recipe(doc["recipe"], doc["params"])
        except (G.SpecError, E.ParseError) as err:
            raise InputError(str(err)) from err
    _validate(doc, SPEC_SCHEMA)
    for j, f in enumerate(doc["fs"]):
        try:
            G._law_from_json(f)
        except (E.ParseError, ValueError) as err:
            raise InputError(f"/fs/{j}: {err}") from err
    for j, o in enumerate(doc.get("outs", [])):
        try:
            G.Output.parse(o)
        except (E.ParseError, ValueError) as err:
            raise InputError(f"/outs/{j}: {err}") from err
    try:
        return G.check_spec(G.spec_from_dict(doc))
    except (G.SpecError, ValueError) as err:
        raise InputError(str(err)) from err


def load_spec(path) -> G.GeneratorSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as err:
        raise InputError(f"{path}: not JSON ({err.msg} at line {err.lineno})") from err
    except OSError as err:
        raise InputError(f"{path}: {err.strerror}") from err
    return spec_from_document(doc)


def save_spec(spec: G.GeneratorSpec, path) -> None:
    Path(path).write_text(json.dumps(spec.to_dict(), sort_keys=True, indent=2) + "\n")


# ---------------------------------------------------------------- helpers

def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _read_ints(path) -> list[int]:
    """A JSON list of integers, or whitespace-separated integers (0x prefix for hex)."""
    text = Path(path).read_text() if path != "-" else sys.stdin.read()
    try:
        vals = json.loads(text)
        if isinstance(vals, list):
            return [int(v, 0) if isinstance(v, str) else int(v) for v in vals]
    except json.JSONDecodeError:
        pass
    try:
        return [int(t, 0) for t in text.split()]
    except ValueError as err:
        raise InputError(f"{path}: {err}") from err


def _read_bits(text: str) -> list[int]:
    bits = [int(c) for c in text if c in "01"]
    if any(not c.isspace() and c not in "01" for c in text):
        raise InputError("bit input may contain only 0, 1 and whitespace")
    return bits


# ---------------------------------------------------------------- verbs

def cmd_verify(args, out) -> int:
    e = E.parse(args.law)
    if args.check == "bijective":
        v = V.bijective_mod(e, args.mod_bits or 8)
    elif args.check == "transitive":
        v = V.transitive_mod(e, args.mod_bits or 8)
    elif args.check == "mp":
        v = V.measure_preserving(e, args.mod_bits or 12)
    else:
        v = V.ergodic(e, args.strategy or "anf", width=args.mod_bits or 12, bound=args.bound)
    _emit(v.to_dict(), out)
    return EXIT_OK if v.ok else EXIT_FAIL


def cmd_gen(args, out) -> int:
    spec = load_spec(args.spec)
    st = G.build(spec, validate=False)
    vals = G.run_values(st, args.count)
    data = G.format_stream(vals, spec.out_width(), args.format)
    if isinstance(data, str):
        out.write(data)
    else:
        out.flush()
        getattr(out, "buffer", out).write(data)
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    if args.spec:
        spec = load_spec(args.spec)
        st = G.build(spec, validate=False)
        period = A.exact_period(st, args.cap)
        words = G.run_values(st, period)
        width = spec.out_width()
    elif args.stdin_bits:
        words = _read_bits(sys.stdin.read())  # taken as one exact period
        width, period = 1, None
        if not words:
            raise InputError("no bits on standard input")
    else:
        raise InputError("analyze needs --spec or --stdin-bits")
    if args.stdin_bits and any(j not in (None, 0) for j in (args.lincomp, args.two_adic)):
        raise InputError("a bit stream has only coordinate 0")
    r = A.analyze_words(words, width, census=args.census, coords=args.coords or (),
                        lincomp=args.lincomp, two_adic_j=args.two_adic, ktuple=args.ktuple, q1=args.q1,
                        period=period if args.period or args.spec else None)
    report = r.to_dict()
    _emit(report, out)
    checks = []
    if r.q1 is not None:
        checks.append(r.q1["pass"])
    checks += [kt["full"] for kt in r.ktuple.values()]
    if r.residue_census is not None:
        checks.append(r.residue_census["strict"])
    return EXIT_OK if all(checks) else EXIT_FAIL


def cmd_count(args, out) -> int:
    if args.bits < 1:
        raise InputError("--bits must be >= 1")
    rep = V.counting(args.bits)
    if args.enumerate:
        if args.bits > 3:
            raise InputError("exhaustive enumeration is limited to --bits <= 3")
        rep["enumerated"] = V.enumerate_single_cycle(args.bits)
        rep["enumeration_matches"] = rep["enumerated"] == 1 << rep["log2_all_transitive"]
        _emit(rep, out)
        return EXIT_OK if rep["enumeration_matches"] else EXIT_FAIL
    _emit(rep, out)
    return EXIT_OK


def cmd_construct(args, out) -> int:
    gammas = _read_ints(args.gamma)
    try:
        if args.what == "anyhalfper":
            seq = G.anyhalfper_sequence(gammas, args.n, args.length or (1 << args.n))
            _emit({"n": args.n, "sequence": [format(z, "x") for z in seq]}, out)
            return EXIT_OK
        spec = G.anyhalfper_wreath(gammas, args.m, args.n)
    except G.SpecError as err:
        raise InputError(str(err)) from err
    v = V.validate_wreath_family(spec.fs, spec.n)
    _emit({"spec": spec.to_dict(), "validation": v.to_dict()}, out)
    return EXIT_OK if v.ok else EXIT_FAIL


def _load_params(path) -> C.CipherParams:
    try:
        return C.CipherParams.from_dict(json.loads(Path(path).read_text()))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
        raise InputError(f"{path}: bad cipher parameters ({err})") from err


def cmd_cipher(args, out) -> int:
    if args.action == "keygen":
        try:
            p = C.gen_params(args.n, args.k, args.monomials, args.seed)
        except ValueError as err:
            raise InputError(str(err)) from err
        _emit(p.to_dict(), out)
        return EXIT_OK
    p = _load_params(args.params)
    try:
        if args.action == "stream":
            if args.format == "testvector":
                out.write(C.make_test_vector(p, args.key, args.count))
            else:
                vals = C.keystream(p, args.key, args.count)
                data = G.format_stream(vals, p.k, args.format)
                if isinstance(data, str):
                    out.write(data)
                else:
                    out.flush()
                    getattr(out, "buffer", out).write(data)
            return EXIT_OK
        if args.action in ("enc", "dec"):
            src = sys.stdin.buffer.read() if args.input in (None, "-") else Path(args.input).read_bytes()
            data = C.encrypt(p, args.key, src)
            if args.output in (None, "-"):
                out.flush()
                getattr(out, "buffer", out).write(data)
            else:
                Path(args.output).write_bytes(data)
            return EXIT_OK
        t = C.kpa_trace(p, args.key, args.m)
        _emit({"m": t.m, "agreement": t.agreement, "literal_agreement": t.literal_agreement}, out)
        return EXIT_OK if t.agreement == 1.0 else EXIT_FAIL
    except ValueError as err:
        raise InputError(str(err)) from err


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="artifact", description="T-function generators: verify, generate, analyze.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="decide a property of a law")
    v.add_argument("--law", required=True)
    v.add_argument("--check", required=True, choices=["bijective", "transitive", "ergodic", "mp"])
    v.add_argument("--strategy", choices=["anf", "poly_Z", "mahler", "ff_basis", "bp_class", "qpol",
                                          "differentiable", "brute", "kotomina"])
    v.add_argument("--mod-bits", type=int, help="modulus bits (or checked width for anf/mp)")
    v.add_argument("--bound", type=int, default=10, help="bit bound for brute/differentiable")

    g = sub.add_parser("gen", help="run a generator spec")
    g.add_argument("--spec", required=True)
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--format", choices=["hex", "bits", "words"], default="hex")

    a = sub.add_parser("analyze", help="measure a generator or a bit stream")
    src = a.add_mutually_exclusive_group()
    src.add_argument("--spec")
    src.add_argument("--stdin-bits", action="store_true")
    a.add_argument("--period", action="store_true")
    a.add_argument("--census", type=int, metavar="K")
    a.add_argument("--lincomp", type=int, nargs="?", const=0, metavar="J")
    a.add_argument("--2adic", dest="two_adic", type=int, nargs="?", const=0, metavar="J")
    a.add_argument("--ktuple", type=int, metavar="K")
    a.add_argument("--q1", action="store_true")
    a.add_argument("--coords", type=int, nargs="*", metavar="J")
    a.add_argument("--cap", type=int, help="step cap for the period search")

    c = sub.add_parser("count", help="counting formulas for transitive maps")
    c.add_argument("--bits", type=int, required=True)
    c.add_argument("--enumerate", action="store_true", help="also enumerate exhaustively (bits <= 3)")

    k = sub.add_parser("construct", help="prescribed-coordinate constructions")
    k.add_argument("what", choices=["anyhalfper", "anyhalfper-wreath"])
    k.add_argument("--gamma", required=True, help="file with gamma_0, gamma_1, ...")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--m", type=int, default=2)
    k.add_argument("--length", type=int)

    ci = sub.add_parser("cipher", help="the toy stream cipher")
    cs = ci.add_subparsers(dest="action", required=True, parser_class=_Parser)
    kg = cs.add_parser("keygen")
    kg.add_argument("--n", type=int, required=True)
    kg.add_argument("--k", type=int, required=True)
    kg.add_argument("--monomials", type=int, required=True)
    kg.add_argument("--seed", type=int, default=0)
    st = cs.add_parser("stream")
    st.add_argument("--params", required=True)
    st.add_argument("--key", type=int, required=True)
    st.add_argument("--count", type=int, required=True)
    st.add_argument("--format", choices=["hex", "bits", "words", "testvector"], default="hex")
    for name in ("enc", "dec"):
        e = cs.add_parser(name)
        e.add_argument("--params", required=True)
        e.add_argument("--key", type=int, required=True)
        e.add_argument("--in", dest="input")
        e.add_argument("--out", dest="output")
    kp = cs.add_parser("kpa")
    kp.add_argument("--params", required=True)
    kp.add_argument("--key", type=int, required=True)
    kp.add_argument("--m", type=int, required=True)
    return p


VERBS = {"verify": cmd_verify, "gen": cmd_gen, "analyze": cmd_analyze, "count": cmd_count,
         "construct": cmd_construct, "cipher": cmd_cipher}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return VERBS[args.verb](args, out)
    except (InputError, ValueError) as err:  # parse, hypothesis and range errors included
        print(f"artifact: {err}", file=sys.stderr)
        return EXIT_USAGE
    except A.PeriodCapExceeded as err:
        print(f"artifact: {err}", file=sys.stderr)
        return EXIT_FAIL

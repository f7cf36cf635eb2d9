"""Command line: ``toric-ara {analyze,construct,glue,verify} INPUT``.

INPUT is a path to a JSON file, ``-`` for stdin, or an inline JSON object.

Exit codes: 0 success, 2 malformed input or bad flag, 3 variety invariant
violated, 4 construction preconditions fail, 5 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import jsonschema

from .analyze import analyze, default_kmax
from .construct import almost_sci_triple
from .gluing import ConstructionError, completely_p_glued, stci_pair_example35, stci_pair_prime_power
from .intlat import is_prime
from .model import Binomial, SemigroupSet, Variety, VarietyError, generator_set, normalize
from .verify import CapExceeded, FieldSpec, containment_check, equality_experiment

EXIT_SCHEMA, EXIT_INVARIANT, EXIT_CONSTRUCTION, EXIT_CAP = 2, 3, 4, 5

_int_list = {"type": "array", "items": {"type": "integer"}, "minItems": 1}

VARIETY_SCHEMAS = {
    "uniform": {
        "type": "object",
        "properties": {
            "kind": {"const": "uniform"},
            "d": {"type": "integer"},
            "a": _int_list,
            "b": _int_list,
        },
        "required": ["kind", "d", "a", "b"],
        "additionalProperties": False,
    },
    "mixed3": {
        "type": "object",
        "properties": {
            "kind": {"const": "mixed3"},
            "d": {**_int_list, "minItems": 3, "maxItems": 3},
            "a": {**_int_list, "minItems": 3, "maxItems": 3},
            "b": {**_int_list, "minItems": 3, "maxItems": 3},
        },
        "required": ["kind", "d", "a", "b"],
        "additionalProperties": False,
    },
}

KIND_SCHEMA = {
    "type": "object",
    "properties": {"kind": {"enum": sorted(VARIETY_SCHEMAS)}},
    "required": ["kind"],
}

SEMIGROUP_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"const": "semigroup"},
        "vectors": {"type": "array", "items": _int_list, "minItems": 1},
    },
    "required": ["kind", "vectors"],
    "additionalProperties": False,
}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(source: str):
    try:
        if source == "-":
            return json.load(sys.stdin)
        if source.lstrip().startswith("{"):
            return json.loads(source)
        with open(source, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_SCHEMA, f"cannot read JSON input: {exc}")


def _validate(obj, schema):
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as exc:
        where = "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in exc.absolute_path)
        raise CliError(EXIT_SCHEMA, f"schema violation at {where}: {exc.message}")


def parse_variety(obj) -> Variety:
    _validate(obj, KIND_SCHEMA)
    _validate(obj, VARIETY_SCHEMAS[obj["kind"]])
    try:
        if obj["kind"] == "uniform":
            return Variety.uniform(obj["d"], obj["a"], obj["b"])
        return Variety.mixed3(obj["d"], obj["a"], obj["b"])
    except VarietyError as exc:
        raise CliError(EXIT_INVARIANT, f"invariant violated: {exc}")


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _kmax(args) -> int:
    return args.kmax if args.kmax is not None else default_kmax()


def cmd_analyze(args) -> int:
    v = normalize(parse_variety(_load(args.input)))
    cond, evidence, report = analyze(v, _kmax(args))
    payload = {
        "variety": v.to_json(),
        "conditions": cond.to_json(),
        "gluing": {str(p): (t.to_json() if t else None) for p, t in evidence.items()},
        "ara": report.to_json(),
    }
    lines = [f"variety: {json.dumps(v.to_json())}", cond.render()]
    for p, t in evidence.items():
        lines.append(f"completely {p}-glued: " + ("certificate found" if t else f"no certificate found (k <= {_kmax(args)})"))
    lines.append(report.render())
    _emit(args, payload, "\n".join(lines))
    return 0


def _pair(v: Variety, args):
    if v.shape == "uniform":
        return "Proposition 1.3", stci_pair_prime_power(v, args.h, args.k)
    return "Example 3.5", stci_pair_example35(v)


def cmd_construct(args) -> int:
    v = normalize(parse_variety(_load(args.input)))
    try:
        if args.triple:
            res = almost_sci_triple(v, args.delta_bound)
            payload = {"construction": "triple", **res.to_json()}
            text = "\n".join([
                f"F1 = {res.f1}", f"F2 = {res.f2}", f"F3 = {res.f3}",
                f"d' = {res.dprime}, d'' = {res.dsecond}",
                f"g1 = {res.g1}, g2 = {res.g2}, e = {res.e}, delta = {res.delta}",
            ])
        else:
            rule, (f1, f2) = _pair(v, args)
            payload = {"construction": "pair", "rule": rule, "f1": f1.to_json(), "f2": f2.to_json()}
            text = f"F1 = {f1}\nF2 = {f2}"
    except ConstructionError as exc:
        raise CliError(EXIT_CONSTRUCTION, str(exc))
    _emit(args, payload, text)
    return 0


def _read_polys(path: str, n: int) -> list[Binomial]:
    data = _load(path)
    if not isinstance(data, list):
        raise CliError(EXIT_SCHEMA, "polys file must hold a JSON list")
    out = []
    try:
        for item in data:
            if isinstance(item, str):
                out.append(Binomial.parse(item, n))
            else:
                out.append(Binomial(tuple(item["plus"]), tuple(item["minus"])))
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(EXIT_SCHEMA, f"bad binomial in polys file: {exc}")
    return out


def auto_system(v: Variety) -> tuple[str, list[Binomial]]:
    """The pair when a pair construction applies, else the triple."""
    try:
        rule, pair = _pair(v, argparse.Namespace(h=None, k=None))
        return rule, list(pair)
    except ConstructionError:
        pass
    if v.shape != "uniform":
        raise ConstructionError("Theorem 2.5", "no automatic system for this mixed3 variety")
    return "Theorem 2.5", almost_sci_triple(v).binomials


def cmd_verify(args) -> int:
    if not is_prime(args.char):
        raise CliError(EXIT_SCHEMA, f"--char {args.char} is not prime")
    v = normalize(parse_variety(_load(args.input)))
    try:
        if args.auto:
            rule, polys = auto_system(v)
        else:
            rule, polys = "user", _read_polys(args.polys, v.n)
        base = FieldSpec(args.char, args.ext)
        rep = equality_experiment(v, polys, base, args.extmax)
        contained = containment_check(v, polys)
    except ConstructionError as exc:
        raise CliError(EXIT_CONSTRUCTION, str(exc))
    except CapExceeded as exc:
        raise CliError(EXIT_CAP, str(exc))
    except ValueError as exc:
        raise CliError(EXIT_SCHEMA, str(exc))
    payload = {**rep.to_json(), "system": rule, "polys": [f.to_json() for f in polys],
               "containment": contained}
    text = "\n".join([
        f"field {rep.field}, modulus {rep.modulus}, parameters up to degree-{rep.ext_max} extensions",
        "system (" + rule + "): " + ", ".join(str(f) for f in polys),
        f"containment (exact): {contained}",
        f"image points: {rep.image_count}, zero-set points: {rep.zero_count}, excess: {len(rep.excess)}",
        rep.status,
    ])
    _emit(args, payload, text)
    return 0


def cmd_glue(args) -> int:
    if not is_prime(args.prime):
        raise CliError(EXIT_SCHEMA, f"--prime {args.prime} is not prime")
    obj = _load(args.input)
    if isinstance(obj, dict) and obj.get("kind") == "semigroup":
        _validate(obj, SEMIGROUP_SCHEMA)
        dims = {len(x) for x in obj["vectors"]}
        if len(dims) != 1:
            raise CliError(EXIT_SCHEMA, "schema violation at $.vectors: vectors of different lengths")
        try:
            t = SemigroupSet(dims.pop(), tuple(tuple(x) for x in obj["vectors"]))
        except ValueError as exc:
            raise CliError(EXIT_INVARIANT, f"invariant violated: {exc}")
    else:
        t = generator_set(normalize(parse_variety(obj)))
    k_max = _kmax(args)
    tree = completely_p_glued(t, args.prime, k_max)
    msg = f"no certificate found (k <= {k_max})"
    payload = {"prime": args.prime, "k_max": k_max, "tree": tree.to_json() if tree else None}
    if tree is None:
        payload["message"] = msg
    _emit(args, payload, tree.render() if tree else msg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toric-ara", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="JSON file, '-' for stdin, or an inline JSON object")
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("analyze", help="conditions, gluing search and ara verdict")
    common(p)
    p.add_argument("--kmax", type=int, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="defining binomials")
    common(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pair", action="store_true")
    g.add_argument("--triple", action="store_true")
    p.add_argument("--h", type=int, default=None, help="y1 exponent p^h of the pair")
    p.add_argument("--k", type=int, default=None, help="y2 exponent p^k of the pair")
    p.add_argument("--delta-bound", type=int, default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("glue", help="search a complete p-gluing certificate")
    common(p)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--kmax", type=int, default=None)
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("verify", help="finite-field comparison of V and a zero set")
    common(p)
    p.add_argument("--char", type=int, required=True)
    p.add_argument("--ext", type=int, default=1, help="base field GF(char^ext)")
    p.add_argument("--extmax", type=int, default=1, help="parameters from extensions up to this degree")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--polys", help="JSON list of binomials ('y1^4 - x1^8*x3' or {plus, minus})")
    src.add_argument("--auto", action="store_true", help="use the constructed pair or triple")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands:

  compute   build or load a datum, run the recursion, write the tables
  validate  structural checks on a datum, findings to stdout
  oracle    finite-field count checks against the computed e-matrix
  selftest  the invariant battery over all small GL data plus the fixtures
  example   worked examples, expected vs computed side by side

Exit codes: 0 success, 1 input or validation problems, 2 a broken
solvability guarantee (so batch sweeps can tell mathematics from typos).
The environment variable GIC_MAX_DIM overrides the brute-force guard of the
oracle subcommand.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .datum import (
    DatumInvalid,
    ParseError,
    SignConvention,
    load_table_datum,
    validate_datum,
)
from .engine import (
    AlgorithmBroken,
    check_invariants,
    result_to_csv,
    result_to_jsonable,
    run,
)
from .oracles import OracleMismatch, TooLarge, check_e_against_counts
from .type_a import build_gl_datum, enumerate_small_data


def _builtin_path(name: str) -> str | None:
    if name.endswith(".json"):
        name = name[: -len(".json")]
    here = os.path.join(os.path.dirname(__file__), "data", f"{name}.json")
    return here if os.path.exists(here) else None


def load_source(args):
    if getattr(args, "gl", None) and getattr(args, "datum", None):
        raise ParseError("give exactly one of --gl or --datum")
    if getattr(args, "gl", None):
        spec = args.gl
        if args.flag_order == "desc" and ";flag=" not in spec:
            spec += ";flag=desc"
        return build_gl_datum(spec)
    if getattr(args, "datum", None):
        path = args.datum
        if not os.path.exists(path):
            builtin = _builtin_path(path)
            if builtin is None:
                raise ParseError(f"no such datum file or builtin: {path}")
            path = builtin
        with open(path) as fh:
            return load_table_datum(fh.read())
    raise ParseError("a datum source is required (--gl or --datum)")


def _convention(args) -> SignConvention:
    return (
        SignConvention.PLUS_V
        if args.sign_convention == "plusv"
        else SignConvention.PRINTED_MINUS_V
    )


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_compute(args) -> int:
    datum = load_source(args)
    result = run(datum, _convention(args))
    if args.format == "csv":
        text = result_to_csv(result, args.n)
    else:
        text = json.dumps(
            result_to_jsonable(result, args.n), indent=1, sort_keys=True
        ) + "\n"
    _emit(text, args.out)
    return 0


def cmd_validate(args) -> int:
    datum = load_source(args)
    findings = validate_datum(datum)
    for f in findings:
        print(f"finding: {f}")
    if not findings:
        print(f"ok: {datum.name} passes all structural checks")
    return 1 if findings else 0


def cmd_oracle(args) -> int:
    datum = load_source(args)
    result = run(datum, _convention(args))
    guard = int(os.environ.get("GIC_MAX_DIM", "6"))
    findings = []
    skipped = []
    for q in args.q:
        try:
            findings += check_e_against_counts(result, q, max_dim=guard)
        except TooLarge as exc:
            skipped.append({"q": q, "skipped": str(exc)})
    for item in skipped:
        print(json.dumps(item, sort_keys=True))
    for f in findings:
        print(json.dumps({"finding": f}, sort_keys=True))
    if not findings and not skipped:
        print(json.dumps({"ok": datum.name, "q": args.q}, sort_keys=True))
    return 1 if findings else 0


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    conv = _convention(args)
    guard = int(os.environ.get("GIC_MAX_DIM", "6"))
    cache: dict = {}
    findings: list[str] = []
    skipped: list[str] = []
    checked = 0

    specs = enumerate_small_data(min(args.depth, 5))
    if args.depth > 5:
        skipped.append(
            f"depth {args.depth} capped at 5 by the enumeration guard"
        )
    for spec in specs:
        for n in (1, 2):
            name = f"{spec};n={n}"
            datum = build_gl_datum(name)
            findings += [f"{name}: {f}" for f in validate_datum(datum)]
            try:
                result = run(datum, conv, cache=cache)
            except AlgorithmBroken as exc:
                findings.append(f"{name}: {exc}")
                continue
            findings += [f"{name}: {f}" for f in check_invariants(result)]
            total = sum(len(f) for f in datum.type_a_factors)
            if total <= min(4, guard):
                q = rng.choice((2, 3))
                try:
                    findings += [
                        f"{name}: {f}"
                        for f in check_e_against_counts(result, q, max_dim=guard)
                    ]
                except TooLarge as exc:
                    skipped.append(f"{name}: {exc}")
            else:
                skipped.append(f"{name}: oracle skipped beyond the guard")
            checked += 1
            print(f"checked {name}: {'ok' if not findings else 'see findings'}")

    for builtin in ("sp4", "sp4_full"):
        path = _builtin_path(builtin)
        with open(path) as fh:
            datum = load_table_datum(fh.read())
        findings += [f"{builtin}: {f}" for f in validate_datum(datum)]
        try:
            result = run(datum, conv, cache=cache)
            findings += [f"{builtin}: {f}" for f in check_invariants(result)]
        except AlgorithmBroken as exc:
            findings.append(f"{builtin}: {exc}")
        checked += 1
        print(f"checked {builtin}")

    for s in skipped:
        print(f"skipped: {s}")
    for f in findings:
        print(f"finding: {f}")
    print(f"selftest: {checked} data checked, {len(findings)} findings, "
          f"{len(skipped)} skipped")
    return 1 if findings else 0


_EXAMPLES = {
    "a1": {
        "source": ("gl", "glq:0,1;n=1"),
        "expected": {
            "f-matrix": [["1", "v"], ["0", "1"]],
            "rows": "open orbit first, then the point orbit",
        },
    },
    "a001": {
        "source": ("gl", "glq:0,0,1;n=1"),
        "expected": {
            "f-matrix": [["1", "v^2"], ["0", "1"]],
            "rows": "open orbit first, then the point orbit",
        },
    },
    "sp4": {
        "source": ("datum", "sp4"),
        "expected": {
            "order chain": "o0 < o2 < o3(triv) < o3(twisted)",
            "L-table": "L[o2] = o2 + o0, L[o3 twisted] = itself + o3(triv)",
            "fourier": "o0 <-> o3(triv), o2 <-> o3(twisted)",
        },
    },
}


def cmd_example(args) -> int:
    info = _EXAMPLES[args.name]
    ns = argparse.Namespace(
        gl=None, datum=None, flag_order="asc", sign_convention="plusv"
    )
    kind, value = info["source"]
    setattr(ns, kind, value)
    datum = load_source(ns)
    result = run(datum, SignConvention.PLUS_V)
    n = datum.delta[0]
    side = result.sides[n]
    print(f"example {args.name}: datum {datum.name}, degree {n}")
    print("expected:")
    for k, v in info["expected"].items():
        print(f"  {k}: {v}")
    print("computed f-matrix (rows by descending orbit dimension):")
    for i, el in enumerate(side.z):
        print(f"  {el.key}: " + ", ".join(str(p) for p in side.c[i]))
    print("computed order (strict pairs):")
    for a, b in sorted(p for p in side.order if p[0] != p[1]):
        print(f"  {a} < {b}")
    print("computed fourier pairs:")
    for a, b in sorted(result.fourier[n].items()):
        print(f"  {a} <-> {b}")
    print("computed L-table (rows over the bar-fixed basis):")
    for el in side.z:
        ent = side.ltable[el.key]
        terms = [
            f"{p if str(p) != '1' else ''}[{side.z[j].key}]"
            for j, p in enumerate(ent.coords_w)
            if p
        ]
        print(f"  L[{el.key}] = " + " + ".join(terms))
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gic",
        description="exact multiplicity tables for graded nilpotent orbit data",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def source_args(p):
        p.add_argument("--gl", help="builder spec, e.g. glq:0,1;n=1")
        p.add_argument("--datum", help="table-datum file or builtin name")
        p.add_argument(
            "--sign-convention", choices=("plusv", "printed"), default="plusv"
        )
        p.add_argument("--flag-order", choices=("asc", "desc"), default="asc")

    p = sub.add_parser("compute", help="run the recursion and write tables")
    source_args(p)
    p.add_argument("--n", type=int, default=None, help="restrict to one degree")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("validate", help="structural checks on a datum")
    source_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle", help="finite-field count checks")
    source_args(p)
    p.add_argument("--q", type=int, nargs="*", default=[2, 3])
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("selftest", help="invariant battery over small data")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--sign-convention", choices=("plusv", "printed"), default="plusv"
    )
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("example", help="worked examples")
    p.add_argument("name", choices=sorted(_EXAMPLES))
    p.set_defaults(func=cmd_example)

    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, DatumInvalid, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AlgorithmBroken as exc:
        print(f"broken: step [{exc.step}] {exc.context}", file=sys.stderr)
        return 2
    except OracleMismatch as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface.

Verbs: construct, validate, classify, reduce, params, simulate, sweep.
Array text flows through --in/--out (default stdin/stdout, so the verbs
compose in pipes); diagnostics that would corrupt a piped array go to
stderr. Structured output is line-oriented `key=value` by default or JSON
with --format json; exact rationals print as `num/den` either way.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis, sim
from .constructions import ConstructionParams, RULE_I, RULE_II, construct, mn_pda
from .pda import PdaError, classify_stars, parse, reduce, serialize, validate


def _fmt_value(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt_value(x) for x in v)
    return str(v)


def _emit(doc: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        jsonable = {k: _fmt_value(v) if isinstance(v, (Fraction, tuple)) else v
                    for k, v in doc.items()}
        print(json.dumps(jsonable), file=out)
    else:
        for k, v in doc.items():
            print(f"{k}={_fmt_value(v)}", file=out)


def _fail(message: str, fmt: str) -> int:
    _emit({"error": message}, fmt, out=sys.stderr)
    return 1


def _read_array(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse(text)


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _add_hrbl(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--H", type=int, required=required)
    p.add_argument("--r", type=int, required=required)
    p.add_argument("--b", type=int, required=required)
    p.add_argument("--lambda", dest="lam", type=int, required=required)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="pdacache",
                                  description="coded caching from placement delivery arrays")
    sub = top.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("construct", help="generate an array")
    p.add_argument("--family", choices=["rule1", "rule2", "mn"], required=True)
    _add_hrbl(p, required=False)
    p.add_argument("--K", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=["kv", "json"], default="kv")

    p = sub.add_parser("validate", help="check C1-C3 and print parameters")
    p.add_argument("--in", dest="infile", default="-")
    p.add_argument("--format", choices=["kv", "json"], default="kv")

    p = sub.add_parser("classify", help="classify stars as useful or useless")
    p.add_argument("--in", dest="infile", default="-")
    p.add_argument("--format", choices=["kv", "json"], default="kv")

    p = sub.add_parser("reduce", help="blank useless stars")
    p.add_argument("--in", dest="infile", default="-")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=["kv", "json"], default="kv")

    p = sub.add_parser("params", help="closed-form scheme parameters")
    p.add_argument("--scheme", choices=["original", "new1", "new2"], required=True)
    _add_hrbl(p, required=True)
    p.add_argument("--format", choices=["kv", "json"], default="kv")

    p = sub.add_parser("simulate", help="place, deliver, decode, verify")
    p.add_argument("--in", dest="infile", default="-")
    p.add_argument("--mode", choices=[sim.UNCODED, sim.CODED], required=True)
    p.add_argument("--N", type=int)
    p.add_argument("--file-len", type=int, default=1024)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--files-dir", help="load the library from a directory instead")
    p.add_argument("--request", help="comma-separated file index per user "
                                     "(default: user k requests file k)")
    p.add_argument("--format", choices=["kv", "json"], default="kv")

    p = sub.add_parser("sweep", help="scheme records over all (b, lambda)")
    p.add_argument("--H", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--csv", help="write records here instead of stdout")
    p.add_argument("--svg", help="also render a rate vs memory chart")
    return top


def _cmd_construct(args) -> int:
    if args.family == "mn":
        if args.K is None or args.t is None:
            return _fail("family mn needs --K and --t", args.format)
        pda = mn_pda(args.K, args.t)
    else:
        if None in (args.H, args.r, args.b, args.lam):
            return _fail(f"family {args.family} needs --H --r --b --lambda", args.format)
        rule = RULE_I if args.family == "rule1" else RULE_II
        pda = construct(ConstructionParams(args.H, args.r, args.b, args.lam, rule))
    _write_text(args.out, serialize(pda))
    return 0


def _cmd_validate(args) -> int:
    params = validate(_read_array(args.infile))
    _emit({"K": params.K, "F": params.F, "Z": params.Z, "S": params.S,
           "gain_profile": params.gain_profile}, args.format)
    return 0


def _cmd_classify(args) -> int:
    pda = _read_array(args.infile)
    validate(pda)
    cls = classify_stars(pda)
    _emit({
        "useful": len(cls.useful),
        "useless": len(cls.useless),
        "per_column_useless": cls.per_column_useless,
        "useless_positions": [f"({j};{k})" for j, k in sorted(cls.useless)],
    }, args.format)
    return 0


def _cmd_reduce(args) -> int:
    pda = _read_array(args.infile)
    validate(pda)
    reduced, zprime = reduce(pda)
    _write_text(args.out, serialize(reduced))
    # keep stdout pipe-clean when the array goes there
    _emit({"zprime": zprime}, args.format,
          out=sys.stderr if args.out == "-" else sys.stdout)
    return 0


def _cmd_params(args) -> int:
    fn = {"original": analysis.original_params, "new1": analysis.new_params_I,
          "new2": analysis.new_params_II}[args.scheme]
    rec = fn(args.H, args.r, args.b, args.lam)
    _emit({"scheme": rec.scheme, "H": rec.H, "r": rec.r, "b": rec.b,
           "lambda": rec.lam, "K": rec.K, "memory_ratio": rec.memory_ratio,
           "rate": rec.rate, "subpacketization": rec.subpacketization},
          args.format)
    return 0


def _cmd_simulate(args) -> int:
    pda = _read_array(args.infile)
    if args.files_dir:
        library = sim.Library.from_dir(args.files_dir)
    else:
        n = args.N if args.N is not None else pda.K
        library = sim.Library.seeded(n, args.file_len, args.seed)
    if args.request:
        requests = [int(x) for x in args.request.split(",")]
    else:
        if library.N < pda.K:
            return _fail(f"default request needs N >= K "
                         f"({library.N} < {pda.K}); pass --request", args.format)
        requests = list(range(pda.K))
    report = sim.run_and_verify(pda, library, requests, args.mode)
    _emit(report, args.format)
    return 0 if report["ok"] else 1


def _cmd_sweep(args) -> int:
    records = analysis.sweep(args.H, args.r)
    text = analysis.records_to_csv(records)
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    if args.svg:
        Path(args.svg).write_text(analysis.render_svg(records))
    return 0


_COMMANDS = {
    "construct": _cmd_construct,
    "validate": _cmd_validate,
    "classify": _cmd_classify,
    "reduce": _cmd_reduce,
    "params": _cmd_params,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    fmt = getattr(args, "format", "kv")
    try:
        return _COMMANDS[args.verb](args)
    except (PdaError, ValueError, LookupError, OSError) as exc:
        return _fail(str(exc), fmt)


if __name__ == "__main__":
    sys.exit(main())

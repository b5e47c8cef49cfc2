"""Command-line interface.

Every subcommand prints one JSON document (or CSV for ``sample``) on stdout.
Exit codes: 0 when the object was produced or the check passed, 1 when a
check failed (the payload then describes the violations), 2 for usage,
input or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import jsonschema

from . import constructions as cons
from .errors import WaveletError
from .oracle import frequency_graph, frequency_samples, gram_matrix, sample_series
from .schema import load_step_function
from .verify import check_sn_characterization, class_from_overlaps, hit_table, overlap_sets, verify_wavelet

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FAMILIES = ("gamma", "psi", "w", "shannon", "random")
DEFAULT_MAX_N = 64

# options whose values may start with '-' (e.g. "--j -2:2")
_RANGE_OPTIONS = ("--j", "--k", "--range")


class UsageError(Exception):
    pass


def _dump(payload, pretty: bool) -> str:
    if pretty:
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_function(path: str):
    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return load_step_function(doc)
    except jsonschema.ValidationError as exc:
        raise UsageError(f"{path} is not a valid step-function document: {exc.message}") from exc


def _check_n(n: int | None, args, need: int = 3) -> int:
    if n is None:
        raise UsageError("this family needs n")
    if n < need:
        raise UsageError(f"n must be >= {need}, got {n}")
    if n > args.max_n:
        raise UsageError(f"n={n} exceeds --max-n {args.max_n}")
    return n


def _int_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from exc


def _frac_range(text: str) -> tuple[Fraction, Fraction]:
    try:
        lo, hi = text.split(":")
        return Fraction(lo), Fraction(hi)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from exc


def cmd_construct(args) -> int:
    fam = args.family
    if fam == "shannon":
        f = cons.shannon()
    elif fam == "random":
        if args.seed is None:
            raise UsageError("the random family needs an explicit --seed")
        f = cons.random_sn_wavelet(_check_n(args.n, args), args.cells, args.seed)
    else:
        builder = {"gamma": cons.gamma_n, "psi": cons.psi_n, "w": cons.w_n}[fam]
        f = builder(_check_n(args.n, args))
    _emit(_dump(f.to_json(), args.pretty), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_wavelet(_read_function(args.input))
    _emit(_dump(report.to_json(), args.pretty), args.out)
    return EXIT_OK if report.overall else EXIT_FAIL


def cmd_classify(args) -> int:
    f = _read_function(args.input)
    report = verify_wavelet(f)
    if not report.overall:
        _emit(_dump({"error": "not a wavelet", "verification": report.to_json()}, args.pretty), args.out)
        return EXIT_FAIL
    label = class_from_overlaps(overlap_sets(f).indices)
    _emit(_dump(label.to_json(), args.pretty), args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    table = hit_table(_read_function(args.input))
    _emit(_dump(table.to_json(), args.pretty), args.out)
    return EXIT_OK


def cmd_sncheck(args) -> int:
    f = _read_function(args.input)
    report = check_sn_characterization(f, _check_n(args.n, args, need=2))
    _emit(_dump(report.to_json(), args.pretty), args.out)
    return EXIT_OK if report.all_ok else EXIT_FAIL


def cmd_gram(args) -> int:
    result = gram_matrix(_read_function(args.input), args.j, args.k)
    _emit(_dump(result.to_json(), args.pretty), args.out)
    if args.tol is not None and result.max_deviation > args.tol:
        return EXIT_FAIL
    return EXIT_OK


def cmd_sample(args) -> int:
    f = _read_function(args.input)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if args.domain == "time":
        lo, hi = args.range if args.range else (Fraction(-20), Fraction(20))
        writer.writerow(["x", "re", "im"])
        for x, re, im in sample_series(f, float(lo), float(hi), args.count or 801):
            writer.writerow([repr(x), repr(re), repr(im)])
    else:
        if args.count:
            if not args.range:
                raise UsageError("frequency sampling with --count needs --range")
            rows = frequency_samples(f, args.range[0], args.range[1], args.count)
        else:
            rows = frequency_graph(f)
        writer.writerow(["xi_over_pi", "value_a", "value_b", "value_float"])
        for xi, v in rows:
            writer.writerow([str(xi), str(v.a), str(v.b), repr(float(v))])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to FILE instead of stdout")
    common.add_argument("--pretty", action="store_true", help="indent JSON output")
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, dest="max_n")

    parser = argparse.ArgumentParser(prog="tiwave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="emit a wavelet's Fourier transform as JSON")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--seed", type=int)
    p.add_argument("--cells", type=int, default=4)
    p.set_defaults(func=cmd_construct)

    for name, func, text in (
        ("verify", cmd_verify, "exact orthonormal-wavelet check"),
        ("classify", cmd_classify, "translation-invariance class M_n"),
        ("table", cmd_table, "translate/dilate hit table"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("input", help="step-function JSON file, or - for stdin")
        p.set_defaults(func=func)

    p = sub.add_parser("sncheck", parents=[common], help="conditions (i)-(v) for support in S_n")
    p.add_argument("input")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_sncheck)

    p = sub.add_parser("gram", parents=[common], help="numeric Gram matrix of the dilate-translate system")
    p.add_argument("input")
    p.add_argument("--j", type=_int_range, default=(-2, 2), metavar="LO:HI")
    p.add_argument("--k", type=_int_range, default=(-4, 4), metavar="LO:HI")
    p.add_argument("--tol", type=float, help="exit 1 if the deviation from identity exceeds TOL")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("sample", parents=[common], help="CSV samples in time or frequency")
    p.add_argument("input")
    p.add_argument("--domain", choices=("time", "freq"), default="time")
    p.add_argument("--range", type=_frac_range, metavar="LO:HI",
                   help="x range (time) or xi/pi range (freq)")
    p.add_argument("--count", type=int)
    p.set_defaults(func=cmd_sample)
    return parser


def _join_range_values(argv: list[str]) -> list[str]:
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _RANGE_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = _join_range_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, WaveletError, ValueError) as exc:
        print(f"tiwave: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``partalg <subcommand> ...``.

Exit codes: 0 success or pass, 1 a verdict failed, 2 bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from .acceptance import selftest_report
from .algebra import element_json_dumps, multiply, parse_element
from .errors import HypothesisViolationError, PartitionAlgebraError
from .fields import parse_field
from .lab import build_foulkes_factorization, build_foulkes_split, build_phi, build_psi, build_theta
from .partitions import bell_number, class_signature, enumerate_classes, enumerate_diagrams, format_blocks
from .perm import parse_partition
from .pipeline import SCHEMA_VERSION, verify_theorem
from .symgroup import character_table_csv

LEMMAS = {
    "psi": build_psi,
    "theta": build_theta,
    "phi": build_phi,
    "foulkes-product": build_foulkes_factorization,
}


def _field_arg(text: str):
    try:
        return parse_field(text)
    except PartitionAlgebraError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _partition_arg(text: str):
    try:
        return parse_partition(text)
    except (PartitionAlgebraError, ValueError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a partition (use e.g. 2,1)") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"{value} is negative")
    return value


def _delta(parser, args):
    """Parse ``--delta`` in the chosen field; ``p:<residue>`` is accepted for prime fields."""
    text = args.delta.split(":", 1)[1] if args.delta.startswith("p:") else args.delta
    try:
        return args.field.parse(text)
    except (PartitionAlgebraError, ValueError, ZeroDivisionError) as exc:
        parser.error(f"argument --delta: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partalg", description="Exact computations in partition algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("multiply", help="multiply two algebra elements")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--delta", default="1")
    p.add_argument("--field", type=_field_arg, default="Q")
    p.add_argument("--json", action="store_true", help="print the JSON form")

    p = sub.add_parser("enumerate", help="list the diagram basis")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("classes", help="orbit representatives of partial diagrams")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)

    p = sub.add_parser("characters", help="character table of Sym(n) as CSV")
    p.add_argument("--n", type=_positive, required=True)

    p = sub.add_parser("verify-lemma", help="certify one of the bimodule isomorphisms")
    p.add_argument("--which", choices=sorted(LEMMAS) + ["foulkes"], required=True)
    p.add_argument("--r", type=_positive)
    p.add_argument("--l", type=_positive)
    p.add_argument("--n", type=_positive)
    p.add_argument("--class", dest="class_index", type=_positive)
    p.add_argument("--a", type=_positive)
    p.add_argument("--m", type=_positive)
    p.add_argument("--field", type=_field_arg, default="Q")

    p = sub.add_parser("restrict", help="compare multiplicity tables of a restricted cell module")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--nu", type=_partition_arg, required=True)
    p.add_argument("--delta", default="1")
    p.add_argument("--field", type=_field_arg, default="Q")
    p.add_argument("--json", dest="json_path", help="write the JSON report to this file")
    p.add_argument("--csv", dest="csv_path", help="write the CSV table to this file")
    p.add_argument("--dual-labels", action="store_true", help="relabel partitions by their conjugates")

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=42)
    return parser


def _cmd_multiply(args, parser, out):
    delta = _delta(parser, args)
    try:
        a = parse_element(args.left, args.r, delta, args.field)
        b = parse_element(args.right, args.r, delta, args.field)
    except PartitionAlgebraError as exc:
        parser.error(f"could not parse an element: {exc}")
    product = multiply(a, b)
    out.write((element_json_dumps(product) if args.json else str(product)) + "\n")
    return 0


def _cmd_enumerate(args, parser, out):
    if args.count_only:
        out.write(f"{bell_number(2 * args.r)}\n")
        return 0
    for d in enumerate_diagrams(args.r):
        out.write(format_blocks(d.blocks, d.r) + "\n")
    return 0


def _cmd_classes(args, parser, out):
    for k, v in enumerate(enumerate_classes(args.r, args.l, args.n)):
        out.write(f"{k}\t{class_signature(v, args.l)}\t{v}\n")
    return 0


def _cmd_characters(args, parser, out):
    out.write(character_table_csv(args.n))
    return 0


def _cmd_verify_lemma(args, parser, out):
    if args.which == "foulkes":
        if args.a is None or args.m is None:
            parser.error("argument --a/--m: both are required for --which foulkes")
        try:
            split = build_foulkes_split(args.a, args.m, args.field, strict=False)
        except HypothesisViolationError as exc:
            parser.error(f"argument --field: {exc}")
        report = {
            "schema_version": SCHEMA_VERSION,
            "which": "foulkes",
            "params": {"a": args.a, "m": args.m, "field": args.field.name},
            "certificates": [split.certificate.to_json()],
        }
        passed = split.certificate.passed
    else:
        for flag in ("r", "l", "n"):
            if getattr(args, flag) is None:
                parser.error(f"argument --{flag}: required for --which {args.which}")
        classes = enumerate_classes(args.r, args.l, args.n)
        indices = range(len(classes)) if args.class_index is None else [args.class_index]
        certs = []
        for k in indices:
            if k >= len(classes):
                parser.error(f"argument --class: index {k} out of range (there are {len(classes)} classes)")
            v = classes[k]
            cert = LEMMAS[args.which](v, args.r, args.l, args.n, args.field, strict=False).certificate
            certs.append({"class_index": k, "representative": str(v),
                          "signature": str(class_signature(v, args.l)), "certificate": cert.to_json()})
        report = {
            "schema_version": SCHEMA_VERSION,
            "which": args.which,
            "params": {"r": args.r, "l": args.l, "n": args.n, "field": args.field.name},
            "certificates": certs,
        }
        passed = all(c["certificate"]["verdict"] == "pass" for c in certs)
    report["verdict"] = "pass" if passed else "fail"
    out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return 0 if passed else 1


def _cmd_restrict(args, parser, out):
    delta = _delta(parser, args)
    if sum(args.nu) != args.n:
        parser.error(f"argument --nu: {args.nu} is not a partition of n={args.n}")
    report = verify_theorem(args.r, args.l, args.n, args.nu, delta, args.field)
    if args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(report.dumps(args.dual_labels) + "\n")
    if args.csv_path:
        with open(args.csv_path, "w") as fh:
            fh.write(report.to_csv(args.dual_labels))
    out.write(report.to_text() + "\n")
    return 0 if report.verdict == "pass" else 1


def _cmd_selftest(args, parser, out):
    passed, text = selftest_report(args.seed)
    out.write(text)
    return 0 if passed else 1


COMMANDS = {
    "multiply": _cmd_multiply,
    "enumerate": _cmd_enumerate,
    "classes": _cmd_classes,
    "characters": _cmd_characters,
    "verify-lemma": _cmd_verify_lemma,
    "restrict": _cmd_restrict,
    "selftest": _cmd_selftest,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser, out)
    except PartitionAlgebraError as exc:
        sys.stderr.write(f"partalg: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: run, paths, wp, verify, hnn-reduce, reduce, figure1, examples,
selftest.  Exit codes: 0 on success or agreement, 1 on disagreement, failed
verification or an unproved word, 2 on usage errors.  All randomized
behavior derives from --seed, and fixed (inputs, seed, fuel) give
byte-identical reports; --format jsonl emits line-delimited records for
diffing in CI.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .britton import bs12_structure, britton_reduce, commuting_structure, hnn_is_identity
from .machine import parse_program, run
from .presentations import (Certificate, load_presentation, verify_certificate,
                            wp_semidecide)
from .programs import ALL_PROGRAMS
from .rationals import format_vec, parse_vec
from .reduction import build_W, check_reduction, l_reachability_check, reduce_halting, w_membership
from .sample_groups import BUILTIN_PRESENTATIONS, ORACLES
from .selftest import ALL_CHECKS
from .slp import PathEnumerator
from .words import format_word, free_reduce, nielsen_decompose, parse_word
from . import selftest as _selftest_mod


def _load_program(spec: str):
    if spec in ALL_PROGRAMS:
        return ALL_PROGRAMS[spec]()
    with open(spec) as fh:
        return parse_program(fh.read())


def _load_presentation_arg(spec: str):
    if spec in BUILTIN_PRESENTATIONS:
        return BUILTIN_PRESENTATIONS[spec]()
    return load_presentation(spec)


def _emit(records, fmt: str):
    if fmt == "jsonl":
        for rec in records:
            print(json.dumps(rec, sort_keys=True))
    else:
        for rec in records:
            print("  ".join(f"{k}={v}" for k, v in rec.items()))


def cmd_run(args) -> int:
    prog = _load_program(args.program)
    vec = parse_vec(args.input)
    res = run(prog, vec, args.fuel, record_trace=False)
    rec = {"status": res.status, "steps": res.steps}
    if res.output is not None:
        rec["output"] = format_vec(res.trimmed_output)
    _emit([rec], args.format)
    return 0


def cmd_paths(args) -> int:
    prog = _load_program(args.program)
    en = PathEnumerator(prog)
    records = []
    n = 0
    while len(records) < args.count and n <= args.max_index:
        path = en.path(n)
        if path is not None:
            records.append({"index": n, "d": path.d, "D": path.D,
                            "guards": path.guard_string,
                            "ops": " ".join(op[0] for op in path.ops)})
        n += 1
    _emit(records, args.format)
    return 0


def cmd_wp(args) -> int:
    p = _load_presentation_arg(args.presentation)
    w = parse_word(args.word)
    cert = wp_semidecide(p, w, args.fuel)
    if cert is None:
        print("UNKNOWN")
        return 1
    with open(args.cert_out, "w") as fh:
        json.dump(cert.to_json(), fh, indent=2)
    print(f"PROVED n={len(cert.entries)} certificate={args.cert_out}")
    return 0


def cmd_verify(args) -> int:
    p = _load_presentation_arg(args.presentation)
    w = parse_word(args.word)
    with open(args.cert) as fh:
        cert = Certificate.from_json(json.load(fh))
    ok = verify_certificate(p, w, cert)
    print("VERIFIED" if ok else "REJECTED")
    return 0 if ok else 1


_STRUCTURES = {
    "bs12": bs12_structure,
}


def _halfline_structure():
    # commuting extension over the pattern words with nonnegative first entry
    def member(g, idx=()):
        dec = nielsen_decompose(g)
        return dec is not None and all(len(v) >= 1 and v[0] >= 0 for _, v in dec)
    return commuting_structure(lambda w: len(free_reduce(w)) == 0, "t", member)


_STRUCTURES["halfline"] = _halfline_structure


def cmd_hnn_reduce(args) -> int:
    h = _STRUCTURES[args.structure]()
    w = parse_word(args.word)
    reduced = britton_reduce(h, w)
    identity = hnn_is_identity(h, w)
    _emit([{"reduced": format_word(reduced), "identity": identity}], args.format)
    return 0


def cmd_reduce(args) -> int:
    prog = _load_program(args.program)
    vec = parse_vec(args.input)
    query, comm = reduce_halting(prog, vec)
    report = check_reduction(prog, [vec], args.fuel)[0]
    _emit([{"query": format_word(query),
            "commutator": format_word(comm),
            "simulated": report["simulated"],
            "group": report["group"],
            "agree": report["agree"]}], args.format)
    return 0 if report["agree"] else 1


def cmd_figure1(args) -> int:
    rng = random.Random(args.seed)
    kinds = {"copy": "copy", "const": "assign", "add": "add", "neg": "neg",
             "mul": "mul", "inv": "inv", "geq": "geq", "lt": "lt"}
    if args.row not in kinds:
        print(f"unknown row {args.row!r}; choose from {sorted(kinds)}", file=sys.stderr)
        return 2
    kind = kinds[args.row]
    from .words import encode_w
    bad = 0
    done = 0
    while done < args.samples:
        D, cases = _selftest_mod._row_cases(rng)
        op = next(c for c in cases if c[0] == kind)
        spec = build_W(op, 0, D)
        vec = _selftest_mod._positive_sample(spec, rng)
        done += 1
        ok = (spec.w_pred.eval(vec) and w_membership(spec, encode_w(vec))
              and l_reachability_check(spec, encode_w(vec)))
        if not ok:
            bad += 1
    _emit([{"row": args.row, "samples": done, "failures": bad}], args.format)
    return 0 if bad == 0 else 1


def cmd_examples(args) -> int:
    oracle = ORACLES[args.group]
    w = parse_word(args.word)
    verdict = oracle(w)
    _emit([{"group": args.group, "word": format_word(w), "identity": verdict}],
          args.format)
    return 0


def cmd_selftest(args) -> int:
    checks = ALL_CHECKS
    if args.only:
        checks = [c for c in ALL_CHECKS if args.only in c.__name__]
        if not checks:
            print(f"no check matches {args.only!r}", file=sys.stderr)
            return 2
    ok = True
    for check in checks:
        result = check(args.seed)
        ok = ok and result.passed
        print(f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="realword", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "jsonl"), default="text")

    p = sub.add_parser("run", help="simulate a machine program")
    p.add_argument("program", help="assembly file or builtin name")
    p.add_argument("--input", default="", help="comma-separated rationals")
    p.add_argument("--fuel", type=int, default=1000)
    common(p)
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("paths", help="enumerate straight-line halting paths")
    p.add_argument("program")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--max-index", type=int, default=100_000)
    common(p)
    p.set_defaults(fn=cmd_paths)

    p = sub.add_parser("wp", help="search a triviality certificate")
    p.add_argument("presentation", help="JSON file or builtin name")
    p.add_argument("--word", required=True)
    p.add_argument("--fuel", type=int, default=100_000)
    p.add_argument("--cert-out", default="certificate.json")
    common(p)
    p.set_defaults(fn=cmd_wp)

    p = sub.add_parser("verify", help="replay a certificate")
    p.add_argument("presentation")
    p.add_argument("--word", required=True)
    p.add_argument("--cert", required=True)
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("hnn-reduce", help="pinch-eliminate in a builtin extension")
    p.add_argument("--structure", choices=sorted(_STRUCTURES), default="bs12")
    p.add_argument("--word", required=True)
    common(p)
    p.set_defaults(fn=cmd_hnn_reduce)

    p = sub.add_parser("reduce", help="halting query vs group membership")
    p.add_argument("program")
    p.add_argument("--input", default="")
    p.add_argument("--fuel", type=int, default=10_000)
    common(p)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("figure1", help="operation-table coherence suite")
    p.add_argument("--row", required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(fn=cmd_figure1)

    p = sub.add_parser("examples", help="query a builtin group oracle")
    p.add_argument("group", choices=sorted(ORACLES))
    p.add_argument("--word", required=True)
    common(p)
    p.set_defaults(fn=cmd_examples)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--only", help="substring of a single check to run")
    common(p)
    p.set_defaults(fn=cmd_selftest)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""``gracelab`` command line.

Exit codes: 0 found/verified, 1 not found or counterexample, 2 usage error.
Records go to stdout as JSON lines unless ``--output`` names a file.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from gracelab import certificate, labeling, monoid, verify
from gracelab.endograph import EndoFunction
from gracelab.monoid import Permutation

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_function(text: str, flag: str = "--f") -> EndoFunction:
    try:
        return EndoFunction.from_json(text)
    except (ValueError, TypeError) as exc:  # json.JSONDecodeError is a ValueError
        raise UsageError(f"{flag}: {exc}") from None


def _parse_permutation(text: str, flag: str) -> Permutation:
    f = _parse_function(text, flag)
    try:
        return Permutation(f.values)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        vals = json.loads(text)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None
    if not isinstance(vals, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in vals):
        raise UsageError(f"{flag}: expected a JSON list of integers")
    return tuple(vals)


def _emit(records: Sequence[dict], output: str | None) -> None:
    lines = "".join(json.dumps(r) + "\n" for r in records)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(lines)
    else:
        sys.stdout.write(lines)


def cmd_enumerate(args) -> int:
    if args.kind == "grl":
        if args.f is None:
            raise UsageError("enumerate grl needs --f")
        f = _parse_function(args.f)
        if f.n > labeling.EXHAUSTIVE_MAX_N:
            raise UsageError(f"grl enumeration supports n <= {labeling.EXHAUSTIVE_MAX_N}")
        records = [g.to_json() for g in labeling.enumerate_grl(f).graphs]
    else:
        if args.n is None or args.n < 1:
            raise UsageError("--n must be a positive integer")
        if args.n > 10:
            raise UsageError("enumeration supports n <= 10")
        gen = monoid.enumerate_tree_functions if args.kind == "trees" else monoid.enumerate_forest_functions
        records = [t.to_json() for t in gen(args.n)]
    _emit(records, args.output)
    print(f"count: {len(records)}", file=sys.stderr)
    return EXIT_OK


def cmd_search(args) -> int:
    f = _parse_function(args.f)
    if args.extrema:
        try:
            ext = labeling.distinct_label_extrema(f, samples=args.samples, seed=args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _emit([{
            "f": list(f.values),
            "min": ext.min,
            "argmin": list(ext.argmin.values),
            "max": ext.max,
            "argmax": list(ext.argmax.values),
            "exhaustive": ext.exhaustive,
        }], args.output)
        return EXIT_OK
    if args.sequence is not None and args.star is not None:
        raise UsageError("--sequence and --star are exclusive")
    target = None
    if args.sequence is not None:
        target = _parse_int_list(args.sequence, "--sequence")
    elif args.star is not None:
        try:
            target = labeling.star_sequence(f.n, args.star)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        if target is not None:
            res = labeling.realizes_sequence(f, target, exhaustive=args.exhaustive)
        else:
            res = labeling.search_graceful(f, exhaustive=args.exhaustive)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    record = {"f": list(f.values), "found": res.found, "nodes_explored": res.nodes_explored}
    if target is not None:
        record["target"] = list(target)
    if res.found:
        record["witness"] = list(res.witness.values)
        record["labels"] = list(labeling.edge_labels(f, res.witness))
    if res.solution_count is not None:
        record["solution_count"] = res.solution_count
    _emit([record], args.output)
    return EXIT_OK if res.found else EXIT_FAIL


def cmd_verify(args) -> int:
    jobs = args.jobs if args.jobs is not None else verify.default_jobs()
    if jobs < 1:
        raise UsageError("--jobs must be positive")
    names = verify.ALL_ORDER if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        try:
            reports.append(verify.run_suite(name, args.n, args.n_max, jobs=jobs, ell=args.ell))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print(reports[-1].summary())
    if args.output:
        if len(reports) == 1:
            text = reports[0].dumps()
        else:
            body = {"passed": all(r.passed for r in reports), "reports": [r.to_json() for r in reports]}
            text = json.dumps(body, indent=2, sort_keys=True) + "\n"
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_expand(args) -> int:
    f = _parse_function(args.f)
    sigma = _parse_permutation(args.sigma, "--sigma")
    if sigma.n != f.n:
        raise UsageError("--f and --sigma differ in length")
    if not labeling.is_graceful(f, sigma):
        _emit([{"f": list(f.values), "sigma": list(sigma.values), "graceful": False}], args.output)
        return EXIT_FAIL
    e = certificate.extract_expansion(f, sigma)
    ok = certificate.verify_expansion(e, f)
    _emit([{"f": list(f.values), **e.to_json(), "verified": ok}], args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_certify(args) -> int:
    f = _parse_function(args.f)
    if (args.t is None) == (args.ell is None):
        raise UsageError("give exactly one of --t or --ell")
    try:
        if args.t is not None:
            if args.g is None:
                raise UsageError("--t needs --g")
            res = certificate.center_sums_check(f, _parse_function(args.g, "--g"), args.t)
            _emit([res.to_json()], args.output)
            return EXIT_OK if res.match else EXIT_FAIL
        if args.g is None:
            value = certificate.strong_certificate(f, args.ell)
            _emit([{"n": f.n, "f": list(f.values), "ell": args.ell, "certificate": str(value)}], args.output)
            return EXIT_OK
        chk = certificate.strong_composition_check(f, _parse_function(args.g, "--g"), args.ell)
        _emit([chk.to_record()], args.output)
        return EXIT_OK if chk.holds else EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_export(args) -> int:
    f = _parse_function(args.f)
    text = f.to_dot() if args.format == "dot" else json.dumps(f.to_json()) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gracelab", description="Graceful labelings of functional graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="list tree functions, forest functions, or gracefully labeled copies")
    e.add_argument("kind", choices=["trees", "forests", "grl"])
    e.add_argument("--n", type=int)
    e.add_argument("--f", help="JSON function, for grl")
    e.add_argument("--output")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("search", help="find a graceful labeling or a prescribed label sequence")
    s.add_argument("--f", required=True)
    s.add_argument("--exhaustive", action="store_true", help="count all solutions, report the lex-minimal one")
    s.add_argument("--sequence", help="JSON edge-label multiset to realize")
    s.add_argument("--star", type=int, help="realize the star sequence with offset j")
    s.add_argument("--extrema", action="store_true", help="min/max distinct edge labels over relabelings")
    s.add_argument("--samples", type=int, help="sample size for --extrema when n is too large to scan")
    s.add_argument("--seed", type=int)
    s.add_argument("--output")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="run an exhaustive verification suite")
    v.add_argument("suite", choices=[*verify.SUITES, "all"])
    v.add_argument("--n", type=int, help="single n, or the lower end with --n-max")
    v.add_argument("--n-max", type=int)
    v.add_argument("--ell", type=int)
    v.add_argument("--jobs", type=int, help="worker processes (default: GRACELAB_JOBS or cpu count)")
    v.add_argument("--output", help="write the JSON report here")
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("expand", help="graceful expansion of a labeled tree")
    x.add_argument("--f", required=True)
    x.add_argument("--sigma", required=True)
    x.add_argument("--output")
    x.set_defaults(func=cmd_expand)

    c = sub.add_parser("certify", help="evaluate the certificate sums")
    c.add_argument("--f", required=True)
    c.add_argument("--g")
    c.add_argument("--t", type=int, choices=[0, 1])
    c.add_argument("--ell", type=int)
    c.add_argument("--output")
    c.set_defaults(func=cmd_certify)

    x = sub.add_parser("export", help="write the functional graph as DOT or JSON")
    x.add_argument("--f", required=True)
    x.add_argument("--format", choices=["dot", "json"], default="dot")
    x.add_argument("--output")
    x.set_defaults(func=cmd_export)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gracelab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
Command-line front end: subgroup censuses, quotient equations, orbit tools,
the n = 4 catalog and the verification suites.

    PYTHONPATH=src python -m humbert.catalog_cli catalog --lambdas 2,3

Payload (JSON or text) goes to stdout, status lines to stderr.
Exit status: 0 success, 1 failed check or runtime error, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Sequence, TextIO

from dotenv import load_dotenv

from humbert import catalog, group_core, moduli_action, quotient_equations, verification
from humbert.errors import CapacityError, HumbertDomainError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _dump(data: Any, out: TextIO) -> None:
    json.dump(data, out, indent=2, ensure_ascii=False)
    out.write("\n")


def _parse_indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise HumbertDomainError(f"branch indices must be comma-separated integers, got {text!r}") from None


def _branch(n: int, lambdas: str) -> quotient_equations.BranchSet:
    return quotient_equations.BranchSet.from_lambdas(moduli_action.parse_tuple(lambdas, n).lambdas)


def _subgroup_record(K: group_core.Subgroup) -> dict:
    return {
        "subgroup": str(K),
        "generators": [str(e) for e in K.basis],
        "rank": K.rank,
        "genus": group_core.quotient_profile(K).quotient_genus,
    }


def cmd_enumerate(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    ctx = group_core.GroupContext(args.n)
    try:
        found = group_core.enumerate_free_subgroups(ctx, args.rank)
    except CapacityError as e:
        print(f"[!] {e}; falling back to the constructive families", file=err)
        found = group_core.constructive_free_subgroups(ctx, args.rank)
    print(f"[*] n={args.n} rank={args.rank}: {len(found)} free subgroups", file=err)

    records = [_subgroup_record(K) for K in found]
    if args.format == "json":
        _dump(records, out)
    else:
        for k, record in enumerate(records, start=1):
            print(f"{k:>3}  {record['subgroup']}  genus {record['genus']}", file=out)
    return EXIT_OK


def _build_quotient(args: argparse.Namespace, branch: quotient_equations.BranchSet) -> quotient_equations.HyperellipticEquation:
    if args.full_rank:
        if args.tower_b3 is not None:
            raise HumbertDomainError("--tower-b3 applies to a triple selection only")
        return quotient_equations.full_rank_quotient_curve(branch)

    omitted = _parse_indices(args.omit)
    if args.tower_b3 is not None:
        if len(omitted) != 3 or args.tower_b3 not in omitted:
            raise HumbertDomainError("--tower-b3 must name one index of a three-index --omit")
        pair = tuple(j for j in omitted if j != args.tower_b3)
        return quotient_equations.tower_quartic_curve(branch, pair, args.tower_b3)
    if len(omitted) == 1:
        return quotient_equations.single_omission_curve(branch, omitted[0])
    if len(omitted) == 2:
        return quotient_equations.pair_quotient_curve(branch, omitted)
    if len(omitted) == 3:
        return quotient_equations.triple_quotient_curve(branch, omitted)
    raise HumbertDomainError(f"--omit takes one, two or three indices, got {len(omitted)}")


def cmd_quotient(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    branch = _branch(args.n, args.lambdas)
    eq = _build_quotient(args, branch)
    if not quotient_equations.verify_cover_consistency(eq):
        print(f"[✗] self-check failed: {eq} does not cover the expected branch values", file=err)
        return EXIT_FAILED

    if args.format == "json":
        _dump(eq.to_json(), out)
    else:
        print(eq, file=out)
    print(f"[✓] genus {eq.genus}, {eq.branch_count} branch points, cover-consistent", file=err)
    return EXIT_OK


def cmd_orbit(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    seed = moduli_action.parse_tuple(args.lambdas, args.n)
    orb = moduli_action.orbit(seed, args.generators, max_size=args.max)
    order = orb.group_order
    print(f"[*] orbit of {seed} under <{args.generators}>: {orb.size} members (group order {order})", file=err)
    if order is not None and not orb.is_full:
        print(f"[!] stabilizer of order {order // orb.size}", file=err)
    _dump(orb.to_json(), out)
    return EXIT_OK


def cmd_equivalent(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    left = moduli_action.parse_tuple(args.left, args.n)
    right = moduli_action.parse_tuple(args.right, args.n)
    word = moduli_action.equivalence_witness(left, right)
    if word is None:
        print(f"[*] {left} and {right} are not conformally equivalent", file=err)
    else:
        print(f"[+] {right} = {left} moved by the word {word!r} (letters applied left to right)", file=err)
    _dump({"left": left.to_json(), "right": right.to_json(), "equivalent": word is not None, "word": word}, out)
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    params = moduli_action.parse_tuple(args.lambdas, 4)
    records = catalog.build_catalog(params.lambdas)
    for record in records:
        if record.erratum:
            print(
                f"[!] {record.curve_label} erratum: printed {[str(c) for c in record.printed]}, "
                f"cover-consistent {[str(c) for c in record.equation.constants]}",
                file=err,
            )
        elif not record.ok:
            print(f"[✗] {record.curve_label} does not match its printed form", file=err)
    _dump(catalog.catalog_to_json(records), out)

    if not all(r.ok for r in records):
        return EXIT_FAILED
    print(f"[✓] {len(records)} curves at {params}", file=err)
    return EXIT_OK


_MARKERS = {
    verification.Status.PASS: "[✓]",
    verification.Status.FAIL: "[✗]",
    verification.Status.ERRATUM: "[!]",
}


def cmd_verify(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    print(f"[*] running suite {args.suite} for n={args.n}", file=err)
    report = verification.run_suite(args.suite, args.n, seed=args.seed, samples=args.samples)
    if args.format == "json":
        _dump(report.to_json(), out)
    else:
        for check in report.checks:
            print(f"{_MARKERS[check.status]} {check.check_id}: {check.statement}", file=out)

    summary = f"{len(report.checks)} checks, {len(report.failures)} failed, {len(report.errata)} errata"
    if report.passed:
        print(f"[✓] {summary}", file=err)
        return EXIT_OK
    print(f"[✗] {summary}", file=err)
    return EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true", help="Show stack traces on errors")

    parser = argparse.ArgumentParser(
        prog="humbert",
        description="Hyperelliptic quotients of generalized Humbert curves",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        p.set_defaults(handler=handler)
        return p

    p = add("enumerate", cmd_enumerate, "Census of the subgroups of H acting freely")
    p.add_argument("--n", type=int, required=True, help="Type index n >= 4")
    p.add_argument("--rank", type=int, required=True, help="Subgroup rank")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("quotient", cmd_quotient, "Hyperelliptic equation of a quotient S/K")
    p.add_argument("--n", type=int, required=True, help="Type index n >= 4")
    p.add_argument("--lambdas", required=True, help="Comma-separated rationals, e.g. 2,3 or 5/2,7/3")
    selection = p.add_mutually_exclusive_group(required=True)
    selection.add_argument("--omit", help="One, two or three branch indices into (inf, 0, 1, lambda_1, ...)")
    selection.add_argument("--full-rank", action="store_true", help="Full-rank quotient (n odd)")
    p.add_argument("--tower-b3", type=int, help="Index b3 inside a three-index --omit; emits the tower quartic")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("orbit", cmd_orbit, "Orbit closure of a parameter tuple")
    p.add_argument("--n", type=int, required=True, help="Type index n >= 4")
    p.add_argument("--lambdas", required=True, help="Comma-separated rationals")
    p.add_argument("--generators", choices=["tb", "sbc", "sb", "ub"], default="tb")
    p.add_argument("--max", type=int, default=moduli_action.DEFAULTS["max_orbit_size"], help="Orbit size cap")

    p = add("equivalent", cmd_equivalent, "Conformal equivalence of two parameter tuples")
    p.add_argument("--n", type=int, required=True, help="Type index n >= 4")
    p.add_argument("--left", required=True, help="Comma-separated rationals")
    p.add_argument("--right", required=True, help="Comma-separated rationals")

    p = add("catalog", cmd_catalog, "All 25 hyperelliptic quotients for n = 4 as JSON")
    p.add_argument("--lambdas", required=True, help="Two comma-separated rationals")

    p = add("verify", cmd_verify, "Run the verification suites")
    p.add_argument("--n", type=int, required=True, help="Type index n >= 4")
    p.add_argument("--suite", choices=[*verification.SUITES, "all"], default="all")
    p.add_argument("--seed", type=int, default=verification.DEFAULTS["seed"], help="Seed for random tuples")
    p.add_argument("--samples", type=int, help="Random tuples per check; 20 for equations and 100 for generator relations when omitted")
    p.add_argument("--format", choices=["text", "json"], default="text")

    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        return args.handler(args, out, err)
    except HumbertDomainError as e:
        print(f"[✗] Error: {e}", file=err)
        if args.verbose:
            print("Stack trace:", file=err)
            raise
        return EXIT_USAGE
    except Exception as e:
        print(f"[✗] Error: {e}", file=err)
        if args.verbose:
            print("Stack trace:", file=err)
            raise
        return EXIT_FAILED


def main() -> None:
    load_dotenv()
    sys.exit(run())


if __name__ == "__main__":
    main()

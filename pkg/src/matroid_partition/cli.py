"""Command-line interface.

Exit codes: 0 computed (or true), 1 computed and absent (with a
certificate) or invalid, 2 input error, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import sys

from .assignment import PACKING, Assignment, verify
from .errors import ConsistencyError, InputError, MatroidError, PreconditionError
from .feasible import packing_feasible, seed
from .partitioner import reduce_to_three, synthesize_partition
from .selftest import FAULTS, run_selftest
from .serialization import (
    assignment_to_json,
    certificate_to_json,
    dumps,
    instance_to_json,
    load_file,
    parse_assignment,
    parse_instance,
)
from .tight import is_tight, largest_tight_set
from .union import find_covering

EXIT_OK, EXIT_ABSENT, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2, 3


def _load(path):
    return parse_instance(load_file(path), path)


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj))


def _verified(family, a: Assignment) -> Assignment:
    report = verify(family, a)
    if not report.valid:
        raise ConsistencyError("result failed verification: " + "; ".join(report.violations))
    return a


def _outcome(family, out) -> dict:
    if isinstance(out, Assignment):
        return {"exists": True, "assignment": assignment_to_json(_verified(family, out), family)}
    return {"exists": False, "certificate": certificate_to_json(out, getattr(out, "family", family))}


def cmd_check(args) -> int:
    family = _load(args.file)
    cover = find_covering(family)
    if len(family) == 0:
        # the empty tuple is vacuously a packing; there is no seed family to ask
        pack = Assignment((), PACKING)
    else:
        pack = packing_feasible(seed(family))
    _emit({"covering": _outcome(family, cover), "packing": _outcome(family, pack)})
    return EXIT_OK


def cmd_partition(args) -> int:
    family = _load(args.file)
    out = synthesize_partition(family, use_reduction=args.use_reduction)
    if isinstance(out, Assignment):
        _emit(assignment_to_json(_verified(family, out), family))
        return EXIT_OK
    cert = certificate_to_json(out.certificate, out.family)
    if out.reduced:
        cert["reduced"] = True
    _emit(cert)
    return EXIT_ABSENT


def cmd_tight(args) -> int:
    family = _load(args.file)
    if args.largest:
        cert = largest_tight_set(family)
        _emit({"largest_tight": family.ground.sort(cert.X)})
        return EXIT_OK
    ids = [s for s in args.subset.split(",") if s]
    unknown = [s for s in ids if s not in family.ground]
    if unknown:
        raise InputError(f"--subset: unknown elements {unknown}")
    _emit({"tight": is_tight(family, ids) is not None})
    return EXIT_OK


def cmd_reduce3(args) -> int:
    family = _load(args.file)
    reduced, _ = reduce_to_three(family)
    _emit(instance_to_json(reduced, lambda pair: f"{pair[0]}#{pair[1]}"))
    return EXIT_OK


def cmd_verify(args) -> int:
    family = _load(args.file)
    raw = load_file(args.assignment)
    if isinstance(raw, dict) and args.mode:
        raw = dict(raw, mode=args.mode)
    a = parse_assignment(raw, family, args.assignment)
    report = verify(family, a)
    _emit({"mode": report.mode, "valid": report.valid, "violations": report.violations})
    return EXIT_OK if report.valid else EXIT_ABSENT


def cmd_selftest(args) -> int:
    report = run_selftest(args.max_elements, args.trials, args.seed, args.inject_fault or ())
    _emit(report.to_json())
    for f in report.failures:
        print(f"FAIL [{f['check']}] trial {f['trial']}: {f['detail']}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_CONSISTENCY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matroid-partition",
        description="Matroid union, tight sets and base partitionings with certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide whether a covering and a packing exist")
    p.add_argument("file")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("partition", help="compute a base partitioning or a certificate")
    p.add_argument("file")
    p.add_argument("--use-reduction", action="store_true",
                   help="go through the equivalent three-member family")
    p.set_defaults(run=cmd_partition)

    p = sub.add_parser("tight", help="tight-set queries")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--largest", action="store_true", help="print the largest tight set")
    g.add_argument("--subset", help="comma-separated element ids to test")
    p.set_defaults(run=cmd_tight)

    p = sub.add_parser("reduce3", help="print the equivalent three-member instance")
    p.add_argument("file")
    p.set_defaults(run=cmd_reduce3)

    p = sub.add_parser("verify", help="check an assignment file")
    p.add_argument("file")
    p.add_argument("--assignment", required=True)
    p.add_argument("--mode", choices=("covering", "packing", "partitioning"))
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("selftest", help="randomised comparison against brute force")
    p.add_argument("--max-elements", type=int, default=7)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="append", choices=FAULTS, help=argparse.SUPPRESS)
    p.set_defaults(run=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (InputError, PreconditionError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as ex:
        print(f"internal consistency failure: {ex}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except MatroidError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())

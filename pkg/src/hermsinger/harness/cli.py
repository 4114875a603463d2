"""Command-line interface: ``hermsinger <subcommand> [flags]``.

Exit status is 0 on success or PASS, 1 on FAIL, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from ..codes import min_distance, quasi_cyclic_check, random_code
from ..codes.distance import DEFAULT_BUDGET
from ..errors import BadParameter, BudgetExceeded, CapExceeded, HermSingerError, LambdaOutOfRange, UnknownClaim
from .verify import FAIL, GEOMETRY, Context, VerificationReport, overall_status, verify

SUPPORTED_Q = (3, 4, 5)


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=3, help="base field order (3, 4 or 5)")
    common.add_argument("--lambda", dest="lam", type=int, default=None, help="multiple of G (1 <= lambda < q)")
    common.add_argument("--tau-index", type=int, default=0, help="index of the curve carrying the evaluation points")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="work cap for distance engines")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized controls")

    p = argparse.ArgumentParser(prog="hermsinger", description="Hermitian-Singer evaluation codes")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build-code", parents=[common], help="build a generator matrix")
    b.add_argument("--kind", choices=("functional", "subcode", "differential", "random"), default="functional")

    m = sub.add_parser("min-dist", parents=[common], help="minimum distance of a code")
    m.add_argument("--kind", choices=("functional", "subcode", "differential", "random"), default="functional")
    m.add_argument("--method", choices=("auto", "exhaustive", "columns", "bz"), default="auto")
    m.add_argument("--w", type=int, default=None, help="subset size for the column engine")

    v = sub.add_parser("verify", parents=[common], help="check one claim or all of them")
    v.add_argument("--claim", default="all")

    sub.add_parser("geometry", parents=[common], help="run the geometry checks")
    sub.add_parser("conics", parents=[common], help="conic census on the q = 4 orbit")
    sub.add_parser("reproduce-paper", parents=[common], help="match the reference q = 4 data")
    return p


def _code(ctx: Context, kind: str, lam: int, seed: int):
    if kind == "functional":
        return ctx.functional(lam)
    if kind == "subcode":
        return ctx.subcode()
    if kind == "differential":
        if lam != 1:
            raise UsageError("the differential code is defined for lambda = 1")
        return ctx.differential()
    ref = ctx.functional(lam)
    C = random_code(ref.field, ref.n, ref.k, seed)
    C.domain = ctx.dom
    return C


def _reports_out(reports: list[VerificationReport], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"status": overall_status(reports), "reports": [r.to_json() for r in reports]}, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["claim", "q", "lambda", "expected", "computed", "status", "elapsed_s"])
        for r in reports:
            w.writerow([r.claim, r.q, r.lam, json.dumps(r.expected), json.dumps(r.computed), r.status, f"{r.elapsed:.3f}"])
        return buf.getvalue()
    lines = [r.line() for r in reports]
    for r in reports:
        lines.extend(f"  note [{r.claim}]: {n}" for n in r.notes)
    lines.append(f"overall: {overall_status(reports)}")
    return "\n".join(lines)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _check_q(q: int) -> None:
    if q not in SUPPORTED_Q:
        raise UsageError(f"q must be one of {SUPPORTED_Q}")


def run(args: argparse.Namespace) -> int:
    _check_q(args.q)
    if args.command in ("conics", "reproduce-paper") and args.q != 4:
        raise UsageError(f"{args.command} is defined for q = 4 only")
    lam = args.lam if args.lam is not None else 1
    if not 1 <= lam < args.q:
        raise UsageError(f"lambda must satisfy 1 <= lambda < q = {args.q}")
    ctx = Context(args.q, args.tau_index, args.budget, args.threads)

    if args.command == "build-code":
        C = _code(ctx, args.kind, lam, args.seed)
        if args.format == "json":
            text = json.dumps(C.to_json(), indent=2)
        elif args.format == "csv":
            text = C.to_csv()
        else:
            text = f"{args.kind} code [{C.n}, {C.k}] over F_{C.q2}, quasi-cyclic: {quasi_cyclic_check(C, ctx.dom)}"
        _emit(text, args.out)
        return 0

    if args.command == "min-dist":
        C = _code(ctx, args.kind, lam, args.seed)
        rep = min_distance(C, args.method, args.budget, args.threads, args.w)
        if args.format == "text":
            span = f"d = {rep.lower}" if rep.exact else f"{rep.lower} <= d <= {rep.upper}"
            text = f"{args.kind} [{rep.n}, {rep.k}] {span}  method={rep.method}  {rep.elapsed:.2f}s"
        elif args.format == "csv":
            text = f"kind,q,lambda,n,k,lower,upper,method,elapsed_s\n{args.kind},{args.q},{lam},{rep.n},{rep.k},{rep.lower},{rep.upper},{rep.method},{rep.elapsed:.3f}"
        else:
            text = json.dumps(rep.to_json(), indent=2)
        _emit(text, args.out)
        return 0

    if args.command == "verify":
        reports = verify(args.claim, args.q, args.lam, args.tau_index, args.budget, args.threads, ctx=ctx)
    elif args.command == "geometry":
        reports = [r for name in list(GEOMETRY) + ["Remark6.1"] for r in verify(name, args.q, ctx=ctx)]
    elif args.command == "conics":
        from .reference import reproduce_reference

        res = reproduce_reference(all_conventions=False)
        if args.format == "json":
            _emit(json.dumps(res.census.to_json(), indent=2), args.out)
        else:
            c = res.census
            lines = [f"conics with >= {c.threshold} orbit points: {c.count}, max incidence {c.max_incidence}"]
            lines += [f"  points {e['points']} irreducible={e['irreducible']}" for e in c.conics]
            _emit("\n".join(lines), args.out)
        return 0
    else:
        reports = verify("reproduce", args.q, ctx=ctx)
    _emit(_reports_out(reports, args.format), args.out)
    return 1 if overall_status(reports) == FAIL else 0


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(args)
    except (UsageError, UnknownClaim, BadParameter, LambdaOutOfRange, CapExceeded) as exc:
        print(f"hermsinger: error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"hermsinger: budget exceeded: {exc}", file=sys.stderr)
        return 1
    except HermSingerError as exc:
        print(f"hermsinger: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

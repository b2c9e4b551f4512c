"""Command-line front end: ``mckay-dt <subcommand> [options]``.

Exit status: 0 on success, 1 when a verification fails or a computation
raises, 2 on usage errors, 3 when a feasibility guard refuses the input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .checks import Options, run_checks, select_checks
from .dtinv import (
    affine_kac_table,
    euler_limit,
    gv_extract,
    hilbert_series_ZY,
    jordan_kac_table,
    mckay_box_grading,
    mckay_series,
    omega_extract,
    pt_euler_symbolic,
    universal_series,
)
from .errors import (
    DimensionMismatch,
    FeasibilityError,
    MotiveError,
    NotPrimePower,
    UnknownGroup,
    UnknownType,
    UnsupportedField,
)
from .quiver import Quiver, euler_form, load_quiver
from .repcount import (
    CountReport,
    count_potential_fiber,
    count_preprojective,
    interpolate_kac,
    kac_bruteforce,
)
from .roots import AffineRootSystem, from_mckay_group, from_type
from .series import Grading

USAGE_ERRORS = (UnknownType, UnknownGroup, DimensionMismatch, NotPrimePower, UnsupportedField)


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _root_system(args) -> AffineRootSystem:
    given = [x for x in (args.type, args.group) if x]
    if len(given) != 1:
        raise UsageError("give exactly one of --type or --group")
    return from_type(args.type) if args.type else from_mckay_group(args.group)


def _quiver(args) -> Quiver:
    if not args.quiver:
        raise UsageError("--quiver is required")
    try:
        return load_quiver(args.quiver)
    except (ValueError, OSError, KeyError) as exc:
        if isinstance(exc, MotiveError):
            raise
        raise UsageError(str(exc)) from None


def _order(args, default: int) -> int:
    N = default if args.order is None else args.order
    if N < 0:
        raise UsageError("--order must be >= 0")
    return N


def _table(rows: list[tuple[str, str]]) -> str:
    if not rows:
        return ""
    width = max(len(a) for a, _ in rows)
    return "\n".join(f"{a.ljust(width)}  {b}" for a, b in rows)


# ---------------------------------------------------------- subcommands
def cmd_kac(args) -> tuple[int, str]:
    Q = _quiver(args)
    if args.dim is None:
        raise UsageError("--dim is required")
    alpha = Q.check_dim(args.dim)
    qs = args.q or [2, 3]
    samples = [(q, kac_bruteforce(Q, alpha, q)) for q in qs]
    degree = max(0, 1 - euler_form(Q, alpha, alpha))
    poly = interpolate_kac(samples, degree) if len(set(qs)) >= degree + 1 else None
    if args.format == "json":
        return 0, _dump(
            {
                "dim": list(alpha),
                "samples": [{"q": q, "count": c} for q, c in samples],
                "degree_bound": degree,
                "polynomial": None if poly is None else str(poly),
                "coeffs": None if poly is None else poly.to_json(),
            }
        )
    rows = [(f"q={q}", str(c)) for q, c in samples]
    rows.append(("a(q)", str(poly) if poly is not None else f"needs {degree + 1} distinct q"))
    return 0, _table(rows)


def cmd_universal(args) -> tuple[int, str]:
    N = _order(args, 2)
    if args.quiver == "jordan":
        K, G = jordan_kac_table(), Grading(("y",), (1,), N)
    elif args.quiver == "kronecker":
        R = from_type("A1~")
        K, G = affine_kac_table(R), mckay_box_grading(R, N)
    elif args.quiver:
        raise UsageError("closed-form Kac tables exist for jordan, kronecker, and --type/--group")
    else:
        R = _root_system(args)
        K, G = affine_kac_table(R), mckay_box_grading(R, N)
    A = universal_series(K, G)
    omega = omega_extract(A)
    if args.format == "json":
        return 0, _dump({"series": A.to_json(), "omega": omega.to_json()})
    rows = [(str(list(a)), str(c)) for a, c in A.items()]
    rows += [(f"Omega{list(a)}", str(c)) for a, c in omega.items()]
    return 0, _table(rows)


def _sq_rows(Z) -> list[tuple[str, str]]:
    return [(f"s^{n} Q^{list(b)}", str(c)) for (n, b), c in Z.items()]


def cmd_series(args) -> tuple[int, str]:
    R = _root_system(args)
    Z = mckay_series(R, args.mode, _order(args, 3))
    if args.format == "json":
        return 0, _dump(Z.to_json())
    return 0, _table(_sq_rows(Z))


def cmd_euler(args) -> tuple[int, str]:
    R = _root_system(args)
    E = euler_limit(mckay_series(R, args.mode, _order(args, 3)))
    if args.format == "json":
        return 0, _dump(E.to_json())
    return 0, _table([(f"q^{n} Q^{list(b)}", str(c)) for (n, b), c in E.items()])


def cmd_gv(args) -> tuple[int, str]:
    R = _root_system(args)
    gv = gv_extract(pt_euler_symbolic(R))
    if args.format == "json":
        return 0, _dump([{"genus": g, "beta": list(b), "n": n} for (g, b), n in sorted(gv.items())])
    return 0, _table([(f"g={g} beta={list(b)}", str(n)) for (g, b), n in sorted(gv.items())])


def cmd_hilb(args) -> tuple[int, str]:
    R = _root_system(args)
    Z = hilbert_series_ZY(R.rank, _order(args, 3), R)
    if args.format == "json":
        return 0, _dump(Z.to_json())
    return 0, _table(_sq_rows(Z))


def cmd_repcount(args) -> tuple[int, str]:
    Q = _quiver(args)
    if args.dim is None:
        raise UsageError("--dim is required")
    if not args.q or len(args.q) != 1:
        raise UsageError("repcount takes a single --q")
    q, alpha = args.q[0], Q.check_dim(args.dim)
    if args.what == "preprojective":
        report = count_preprojective(Q, alpha, q)
    elif args.what in ("fiber0", "fiber1"):
        report = count_potential_fiber(Q, alpha, q, int(args.what[-1]))
    else:
        report = CountReport(Q.to_json(), alpha, q, kac_bruteforce(Q, alpha, q), "direct-enumeration", "kac")
    if args.format == "json":
        return 0, _dump(report.to_json())
    return 0, _table([(k, json.dumps(v)) for k, v in report.to_json().items()])


def cmd_verify(args) -> tuple[int, str]:
    try:
        checks = select_checks(args.suite)
    except KeyError:
        raise UsageError(f"unknown suite {args.suite!r}") from None
    opts = Options(qs=tuple(args.q) if args.q else (2, 3), order=args.order)
    results = run_checks(checks, opts)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        body = {"results": [r.to_json() for r in results], "passed": not failed}
        if failed:
            body["first_failure"] = failed[0].name
        text = _dump(body)
    else:
        lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.description} ({r.detail})" for r in results]
        if failed:
            lines.append(f"first failing identity: {failed[0].name}")
        text = "\n".join(lines)
    return (1 if failed else 0), text


COMMANDS = {
    "kac": cmd_kac,
    "universal": cmd_universal,
    "series": cmd_series,
    "euler": cmd_euler,
    "gv": cmd_gv,
    "hilb": cmd_hilb,
    "repcount": cmd_repcount,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mckay-dt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--quiver", help="jordan, kronecker, affine:<TYPE>, or a JSON file")
        p.add_argument("--type", help="affine ADE tag such as A2~ or D4~")
        p.add_argument("--group", help="cyclic:n, bindihedral:n, bintet, binoct, binico")
        p.add_argument("--dim", type=_ints, help="dimension vector, e.g. 1,1")
        p.add_argument("--q", type=_ints, help="prime powers, e.g. 2,3,4")
        p.add_argument("--order", type=int, help="truncation order in s (or y)")
        p.add_argument("--mode", choices=["pt", "dt", "ncdt"], default="pt")
        p.add_argument("--format", choices=["json", "text"], default="text")
        p.add_argument("--suite", help="verify: check name, prefix (e.g. dtpt), or all")
        p.add_argument(
            "--what", choices=["preprojective", "fiber0", "fiber1", "kac"], default="preprojective", help="repcount target"
        )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, text = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except USAGE_ERRORS as exc:
        parser.error(str(exc))
    except FeasibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except MotiveError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Command-line scenarios.

Exit status: 0 when the scenario's own re-verification passes, 1 when an
assertion fails, 2 on usage errors (argparse's convention).
"""
from __future__ import annotations

import argparse
import ast
import json
import re
import sys

from .derive import Limits, saturate, verify_fixpoint, verify_trace
from .padic import PAdicInt, hensel_unit_root, rezk_log, val
from .powerops import check_presentation
from .rings import CoeffRingSpec, load_presentation, reduce_z_power, window_matrix


def parse_relation(text: str, spec: CoeffRingSpec):
    """Parse an expression over integers and ``a`` with ``+ - * ^`` and parentheses.

    A number directly followed by ``a`` or ``(`` is multiplied: ``2a^2``.
    """
    src = re.sub(r"(\d)\s*(?=[a(])", r"\1*", text.strip()).replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse relation {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return spec(node.value)
        if isinstance(node, ast.Name) and node.id == "a":
            if spec.K == 1:
                raise ValueError("the coefficient ring has no variable a")
            return spec.gen()
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            x = ev(node.operand)
            return -x if isinstance(node.op, ast.USub) else x
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError("exponents must be integer literals")
                return ev(node.left) ** node.right.value
            ops = {ast.Add: lambda x, y: x + y, ast.Sub: lambda x, y: x - y, ast.Mult: lambda x, y: x * y}
            for op, fn in ops.items():
                if isinstance(node.op, op):
                    return fn(ev(node.left), ev(node.right))
        raise ValueError(f"unsupported syntax in relation {text!r}")

    return ev(tree)


def parse_relations(text: str, spec: CoeffRingSpec) -> list:
    return [parse_relation(part, spec) for part in text.split(",") if part.strip()]


def _emit(args, data: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(text_lines))


def cmd_log_check(args) -> int:
    p, n, N = args.p, args.n, args.precision
    x = PAdicInt(p, 1 + p ** n, N)
    log = rezk_log(x)
    v = val(log)
    q = p ** n
    ok = v == n - 1
    data = {
        "p": p,
        "n": n,
        "precision": log.precision,
        "log": log.residue,
        "modulus": f"{p}^{log.precision}",
        "valuation": None if v == float("inf") else v,
        "expected_valuation": n - 1,
        "log_mod_p^n": log.residue % q,
        "plus_p^(n-1)_mod_p^n": p ** (n - 1) % q,
        "minus_p^(n-1)_mod_p^n": -p ** (n - 1) % q,
        "status": "pass" if ok else "fail",
    }
    _emit(args, data, [f"{k}: {val_}" for k, val_ in data.items()])
    return 0 if ok else 1


def cmd_hensel(args) -> int:
    p, k, b, N = args.p, args.k, args.b, args.precision
    c = hensel_unit_root(p, k, b, N)
    q = p ** N
    verified = pow(1 + p * c.residue, p ** (k - 1), q) == (1 + b * p ** k) % q
    data = {
        "p": p,
        "k": k,
        "b": b,
        "c": c.residue,
        "modulus": f"{p}^{N}",
        "equation": f"(1 + {p}*c)^({p}^{k - 1}) = 1 + {b}*{p}^{k}",
        "verified": verified,
    }
    _emit(args, data, [f"{key}: {value}" for key, value in data.items()])
    return 0 if verified else 1


def _load(args):
    return load_presentation(args.etheory, N=args.N, K=args.K)


def cmd_collapse(args) -> int:
    pres = _load(args)
    initial = parse_relations(args.relations, pres.spec)
    limits = Limits(max_passes=args.max_passes, max_rows=args.max_rows)
    modes = [False, True] if args.exhaustive else [False]
    status = 0
    reports = []
    for exhaustive in modes:
        report = saturate(pres, args.loop_level, initial, limits, exhaustive=exhaustive)
        checks = {
            "trace_replays": verify_trace(pres, report),
            "fixpoint_sound": (not report.fixpoint) or verify_fixpoint(pres, report),
        }
        if args.expect:
            checks["expected_verdict"] = report.trivial == (args.expect == "trivial")
        if not all(checks.values()):
            status = 1
        reports.append((report, checks))
    if args.json:
        print(json.dumps([dict(r.as_dict(), checks=c) for r, c in reports], indent=2))
    else:
        blocks = []
        for r, c in reports:
            lines = [r.to_text(), "checks:"]
            lines += [f"  {name}: {'pass' if ok else 'FAIL'}" for name, ok in c.items()]
            blocks.append("\n".join(lines))
        print("\n\n".join(blocks))
    return status


def cmd_check_presentation(args) -> int:
    pres = load_presentation(args.file)
    report = check_presentation(pres)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        print(f"presentation: {report.name}  ({pres.spec.describe()})")
        for c in report.checks:
            detail = f"  [{c.detail}]" if c.detail else ""
            print(f"  {'pass' if c.passed else 'FAIL'}  {c.name}{detail}")
    return 0 if report.passed else 1


def cmd_tables(args) -> int:
    pres = _load(args)
    powers = {k: str(reduce_z_power(pres, k)) for k in range(1, args.max_power + 1)}
    shifts = args.shift if args.shift else [0, 1, 2]
    windows = {}
    for m in shifts:
        M = window_matrix(pres, m)
        windows[m] = [
            " + ".join(f"({c})*d_z^{e}" for c, e in images) or "0"
            for images in M.dual_images()
        ]
    if args.json:
        print(json.dumps({
            "ring": pres.spec.describe(),
            "f": [str(c) for c in pres.f],
            "z_powers": powers,
            "windows": {str(m): rows for m, rows in windows.items()},
        }, indent=2))
        return 0
    print(f"{pres.name}: {pres.spec.describe()}[z]/f")
    for k, s in powers.items():
        print(f"  z^{k} = {s}")
    for m, rows in windows.items():
        print(f"window shift {m}:")
        for i, s in enumerate(rows, 1):
            print(f"  d_z^{i} -> {s}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="morava-powops", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)
    # --json is also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    p = sub.add_parser("log-check", help="valuation of the Rezk logarithm of 1 + p^n", parents=[common])
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--precision", type=int, default=12)
    p.set_defaults(func=cmd_log_check)

    p = sub.add_parser("hensel", help="solve (1 + p c)^(p^(k-1)) = 1 + b p^k", parents=[common])
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("--precision", type=int, default=12)
    p.set_defaults(func=cmd_hensel)

    for name, func, help_ in (
        ("collapse", cmd_collapse, "saturate relations under the window rule"),
        ("tables", cmd_tables, "print z-power reductions and window matrices"),
    ):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.add_argument("--etheory", required=True, help="presentation file or bundled name")
        p.add_argument("--N", type=int, default=None, help="p-adic truncation (default: from file)")
        p.add_argument("--K", type=int, default=None, help="a-adic truncation (default: from file)")
        p.set_defaults(func=func)
        if name == "collapse":
            p.add_argument("--relations", required=True, help="comma-separated, e.g. '4' or '4,2a^2'")
            p.add_argument("--loop-level", type=int, required=True)
            p.add_argument("--max-passes", type=int, default=64)
            p.add_argument("--max-rows", type=int, default=4096)
            p.add_argument("--exhaustive", action="store_true",
                           help="also run with ideal elements beyond the generators as candidates")
            p.add_argument("--expect", choices=["trivial", "nontrivial"])
        else:
            p.add_argument("--max-power", type=int, default=9)
            p.add_argument("--shift", type=int, action="append")

    p = sub.add_parser("check-presentation", help="verify a presentation file", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_check_presentation)
    return parser


def _validate(parser, args) -> None:
    if args.command in ("log-check", "hensel") and args.p % 2 == 0:
        parser.error(f"{args.command} needs an odd prime, got -p {args.p}")
    if args.command in ("log-check", "hensel") and (args.p < 2 or any(args.p % d == 0 for d in range(3, args.p))):
        parser.error(f"-p {args.p} is not prime")
    if args.command == "log-check" and not 1 <= args.n < args.precision:
        parser.error("need 1 <= n < precision")
    if args.command == "hensel" and (args.k < 1 or args.b % args.p == 0):
        parser.error("need k >= 1 and b a unit mod p")
    if args.command == "collapse" and args.loop_level < 0:
        parser.error("loop level must be non-negative")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

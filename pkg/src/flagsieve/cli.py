"""``flagsieve`` command line: construct, verify, sieve, replicate.

Exit status is 0 on success, 1 when a verification fails and 2 for usage
errors or malformed input files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import construct, replicate, sieve
from .design import DesignError, IncidenceStructure, is_flag_transitive, verify_2design
from .finitegeom import POINTS, field, psl_action
from .formats import FormatError, format_design, read_design, read_group, write_design, write_group
from .permgroup import BudgetExceeded, PermGroup

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # keep argparse's exit code, route through stderr
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _emit(payload: Any, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(_as_text(payload))


def _as_text(payload: Any, indent: str = "") -> str:
    if isinstance(payload, dict):
        lines = []
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)) and value and any(isinstance(x, (dict, list)) for x in _values(value)):
                lines.append(f"{indent}{key}:")
                lines.append(_as_text(value, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {_scalar(value)}")
        return "\n".join(lines)
    if isinstance(payload, list):
        sep = "\n\n" if any(isinstance(item, dict) for item in payload) else "\n"
        return sep.join(_as_text(item, indent) if isinstance(item, dict) else f"{indent}{_scalar(item)}" for item in payload)
    return f"{indent}{_scalar(payload)}"


def _values(value: dict | list) -> list:
    return list(value.values()) if isinstance(value, dict) else list(value)


def _scalar(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return " ".join(_scalar(x) for x in value)
    if isinstance(value, dict):
        return " ".join(f"{k}={_scalar(v)}" for k, v in sorted(value.items()))
    if value is None:
        return "-"
    return str(value).lower() if isinstance(value, bool) else str(value)


def _group_path(design_path: Path) -> Path:
    return design_path.with_name(design_path.stem + ".group" + (design_path.suffix or ".txt"))


def _save(D: IncidenceStructure, G: PermGroup | None, out: str | None) -> dict:
    params = verify_2design(D)
    result: dict[str, Any] = {"params": params.as_dict()}
    if out is None:
        sys.stdout.write(format_design(D))
        return {}
    path = Path(out)
    write_design(path, D)
    result["design"] = str(path)
    if G is not None:
        gpath = _group_path(path)
        write_group(gpath, G)
        result["group"] = str(gpath)
    return result


def cmd_construct(args: argparse.Namespace) -> int:
    if args.what == "pg-design":
        if args.n < 3:
            raise UsageError("pg-design needs vector dimension n >= 3")
        F = field(args.q)
        S = construct.pg_point_line_design(args.n - 1, F)
        D = construct.derived_design(S) if args.derived else S.structure
        G: PermGroup | None = psl_action(args.n, F, POINTS)
    elif args.what == "derived":
        D = construct.derived_design(construct.LinearSpace(read_design(args.file)))
        G = read_group(args.group) if args.group else None
    elif args.what == "fano-complement":
        D, G = construct.fano_complement()
    else:
        D, G = construct.biplane16()
    result = _save(D, G, args.output)
    if result:
        _emit(result, args.format)
    return OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.what == "design":
        D = read_design(args.design)
        try:
            params = verify_2design(D)
        except DesignError as exc:
            _emit({"reason": exc.reason, "verified": False}, args.format)
            return FAILED
        _emit({**params.as_dict(), "verified": True}, args.format)
        return OK
    if args.what == "flag-transitive":
        D, G = read_design(args.design), read_group(args.group)
        if G.degree != D.v:
            raise UsageError(f"group degree {G.degree} does not match v = {D.v}")
        try:
            ok = is_flag_transitive(G, D)
            reason = None
        except ValueError as exc:
            ok, reason = False, str(exc)
        payload = {"flag_transitive": ok, "flags": sum(len(b) for b in D.blocks), "group_order": G.order()}
        if reason:
            payload["reason"] = reason
        _emit(payload, args.format)
        return OK if ok else FAILED
    G = read_group(args.group)
    if not G.is_transitive() or G.degree < 2:
        _emit({"primitive": False, "reason": "not transitive", "group_order": G.order()}, args.format)
        return FAILED
    system = G.block_system()
    payload = {"primitive": system is None, "group_order": G.order(), "subdegrees": G.subdegrees(0)}
    if system is not None:
        payload["block_system"] = [list(c) for c in system.parts]
    _emit(payload, args.format)
    return OK if system is None else FAILED


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_sieve(args: argparse.Namespace) -> int:
    if args.what == "rk":
        cands = sieve.admissible_rk(args.v, args.lam)
        if args.stab is not None:
            cands = sieve.filter_stabilizer(cands, args.v, args.lam, args.stab)
        if args.subdegrees:
            cands = sieve.filter_subdegrees(cands, args.lam, args.subdegrees)
        _emit([c.as_dict() for c in cands], args.format)
    elif args.what == "table3":
        rows = sieve.table3()
        if args.format == "json":
            _emit([{"R": R, "q": q, "v": v} for q, v, R in rows], "json")
        else:
            print("q v R")
            for row in rows:
                print(" ".join(map(str, row)))
    elif args.what == "imprimitive":
        _emit([fam.as_dict() for fam in sieve.imprimitive_families(2)], args.format)
    else:
        gd = sieve.GroupData(args.n, args.q, args.stab)
        _emit({**sieve.psl_bounds(gd).as_dict(), "socle_order": gd.socle_order, "v": gd.v}, args.format)
    return OK


def cmd_replicate(args: argparse.Namespace) -> int:
    names = list(replicate.CLAIMS) if args.claim == "all" else [args.claim]
    reports = [replicate.run_claim(name, jobs=args.jobs) for name in names]
    payload: dict[str, Any] = {"reports": [r.as_dict(timing=args.timing) for r in reports]}
    if args.claim == "all":
        payload["unreplicated"] = [replicate.unreplicated_psl33_144().as_dict()]
    _emit(payload, args.format)
    return OK if all(r.match for r in reports) else FAILED


def build_parser() -> argparse.ArgumentParser:
    def shared(default: bool) -> argparse.ArgumentParser:
        # subcommands accept the options too, but must not clobber a value given earlier
        fmt, jobs = ("json", 1) if default else (argparse.SUPPRESS, argparse.SUPPRESS)
        opts = argparse.ArgumentParser(add_help=False)
        opts.add_argument("--format", choices=("json", "text"), default=fmt)
        opts.add_argument("--jobs", type=int, default=jobs, help="worker processes for the subset scan")
        return opts

    common = shared(False)
    parser = _Parser(prog="flagsieve", description=__doc__.splitlines()[0], parents=[shared(True)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build a design and write it (plus a group file)", parents=[common])
    csub = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    c = csub.add_parser("pg-design", help="points and lines of PG(n-1, q); n is the vector dimension", parents=[common])
    c.add_argument("n", type=int)
    c.add_argument("q", type=int)
    c.add_argument("--derived", action="store_true", help="write the derived 2-(v,k-1,k-1) design instead")
    c = csub.add_parser("derived", help="derived design of a linear space file", parents=[common])
    c.add_argument("file")
    c.add_argument("--group", help="group file to copy alongside the output")
    csub.add_parser("fano-complement", parents=[common])
    csub.add_parser("biplane16", parents=[common])
    for c in csub.choices.values():
        c.add_argument("-o", "--output", help="design file; the group goes to <stem>.group<suffix>")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a design, flag-transitivity or primitivity", parents=[common])
    vsub = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    vsub.add_parser("design", parents=[common]).add_argument("design")
    c = vsub.add_parser("flag-transitive", parents=[common])
    c.add_argument("design")
    c.add_argument("group")
    vsub.add_parser("primitive", parents=[common]).add_argument("group")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sieve", help="arithmetic feasibility filters", parents=[common])
    ssub = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    c = ssub.add_parser("rk", help="admissible (r, k, b) for given v and lambda", parents=[common])
    c.add_argument("v", type=int)
    c.add_argument("lam", type=int, metavar="lambda")
    c.add_argument("--stab", type=int, help="point stabiliser order")
    c.add_argument("--subdegrees", type=_int_list, help="nontrivial subdegrees, comma separated")
    ssub.add_parser("table3", help="(q, v, R) for PSL(3, q) extension-field stabilisers", parents=[common])
    ssub.add_parser("imprimitive", help="point-imprimitive parameter families, lambda = 2", parents=[common])
    c = ssub.add_parser("bounds", help="order and divisor bounds for socle PSL(n, q)", parents=[common])
    c.add_argument("n", type=int)
    c.add_argument("q", type=int)
    c.add_argument("stab", type=int)
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("replicate", help="rerun the brute-force group computations", parents=[common])
    p.add_argument("claim", choices=[*replicate.CLAIMS, "all"])
    p.add_argument("--timing", action="store_true", help="include wall times (output is then not reproducible)")
    p.set_defaults(func=cmd_replicate)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else USAGE
    if args.jobs < 1:
        print("flagsieve: error: --jobs must be at least 1", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except (FormatError, UsageError, OSError) as exc:
        print(f"flagsieve: error: {exc}", file=sys.stderr)
        return USAGE
    except DesignError as exc:
        print(f"flagsieve: verification failed: {exc.reason}", file=sys.stderr)
        return FAILED
    except BudgetExceeded as exc:
        print(f"flagsieve: error: {exc} (raise FLAGSIEVE_ORBIT_BUDGET)", file=sys.stderr)
        return USAGE
    except ValueError as exc:
        print(f"flagsieve: error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()

"""Command line interface: ``parafusion <command> [options]``.

Exit status: 0 on success, 1 on bad input, 2 when a computed identity fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

import mpmath

from . import affine, checks, parafermion as pf
from .errors import ConsistencyError, InputError
from .lattice import index, long_root_lattice, quotient, quotient_to_json, root_lattice, scale, weight_lattice
from .liealg import build_root_system, rootsystem_to_json

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def parse_weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"malformed weight {text!r}: expected comma-separated Dynkin labels like 1,0") from None


def parse_module(text: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``"1,0@2"`` -> weight (1, 0), SNF coset coordinates (2,).  A missing coset means 0."""
    weight, _, coset = text.partition("@")
    w = parse_weight(weight)
    if not coset:
        return w, ()
    try:
        return w, tuple(int(x) for x in coset.split(","))
    except ValueError:
        raise InputError(f"malformed module label {text!r}: expected Lambda@coset like 1,0@1") from None


def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--type", dest="family", type=str.upper)
    common.add_argument("--rank", type=int)
    common.add_argument("--level", type=int)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--precision", type=int, default=12, help="digits after the decimal point")
    common.add_argument("--tolerance", type=float, default=1e-6)
    common.add_argument("--cache-dir", help="store full fusion rings here as JSON")

    parser = _Parser(prog="parafusion", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("rootdata", parents=[common], help="root system, marks, lattice indices")
    sub.add_parser("modules", parents=[common], help="level-k weights with conformal weight and qdim")
    p = sub.add_parser("qdim", parents=[common], help="quantum dimension of L(k, Lambda)")
    p.add_argument("--weight", required=True)
    p = sub.add_parser("fusion-affine", parents=[common], help="affine fusion product")
    p.add_argument("left")
    p.add_argument("right")
    p = sub.add_parser("fusion", parents=[common], help="parafermion fusion product")
    p.add_argument("left", help="Lambda@coset, e.g. 1,0@1")
    p.add_argument("right")
    sub.add_parser("classify", parents=[common], help="inequivalent parafermion modules")
    sub.add_parser("verify", parents=[common], help="run the verification checks")
    return parser


def _dps(args) -> int:
    return max(affine.DEFAULT_DPS, args.precision + 10)


def _fmt(x, digits: int) -> str:
    """Fixed-point text with ``digits`` places after the decimal point."""
    with mpmath.workdps(digits + 20):
        x = mpmath.mpf(x)
        whole = len(str(int(abs(x)))) if abs(x) >= 1 else 1
        return mpmath.nstr(x, digits + whole, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def _num(x, digits: int):
    return float(_fmt(x, digits))


def _system(args):
    if args.family is None or args.rank is None:
        raise InputError("--type and --rank are required")
    return build_root_system((args.family, args.rank))


def _level(args) -> int:
    if args.level is None:
        raise InputError("--level is required")
    return affine.check_level(args.level)


def _emit(args, payload, table_lines: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(table_lines))


def cmd_rootdata(args):
    rs = _system(args)
    data = rootsystem_to_json(rs)
    data["P/Q"] = quotient_to_json(quotient(weight_lattice(rs), root_lattice(rs)), rs)
    data["Q/Q_L"] = quotient_to_json(quotient(root_lattice(rs), long_root_lattice(rs)), rs)
    if args.level is not None:
        k = _level(args)
        data["Q/kQ_L"] = quotient_to_json(quotient(root_lattice(rs), scale(long_root_lattice(rs), k)), rs)
    lines = [f"type          {rs.type}",
             f"cartan        {data['cartan']}",
             f"|positive|    {len(rs.positive_roots)}",
             f"theta         {data['theta']}",
             f"marks         {data['marks']}",
             f"I             {data['I']}",
             f"dual coxeter  {rs.dual_coxeter}",
             f"|P/Q|         {data['P/Q']['order']}",
             f"|Q/Q_L|       {data['Q/Q_L']['order']}"]
    if "Q/kQ_L" in data:
        lines.append(f"|Q/kQ_L|      {data['Q/kQ_L']['order']}  snf {data['Q/kQ_L']['snf_diag']}")
    _emit(args, data, lines)


def cmd_modules(args):
    rs, k = _system(args), _level(args)
    rows = []
    for w in affine.enumerate_Pk(rs, k):
        q = affine.qdim_affine(rs, k, w, _dps(args))
        rows.append({"Lambda": list(w), "conformal_weight": str(affine.conformal_weight(rs, k, w)),
                     "qdim": _num(q, args.precision), "_text": _fmt(q, args.precision)})
    lines = [f"{','.join(map(str, r['Lambda'])):<16} h={r['conformal_weight']:<10} qdim={r.pop('_text')}"
             for r in rows]
    _emit(args, {"type": rs.type.family, "rank": rs.rank, "level": k, "modules": rows}, lines)


def cmd_qdim(args):
    rs, k = _system(args), _level(args)
    w = parse_weight(args.weight)
    value = affine.qdim_affine(rs, k, w, _dps(args))
    text = _fmt(value, args.precision)
    _emit(args, {"type": rs.type.family, "rank": rs.rank, "level": k, "Lambda": list(w),
                 "qdim": text}, [text])


def cmd_fusion_affine(args):
    rs, k = _system(args), _level(args)
    a, b = parse_weight(args.left), parse_weight(args.right)
    table = affine.fusion_affine(rs, k, a, b)
    lines = [f"{m} x {','.join(map(str, w))}" for w, m in sorted(table.items())]
    _emit(args, affine.table_to_json([a, b], table), lines)


def _para(rs, k, text):
    w, snf = parse_module(text)
    if not snf:
        snf = (0,) * len(pf.coset_group(rs, k).factors)
    return pf.label_from_snf(rs, k, w, snf)


def cmd_fusion(args):
    rs, k = _system(args), _level(args)
    p1, p2 = _para(rs, k, args.left), _para(rs, k, args.right)
    table = pf.fusion_para(rs, k, p1, p2)
    payload = {"inputs": [pf.label_to_json(rs, k, pf.canonicalize(rs, k, p)) for p in (p1, p2)],
               "outputs": [{"label": pf.label_to_json(rs, k, p), "mult": m}
                           for p, m in sorted(table.items())]}
    lines = [f"{m} x {pf.format_label(rs, k, p)}" for p, m in sorted(table.items())]
    _emit(args, payload, lines)


def cmd_classify(args):
    rs, k = _system(args), _level(args)
    labels = pf.classify(rs, k)
    qdims = [pf.qdim_para(rs, k, p, _dps(args)) for p in labels]
    glob = pf.glob_para(rs, k, _dps(args))
    payload = {"type": rs.type.family, "rank": rs.rank, "level": k, "count": len(labels),
               "labels": [pf.label_to_json(rs, k, p) for p in labels],
               "qdims": [_num(q, args.precision) for q in qdims],
               "glob": _num(glob, args.precision)}
    lines = [f"{rs.type} level {k}: {len(labels)} modules "
             f"(|P_+^k| = {len(affine.enumerate_Pk(rs, k))}, |Q/kQ_L| = {index(rs, 'Q/kQ_L', k)}, "
             f"|P/Q| = {index(rs, 'P/Q')})"]
    lines += [f"  {pf.format_label(rs, k, p):<20} qdim={_fmt(q, args.precision)}" for p, q in zip(labels, qdims)]
    lines.append(f"glob = {_fmt(glob, args.precision)}")
    _emit(args, payload, lines)


def cmd_verify(args):
    if args.family is None and args.rank is None and args.level is None:
        results = list(checks.acceptance(args.tolerance))
    else:
        rs, k = _system(args), _level(args)
        results = checks.run_case(rs.type.family, rs.rank, k, args.tolerance)
    payload = {"passed": all(c.passed for c in results),
               "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in results]}
    _emit(args, payload, [c.line() for c in results])
    failed = [c.name for c in results if not c.passed]
    if failed:
        raise ConsistencyError(", ".join(failed), "verification failed")


HANDLERS = {"rootdata": cmd_rootdata, "modules": cmd_modules, "qdim": cmd_qdim,
            "fusion-affine": cmd_fusion_affine, "fusion": cmd_fusion,
            "classify": cmd_classify, "verify": cmd_verify}


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
        env = os.environ.get("PARAFUSION_PRECISION")
        if env:
            try:
                args.precision = int(env)
            except ValueError:
                raise InputError(f"PARAFUSION_PRECISION must be an integer, got {env!r}") from None
        if args.precision < 1:
            raise InputError("--precision must be positive")
        affine.set_cache_dir(args.cache_dir)
        HANDLERS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f"identity failed: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())

"""Command-line entry point: ``nlconn {check,derive,verify,nullity} MANIFEST``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import connection as cn
from . import hermitian as hm
from .calculus import VectorForm
from .manifest import ManifestError, load_manifest
from .parser import parse_rational
from .report import emit_report, render_residual
from .suite import Blocked, Instance, run_suite
from .tangent import StructureError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

COEFFICIENT_CONVENTION = "h d/dx^a = d/dx^a - Gamma^i_a d/dy^i, so theta^i = dy^i + Gamma^i_a dx^a annihilates the horizontal space"


class InputError(Exception):
    pass


def _write(data: bytes, out: str | None):
    if out:
        try:
            Path(out).write_bytes(data)
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _dump(obj, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    lines = []
    for key, value in obj.items():
        if isinstance(value, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {v}" for k, v in value.items())
        else:
            lines.append(f"{key}: {value}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _instance(args) -> Instance:
    m = load_manifest(args.manifest)
    seed = m.seed if args.seed is None else args.seed
    return Instance(m, seed, args.points)


def _form_text(K: VectorForm) -> str:
    return render_residual(K) or "0"


def cmd_check(args) -> int:
    ins = _instance(args)
    try:
        ins.ts
        ins.sp
    except Blocked as exc:
        print(f"invalid structure or semispray: {exc}", file=sys.stderr)
        return EXIT_FAIL
    res = ins.compat_residual
    sb = cn.is_semibasic(ins.t, ins.ts.L, ins.ts.kernel_frame) if ins.t is not None else None
    ok = res.is_zero() and (sb is None or sb.ok)
    out = {
        "structure": "valid",
        "semispray": "spray" if ins.sp.is_spray else "semispray",
        "compatibility": "accepted" if ok else "rejected",
        "residual": render_residual(res),
    }
    if ok:
        conn = ins.conn
        out["homogeneous"] = conn.homogeneous
    _write(_dump(out, args.format), args.out)
    if not ok:
        print(f"compatibility rejected: t° + [C,S] - S = {render_residual(res) or '0'}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_derive(args) -> int:
    ins = _instance(args)
    try:
        conn = ins.conn
    except Blocked as exc:
        print(f"cannot build the connection: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = {
        "gamma": _form_text(conn.gamma),
        "h": _form_text(conn.h),
        "v": _form_text(conn.v),
        "canonical_semispray": _form_text(ins.S.S),
        "T": _form_text(ins.tor.T),
        "t_strong": _form_text(ins.tor.t_strong),
        "R": _form_text(ins.R),
        "F": _form_text(ins.F),
        "homogeneous": conn.homogeneous,
    }
    if ins.ts.canonical:
        out["coefficients"] = {f"Gamma^{i + 1}_{a + 1}": p.format()
                               for (i, a), p in sorted(cn.coefficients(conn, ins.ts).items())}
        out["coefficient_convention"] = COEFFICIENT_CONVENTION
        em = ins.g_gamma
        N = ins.ts.num_vars
        out["g_gamma"] = {f"({a + 1},{b + 1})": em.g_gamma[a][b].format() for a in range(N) for b in range(a, N)
                          if em.g_gamma[a][b]}
        K = hm.kahler_form(em, ins.F, ins.ts)
        out["kahler_form"] = {"^".join(f"d{_coord(i, N)}" for i in idx): p.format() for idx, p in K.items()}
    _write(_dump(out, args.format), args.out)
    return EXIT_OK


def _coord(i: int, N: int) -> str:
    n = N // 2
    return f"x{i + 1}" if i < n else f"y{i - n + 1}"


def cmd_verify(args) -> int:
    m = load_manifest(args.manifest)
    report = run_suite(m, args.seed, args.points)
    _write(emit_report(report, args.format, args.timings), args.out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_nullity(args) -> int:
    ins = _instance(args)
    N = 2 * ins.manifest.dimension_n
    parts = [p for p in args.point.replace(",", " ").split() if p]
    if len(parts) != N:
        raise InputError(f"--point needs {N} rationals, got {len(parts)}")
    try:
        z = tuple(parse_rational(p) for p in parts)
    except ValueError as exc:
        raise InputError(f"--point: {exc}") from exc
    try:
        conn = ins.conn
    except Blocked as exc:
        print(f"cannot build the connection: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if not ins.ts.canonical:
        raise InputError("nullity is available for the canonical L only")
    rep = cn.nullity(conn, ins.ts, z, ins.R)
    out = {
        "point": [str(c) for c in rep.point],
        "mu": rep.mu,
        "nullity_basis": [[str(c) for c in vec] for vec in rep.nullity_basis],
    }
    if args.format == "json":
        _write(_dump(out, "json"), args.out)
    else:
        lines = [f"point: ({', '.join(out['point'])})", f"mu: {rep.mu}"]
        lines += [f"basis: ({', '.join(v)})" for v in out["nullity_basis"]]
        _write(("\n".join(lines) + "\n").encode("utf-8"), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("manifest", help="JSON instance manifest")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=None, help="override the manifest seed")
    common.add_argument("--points", type=int, default=4, metavar="K", help="extra seeded rational sample points")

    p = argparse.ArgumentParser(prog="nlconn", description="Exact verification of nonlinear-connection identities.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="validate structure, semispray and strong torsion").set_defaults(func=cmd_check)
    sub.add_parser("derive", parents=[common], help="print the derived geometric objects").set_defaults(func=cmd_derive)
    v = sub.add_parser("verify", parents=[common], help="run the identity suite")
    v.add_argument("--timings", action="store_true", help="include per-check durations (not byte-stable)")
    v.set_defaults(func=cmd_verify)
    nl = sub.add_parser("nullity", parents=[common], help="nullity space of R at a point")
    nl.add_argument("--point", required=True, help="2n rationals, e.g. '1 1/2 0 -1'")
    nl.set_defaults(func=cmd_nullity)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.points < 0:
        print("error: --points must be >= 0", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except StructureError as exc:
        print(f"invalid structure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

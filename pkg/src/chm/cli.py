"""``chm``: command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error. Every subcommand
prints a short text report, or a JSON document with ``--json``.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import catalog, io
from .constructions import DitaSpec, dita, hadamard4, mub_check, mub_prime
from .core import DEFAULT_TOL, dephase, fourier, is_hadamard
from .equivalence import (ORACLE_TOL, equivalent_bruteforce, invariant_distinguish,
                          verify_certificate, EquivalenceVerdict)
from .geometry import basis_simplex, span_rank, sphere_radii, total_orthogonality
from .tangent import (CONSISTENCY_TOL, TOL_RANK, conjectured_dimension, continue_orders,
                      defect_formula, defect_numeric, dephased_bound)


class Failure(Exception):
    """Raised by a subcommand for a user-facing error (exit 1)."""


def _default_seed() -> int:
    return int(os.environ.get("CHM_SEED", "0"))


def _write_matrix(m, out, name, provenance, exact=False):
    if out is None:
        return None
    rep = "exact-phase" if exact else "cartesian"
    io.save(m, out, rep, name=name, provenance=provenance)
    return str(out)


def _matrix_summary(m) -> dict:
    r = is_hadamard(m)
    return {
        "n": int(m.shape[0]),
        "is_hadamard": r.is_hadamard,
        "max_unitarity_residual": r.max_unitarity_residual,
        "max_modulus_deviation": r.max_modulus_deviation,
    }


def cmd_fourier(args):
    m = fourier(args.n)
    rep = {"command": "fourier", **_matrix_summary(m),
           "out": _write_matrix(m, args.out, f"F_{args.n}", f"fourier({args.n})", args.exact)}
    return 0, rep


def cmd_h4(args):
    z = complex(np.exp(1j * args.z_phase))
    m = hadamard4(z)
    rep = {"command": "h4", "z_phase": args.z_phase, **_matrix_summary(m),
           "out": _write_matrix(m, args.out, "H4", f"hadamard4(exp(i*{args.z_phase!r}))")}
    return 0, rep


def cmd_dita(args):
    outer = io.load(args.outer)
    inners = [io.load(p) for p in args.inner]
    diags = [[float(x) for x in d.split(",")] for d in (args.diag or [])]
    try:
        m = dita(DitaSpec(outer, inners, diags))
    except ValueError as exc:
        raise Failure(str(exc)) from None
    rep = {"command": "dita", **_matrix_summary(m),
           "out": _write_matrix(m, args.out, "Dita", "dita")}
    return (0 if rep["is_hadamard"] else 1), rep


def cmd_check(args):
    m = io.load(args.path)
    r = is_hadamard(m, args.tol)
    rep = {"command": "check", "path": str(args.path), "n": int(m.shape[0]), "tol": args.tol,
           "is_unitary": r.is_unitary, "is_flat": r.is_flat, "is_hadamard": r.is_hadamard,
           "max_unitarity_residual": r.max_unitarity_residual,
           "max_modulus_deviation": r.max_modulus_deviation}
    return (0 if r.is_hadamard else 1), rep


def cmd_dephase(args):
    m, meta = io.load_with_meta(args.path)
    try:
        d, _, _ = dephase(m)
    except ValueError as exc:
        raise Failure(str(exc)) from None
    rep = {"command": "dephase", "n": int(m.shape[0]),
           "out": _write_matrix(d, args.out, meta["name"], f"dephase({meta['name']})")}
    if args.out is None:
        rep["matrix"] = [[[z.real, z.imag] for z in row] for row in d]
    return 0, rep


def cmd_equiv(args):
    a = io.load(args.a)
    b = io.load(args.b)
    if a.shape != b.shape:
        verdict = EquivalenceVerdict("Distinct", math.inf, "dimension")
    elif args.method == "oracle":
        try:
            verdict = equivalent_bruteforce(a, b, args.tol if args.tol else ORACLE_TOL)
        except ValueError as exc:
            raise Failure(str(exc)) from None
        if verdict.certificate is not None and args.cert:
            io.save_certificate(verdict.certificate, args.cert)
    elif args.method == "invariant":
        verdict = invariant_distinguish(a, b, args.tol if args.tol else DEFAULT_TOL)
    else:
        if not args.cert:
            raise Failure("--method certificate needs --cert PATH")
        cert = io.load_certificate(args.cert)
        ok, res = verify_certificate(a, b, cert, args.tol if args.tol else DEFAULT_TOL)
        verdict = EquivalenceVerdict("Equivalent" if ok else "Inconclusive", res, "certificate",
                                     cert if ok else None)
    rep = {"command": "equiv", **verdict.to_dict()}
    if args.method == "oracle" and args.cert and verdict.certificate is not None:
        rep["certificate_file"] = str(args.cert)
    return (0 if verdict.status == "Equivalent" else 1), rep


def cmd_defect(args):
    if args.formula_only:
        rep = {"command": "defect", "n": args.n, "d1": defect_formula(args.n),
               "dephased_bound": dephased_bound(args.n)}
        return 0, rep
    if args.n < 2:
        raise Failure("numerical defect needs n >= 2")
    r = defect_numeric(args.n, args.tol_rank)
    return (0 if r.agree else 1), {"command": "defect", **r.to_dict(), "tol_rank": args.tol_rank}


def cmd_perturb(args):
    seed = _default_seed() if args.seed is None else args.seed
    try:
        r = continue_orders(args.n, args.max_order, args.samples, seed, args.tol, threads=args.threads)
    except ValueError as exc:
        raise Failure(str(exc)) from None
    return 0, {"command": "perturb", **r.to_dict()}


def cmd_conjecture(args):
    try:
        d = conjectured_dimension(args.p1, args.p2)
    except ValueError as exc:
        raise Failure(str(exc)) from None
    n = args.p1 * args.p2**2
    bound = dephased_bound(n)
    return 0, {"command": "conjecture", "p1": args.p1, "p2": args.p2, "n": n,
               "conjectured_dimension": d, "dephased_bound": bound, "below_bound": d <= bound}


def cmd_mub(args):
    try:
        s = mub_prime(args.p)
    except ValueError as exc:
        raise Failure(str(exc)) from None
    rep = {"command": "mub", "p": args.p, "bases": len(s.bases),
           "pairwise_unbiased": s.pairwise_unbiased, "worst_deviation": s.worst_deviation}
    if args.check:
        ok, worst = mub_check(s, DEFAULT_TOL)
        rep["check"] = {"ok": ok, "worst_deviation": worst,
                        "span_rank": span_rank([basis_simplex(b) for b in s.bases]),
                        "full_rank": args.p**2 - 1}
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        files = []
        for k, b in enumerate(s.bases):
            files.append(str(io.save(b, out / f"mub_{args.p}_{k}.chm", name=f"MUB{args.p}[{k}]",
                                     provenance=f"mub_prime({args.p})")))
        rep["files"] = files
    ok = s.pairwise_unbiased and (not args.check or rep["check"]["ok"])
    return (0 if ok else 1), rep


def cmd_geometry(args):
    rep = {"command": "geometry", "n": args.n}
    ok = True
    if args.radii or not args.orthogonality:
        if args.n is None or args.n < 2:
            raise Failure("--radii needs --n >= 2")
        r_out, r_in, ratio = sphere_radii(args.n)
        rep["radii"] = {"outsphere": r_out, "insphere": r_in, "ratio": ratio,
                        "ratio_error": abs(ratio - (args.n - 1))}
        ok &= rep["radii"]["ratio_error"] < 1e-12
    if args.orthogonality:
        a, b = (io.load(p) for p in args.orthogonality)
        try:
            flag, max_dot = total_orthogonality(basis_simplex(a), basis_simplex(b), args.tol)
        except ValueError as exc:
            raise Failure(str(exc)) from None
        rep["orthogonality"] = {"totally_orthogonal": flag, "max_dot": max_dot, "tol": args.tol}
        ok &= flag
    return (0 if ok else 1), rep


def cmd_catalog(args):
    if args.build:
        if not args.out:
            raise Failure("--build needs --out PATH")
        try:
            entry = catalog.CATALOG[args.build]
        except KeyError:
            raise Failure(f"unknown catalog entry {args.build!r}") from None
        m = entry.build()
        rep = "exact-phase" if "exact_phase_roundtrip" in entry.expected_properties else "cartesian"
        io.save(m, args.out, rep, name=entry.name, provenance=entry.provenance)
        return 0, {"command": "catalog", "built": entry.name, "out": str(args.out), "representation": rep}
    if args.verify_all:
        results = catalog.verify_all()
        doc = {name: {c: {"ok": bool(ok), "residual": float(r)} for c, (ok, r) in checks.items()}
               for name, checks in results.items()}
        all_ok = all(v["ok"] for checks in doc.values() for v in checks.values())
        return (0 if all_ok else 1), {"command": "catalog", "verify_all": doc, "all_ok": all_ok}
    return 0, {"command": "catalog",
               "entries": [{"name": e.name, "provenance": e.provenance,
                            "expected_properties": list(e.expected_properties)}
                           for e in catalog.CATALOG.values()]}


def _text(rep: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in rep.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(_text(item, indent + 1))
                lines.append("")
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(l for l in lines if l is not None)


def _to_jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, (np.floating,)):
        return _to_jsonable(float(x))
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, dict):
        return {str(k): _to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_to_jsonable(v) for v in x]
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    p = argparse.ArgumentParser(prog="chm", description="Complex Hadamard matrix toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fourier", parents=[common], help="Fourier matrix F_N")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", type=Path)
    s.add_argument("--exact", action="store_true", help="store as exact phases")
    s.set_defaults(func=cmd_fourier)

    s = sub.add_parser("h4", parents=[common], help="4x4 one-parameter family H(z)")
    s.add_argument("--z-phase", type=float, required=True, help="arg z in radians")
    s.add_argument("--out", type=Path)
    s.set_defaults(func=cmd_h4)

    s = sub.add_parser("dita", parents=[common], help="warped tensor product")
    s.add_argument("--outer", type=Path, required=True)
    s.add_argument("--inner", type=Path, nargs="+", required=True)
    s.add_argument("--diag", action="append", help="comma-separated phases, first must be 0")
    s.add_argument("--out", type=Path)
    s.set_defaults(func=cmd_dita)

    s = sub.add_parser("check", parents=[common], help="is the matrix complex Hadamard?")
    s.add_argument("path", type=Path)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("dephase", parents=[common], help="dephased form")
    s.add_argument("path", type=Path)
    s.add_argument("--out", type=Path)
    s.set_defaults(func=cmd_dephase)

    s = sub.add_parser("equiv", parents=[common], help="Hadamard equivalence")
    s.add_argument("a", type=Path)
    s.add_argument("b", type=Path)
    s.add_argument("--method", choices=("oracle", "invariant", "certificate"), default="oracle")
    s.add_argument("--cert", type=Path,
                   help="certificate to verify (certificate) or where to write the witness (oracle)")
    s.add_argument("--tol", type=float)
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("defect", parents=[common], help="gcd-sum defect vs numerical kernel")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--tol-rank", type=float, default=TOL_RANK)
    s.add_argument("--formula-only", action="store_true")
    s.set_defaults(func=cmd_defect)

    s = sub.add_parser("perturb", parents=[common], help="order-by-order continuation from F_N")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--samples", type=int, default=5)
    s.add_argument("--seed", type=int, help="default: $CHM_SEED or 0")
    s.add_argument("--tol", type=float, default=CONSISTENCY_TOL)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_perturb)

    s = sub.add_parser("conjecture", parents=[common], help="conjectured family dimension for p1*p2^2")
    s.add_argument("--p1", type=int, required=True)
    s.add_argument("--p2", type=int, required=True)
    s.set_defaults(func=cmd_conjecture)

    s = sub.add_parser("mub", parents=[common], help="complete MUBs in prime dimension")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--check", action="store_true")
    s.add_argument("--out-dir", type=Path)
    s.set_defaults(func=cmd_mub)

    s = sub.add_parser("geometry", parents=[common], help="state-space geometry checks")
    s.add_argument("--n", type=int)
    s.add_argument("--radii", action="store_true")
    s.add_argument("--orthogonality", nargs=2, type=Path, metavar="PATH")
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_geometry)

    s = sub.add_parser("catalog", parents=[common], help="built-in named matrices")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--build", metavar="NAME")
    g.add_argument("--verify-all", action="store_true")
    s.add_argument("--out", type=Path)
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on usage errors
    try:
        code, rep = args.func(args)
    except (Failure, io.MatrixFileError, OSError) as exc:
        code, rep = 1, {"command": args.command, "error": str(exc)}
    rep = _to_jsonable(rep)
    if args.json:
        print(json.dumps(rep, indent=2, sort_keys=True))
    else:
        print(_text(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())

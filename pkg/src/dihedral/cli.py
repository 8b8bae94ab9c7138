"""Command-line front end.

Exit codes: 0 when everything requested passes, 1 on a verification
failure, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys

from .algebra import poly_to_json, q_str
from .identities import get_entry, identity_registry, verify_identity
from .klein import (
    KleinError, certification_grid, dih_4f3_variants, dih_polynomial, klein_covering, klein_psi,
)
from .odes import RELATIONS, ode_check
from .transforms import pullback_phi, theta_pair

__all__ = ["main", "run", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_PARAM_FLAGS = ("k", "l", "m", "n", "a", "b", "c", "A", "B", "C")


class UsageError(Exception):
    pass


def _klmn(sub):
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--l", type=int, required=True)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="dihedral", parents=[fmt],
                                description="Exact dihedral hypergeometric identities and Klein coverings.")
    sp = p.add_subparsers(dest="command", required=True)

    s = sp.add_parser("theta", parents=[fmt], help="theta polynomials of degree n")
    s.add_argument("--n", type=int, required=True)

    s = sp.add_parser("phi", parents=[fmt], help="pull-back map x theta2^2 / theta1^2")
    s.add_argument("--n", type=int, required=True)

    s = sp.add_parser("klein", parents=[fmt], help="certified Klein covering")
    _klmn(s)
    s.add_argument("--normalization", choices=("f3", "f2", "w"), default="f3")

    s = sp.add_parser("psi", parents=[fmt], help="quadratic invariant Psi")
    _klmn(s)
    s.add_argument("--form", choices=("kdf122", "kdf211"), default="kdf122")

    s = sp.add_parser("dih", parents=[fmt], help="Dih(t) polynomial")
    _klmn(s)
    s.add_argument("--form", choices=("2f1", "f2", "4f3"), default="f2")

    s = sp.add_parser("verify", parents=[fmt], help="verify registry identities")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--id", dest="identity")
    g.add_argument("--all", action="store_true")
    s.add_argument("--grid", choices=("small", "full"), default="small")
    s.add_argument("--order", type=int)
    for name in _PARAM_FLAGS:
        s.add_argument(f"--{name}", dest=f"param_{name}")

    s = sp.add_parser("ode", parents=[fmt], help="differential relation residual")
    s.add_argument("--relation", required=True, choices=sorted(RELATIONS))
    _klmn(s)
    s.add_argument("--printed", action="store_true",
                   help="use the literal printed coefficients where they differ")
    return p


# ---------------------------------------------------------------------------
# Subcommands: each returns (document, text, exit code)
# ---------------------------------------------------------------------------

def _theta(args):
    tp = theta_pair(args.n)
    return tp.to_json(), f"theta1 = {tp.theta1}\ntheta2 = {tp.theta2}", EXIT_OK


def _phi(args):
    phi = pullback_phi(args.n)
    doc = {"n": args.n, "numerator": poly_to_json(phi.num), "denominator": poly_to_json(phi.den)}
    return doc, f"phi = ({phi.num}) / ({phi.den})", EXIT_OK


def _klein(args):
    cov = klein_covering(args.k, args.l, args.m, args.n, args.normalization.upper(), strict=False)
    doc = cov.to_json()
    lines = [f"covering ({args.k},{args.l},{args.m},{args.n}) degree {cov.degree}",
             f"Theta1 = {cov.theta1}", f"Theta2 = {cov.theta2}", f"Psi = {cov.psi}",
             f"C = {q_str(cov.C)}"]
    lines += [f"  [{'pass' if c['pass'] else 'FAIL'}] {c['name']}" for c in cov.report.checks]
    lines.append("certified" if cov.certified else "NOT certified")
    return doc, "\n".join(lines), EXIT_OK if cov.certified else EXIT_FAIL


def _psi(args):
    psi = klein_psi(args.k, args.l, args.m, args.n, args.form.upper().replace("KDF", "KdF"))
    doc = {"k": args.k, "l": args.l, "m": args.m, "n": args.n, "form": args.form,
           "psi": poly_to_json(psi)}
    return doc, f"Psi = {psi}", EXIT_OK


def _dih(args):
    doc = {"k": args.k, "l": args.l, "m": args.m, "n": args.n, "form": args.form}
    if args.form == "4f3":
        variants = dih_4f3_variants(args.k, args.l, args.m, args.n)
        doc["variants"] = [poly_to_json(v) if not isinstance(v, str) else v for v in variants]
        text = "\n".join(f"variant {i + 1}: {v}" for i, v in enumerate(variants))
        defined = [v for v in variants if not isinstance(v, str)]
        if not defined:
            return doc, text, EXIT_FAIL
        if any(v != defined[0] for v in defined):
            doc["agree"] = False
            return doc, text + "\nvariants disagree", EXIT_FAIL
        doc["agree"] = True
        doc["dih"] = poly_to_json(defined[0])
        return doc, text, EXIT_OK
    p = dih_polynomial(args.k, args.l, args.m, args.n, args.form)
    doc["dih"] = poly_to_json(p)
    return doc, f"Dih = {p}", EXIT_OK


def _params_from(args, eid):
    entry = get_entry(eid)
    out = {}
    for name in _PARAM_FLAGS:
        v = getattr(args, f"param_{name}")
        if v is None:
            continue
        if name not in entry.params:
            raise UsageError(f"identity {eid} takes parameters {sorted(entry.params)}, not --{name}")
        out[name] = v
    return out


def _small_grid():
    return certification_grid(1, range(2, 4))


def _verify_all(args):
    results = []
    failed = 0
    for entry in sorted(identity_registry(), key=lambda e: e.id):
        rep = verify_identity(entry.id, None, args.order)
        results.append(rep.to_json())
        failed += not rep.verified
    grid = _small_grid() if args.grid == "small" else certification_grid()
    coverings = []
    for t in grid:
        cov = klein_covering(*t, strict=False)
        coverings.append({"k": t[0], "l": t[1], "m": t[2], "n": t[3], "certified": cov.certified})
        failed += not cov.certified
        if not cov.certified:
            continue
        for rel, (parity, _) in sorted(RELATIONS.items()):
            d = cov.degree
            if parity != "any" and parity != ("odd-degree" if d % 2 else "even-degree"):
                continue
            res = ode_check(rel, *t)
            if not res["pass"]:
                failed += 1
                coverings[-1].setdefault("ode_failures", []).append(rel)
    doc = {"grid": args.grid, "identities": results, "coverings": coverings, "failures": failed}
    lines = [f"{r['id']}: {r['outcome']}" + (f" (order {r['order']})" if r["order"] else " (exact)")
             for r in results]
    ok_cov = sum(c["certified"] and "ode_failures" not in c for c in coverings)
    lines.append(f"coverings: {ok_cov}/{len(coverings)} certified with all ODE relations")
    lines.append("all passed" if not failed else f"{failed} failure(s)")
    return doc, "\n".join(lines), EXIT_OK if not failed else EXIT_FAIL


def _verify(args):
    if args.all:
        return _verify_all(args)
    params = _params_from(args, args.identity)
    rep = verify_identity(args.identity, params, args.order)
    text = f"{rep.id}: {rep.summary()}"
    if rep.mismatch:
        text += f"\n  lhs: {rep.mismatch['lhs']}\n  rhs: {rep.mismatch['rhs']}"
    return rep.to_json(), text, EXIT_OK if rep.verified else EXIT_FAIL


def _ode(args):
    doc = ode_check(args.relation, args.k, args.l, args.m, args.n, args.printed)
    text = f"{args.relation} on ({args.k},{args.l},{args.m},{args.n}): " + (
        "residual 0" if doc["pass"] else "nonzero residual " + " ".join(doc["residual"]))
    return doc, text, EXIT_OK if doc["pass"] else EXIT_FAIL


_COMMANDS = {"theta": _theta, "phi": _phi, "klein": _klein, "psi": _psi, "dih": _dih,
             "verify": _verify, "ode": _ode}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    fmt = getattr(args, "format", "text")
    try:
        doc, text, code = _COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(err)
        print(f"dihedral: error: {exc}", file=err)
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        print(f"dihedral: error: {exc.args[0] if exc.args else exc}", file=err)
        return EXIT_USAGE
    except KleinError as exc:
        print(f"dihedral: verification failed: {exc}", file=err)
        return EXIT_FAIL
    if fmt == "json":
        out.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        out.write(text + "\n")
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

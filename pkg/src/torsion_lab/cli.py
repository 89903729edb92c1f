"""Command-line interface.

Every command prints JSON on standard output; ``--pretty`` switches to a
human-readable rendering.  Exit codes: 0 success, 1 parse error,
2 not applicable (e.g. non-acyclic input), 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import verify as V
from .complexes import torsion
from .cover import cover_torsion, fitting_order
from .errors import NotAcyclicError, ParseError
from .exactalg import LaurentPoly, series_expand
from .instance import load_instance
from .novikov import GroupRingElement, reconstruct_from_specialization, symmetrize

EXIT_OK, EXIT_PARSE, EXIT_NA, EXIT_FAIL = 0, 1, 2, 3


def _emit(args, payload, pretty_lines=None):
    if args.pretty and pretty_lines is not None:
        for line in pretty_lines:
            print(line)
    else:
        print(json.dumps(payload, indent=2 if args.pretty else None, sort_keys=False))


def _error(args, message, code):
    _emit(args, {"error": message}, [f"error: {message}"])
    return code


def cmd_torsion(args):
    b = load_instance(args.file)
    block = args.block
    if block == "complex":
        if b.complex is None:
            raise ParseError(f"{args.file}: no complex block")
        u, cert = torsion(b.complex)
    elif block == "morse":
        if b.morse is None:
            raise ParseError(f"{args.file}: no morse block")
        u, cert = torsion(b.morse_complex().complex)
    else:
        if b.cover is None:
            raise ParseError(f"{args.file}: no cover block")
        u, cert = torsion(b.cover)
    payload = u.to_json()
    if args.certificate:
        payload = {"torsion": payload, "subsets": [list(s) for s in cert.subsets], "determinants": [d.to_json() for d in cert.determinants]}
    _emit(args, payload, [f"torsion ({block}): {u}  [modulo ±t^k]"])
    return EXIT_OK


def cmd_zeta(args):
    b = load_instance(args.file)
    if b.orbits is None:
        raise ParseError(f"{args.file}: no orbits block")
    N = b.precision(args.order)
    rat = b.zeta_rational()
    ser = series_expand(rat, N)
    _emit(args, {"rational": rat.to_json(), "series": ser.to_json()}, [f"zeta = {rat}", f"     = {ser}"])
    return EXIT_OK


def cmd_morse(args):
    from .morse import chain_homotopy_W

    b = load_instance(args.file)
    if b.morse is None:
        raise ParseError(f"{args.file}: no morse block")
    mc = b.morse_complex()
    dets = mc.laplacian_determinants()
    payload = {
        "ranks": list(mc.complex.ranks),
        "differentials": [d.to_json() for d in mc.differentials],
        "laplacian_determinants": [d.to_json() for d in dets],
        "acyclic": mc.is_acyclic,
    }
    lines = [f"ranks {list(mc.complex.ranks)}", f"acyclic over Q(t): {mc.is_acyclic}"]
    if not mc.is_acyclic:
        _emit(args, payload, lines)
        return EXIT_NA
    u = torsion(mc.complex)[0]
    chain_homotopy_W(mc)
    payload["torsion"] = u.to_json()
    payload["w_identity"] = True
    lines += [f"torsion: {u}", "d*W + Wd* = t holds"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_ord(args):
    b = load_instance(args.file)
    if b.presentation is None:
        raise ParseError(f"{args.file}: no presentation block")
    u = fitting_order(b.presentation)
    _emit(args, u.to_json(), [f"ord = {u}  [modulo ±t^k]"])
    return EXIT_OK


def cmd_verify(args):
    checks = V.CHECKS if args.check == "all" else (args.check,)
    reports = V.run_suite(args.files, checks, args.order)
    code = V.exit_code(reports, explicit=args.check != "all")
    lines = []
    for r in reports:
        extra = f" m={r.m}" if r.m is not None else ""
        why = f" ({r.reason})" if r.reason else ""
        lines.append(f"{r.file}: {r.check}: {r.outcome}{extra}{why}")
    _emit(args, [r.to_json() for r in reports], lines)
    return code


def cmd_sw(args):
    b = load_instance(args.file)
    nb = b.novikov
    if nb is None:
        raise ParseError(f"{args.file}: no novikov block")
    N = args.order if args.order is not None else nb.precision
    i = nb.i_eta(N)
    s = nb.sw_series(N)
    payload = {"sw": s.to_json(), "exact": i.exact}
    lines = [f"t^(chi/2) rho(I) = {s}"]
    code = EXIT_OK
    if args.symmetrize:
        if not i.exact:
            payload["symmetrize_error"] = "series is not a finite sum; no symmetric translate"
            code = EXIT_NA
        else:
            g = GroupRingElement(1, {(e,): c for e, c in s.terms()})
            try:
                sym = symmetrize(g)
                poly = LaurentPoly({e[0]: c for e, c in sym.terms.items()})
                payload["symmetrized"] = poly.to_json()
                lines.append(f"symmetrized: {poly}")
            except ValueError as exc:
                payload["symmetrize_error"] = str(exc)
                lines.append(f"symmetrize: {exc}")
                code = EXIT_NA
    if b.cover is not None:
        try:
            tau = cover_torsion(b.cover)
            match = V.series_matches_unit_class(s, tau)
            payload["cover_torsion"] = tau.to_json()
            lines.append(f"cover torsion {tau}: {'match' if match else 'MISMATCH'} modulo ±t^k")
        except NotAcyclicError:
            match = s.is_zero
            payload["cover_torsion"] = "not acyclic"
            lines.append(f"cover not acyclic; SW series {'is' if match else 'is NOT'} zero")
        payload["outcome"] = V.PASS if match else V.FAIL
        if not match:
            code = EXIT_FAIL
    _emit(args, payload, lines)
    return code


def cmd_reconstruct(args):
    try:
        data = json.loads(args.poly)
    except json.JSONDecodeError as exc:
        raise ParseError(f"polynomial is not valid JSON: {exc}") from exc
    q = LaurentPoly.from_json(data)
    try:
        f = reconstruct_from_specialization(q, args.rank, args.box)
    except ValueError as exc:
        return _error(args, str(exc), EXIT_NA)
    _emit(args, f.to_json(), [" + ".join(f"{c}*e^{list(e)}" for e, c in sorted(f.terms.items())) or "0"])
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="torsion-lab", description="Exact torsion, zeta and Novikov computations on instance files.")
    p.add_argument("--pretty", action="store_true", help="human-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="human-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("torsion", cmd_torsion, "torsion of a complex, Morse or cover block")
    sp.add_argument("file")
    sp.add_argument("--block", choices=("complex", "morse", "cover"), default="cover")
    sp.add_argument("--certificate", action="store_true", help="also print the chosen subsets and block determinants")

    sp = add("zeta", cmd_zeta, "zeta function of the orbits block")
    sp.add_argument("file")
    sp.add_argument("--order", type=int)

    sp = add("morse", cmd_morse, "Morse complex summary with the W identity check")
    sp.add_argument("file")

    sp = add("ord", cmd_ord, "Fitting order of the presentation block")
    sp.add_argument("file")

    sp = add("verify", cmd_verify, "run identity checks on instance files or directories")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--check", choices=("all",) + V.CHECKS, default="all")
    sp.add_argument("--order", type=int)

    sp = add("sw", cmd_sw, "SW-type series of the novikov block")
    sp.add_argument("file")
    sp.add_argument("--order", type=int)
    sp.add_argument("--symmetrize", action="store_true")

    sp = add("reconstruct", cmd_reconstruct, "recover a group ring element from its specialization")
    sp.add_argument("poly", help='JSON Laurent polynomial, e.g. "[[-16,-1],[4,1]]" (exponent, coefficient pairs)')
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--box", type=int, required=True, help="box size N (|a_i| < N)")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command != "verify" and getattr(args, "order", None) is not None and args.order < 1:
        parser.error("--order must be positive")
    try:
        return args.func(args)
    except ParseError as exc:
        return _error(args, str(exc), EXIT_PARSE)
    except NotAcyclicError as exc:
        return _error(args, f"not acyclic: {exc}", EXIT_NA)


if __name__ == "__main__":
    sys.exit(main())

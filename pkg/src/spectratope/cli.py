"""Command-line front end.

Exit codes: 0 on success or an affirmative answer, 1 for a well-formed
negative answer (not a member, no realization, verification failed), 2 for
usage and input errors.  Every numeric value is printed as an exact rational
string unless ``--decimal`` is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from .errors import ConditionsFail, NotSupported, SpectratopeError
from .hadamard import from_pm, group_matrix, hadamard_of_order, perm_basis, to_pm, walsh
from .linalg import RatMatrix, format_decimal, matrix_from_json, matrix_to_json, parse_vector, vector_to_json
from .perron import classify, doubly_stochastic_eligible, necessary_conditions, relative_gain_array
from .polyhedra import (
    HRep,
    cone_membership_direct,
    enumerate_vertices,
    hrep_membership,
    project_p1,
    simplex_volume,
    spectracone_hrep,
    spectratope_hrep,
    walsh_cone_coefficients,
    wpolytope_hrep,
)
from .realize import RealizationCertificate, n3_basis, realize_auto, verify_certificate

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class UsageError(Exception):
    """Bad flag or unreadable input; reported with exit code 2."""


# -- input ------------------------------------------------------------------------


def _read_text(source: str, flag: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text()
    except OSError as exc:
        raise UsageError(f"{flag}: cannot read {source!r}: {exc.strerror}") from None


def _load_matrix(source: str) -> RatMatrix:
    text = _read_text(source, "--matrix")
    stripped = text.strip()
    try:
        if stripped.startswith("["):
            return matrix_from_json(json.loads(stripped))
        return from_pm(stripped)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"--matrix: {source!r} is neither a JSON rational grid nor +/- text ({exc})") from None


def _load_json(source: str, flag: str):
    try:
        return json.loads(_read_text(source, flag))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: invalid JSON in {source!r}: {exc}") from None


def _vector(text: str, flag: str) -> tuple:
    try:
        return parse_vector(text)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _basis(args) -> RatMatrix:
    if getattr(args, "walsh", None) is not None:
        return walsh(args.walsh).matrix
    if getattr(args, "matrix", None) is not None:
        return _load_matrix(args.matrix)
    raise UsageError("one of --walsh or --matrix is required")


# -- output -----------------------------------------------------------------------


def _decimalize(obj, digits: int):
    if isinstance(obj, dict):
        return {k: _decimalize(v, digits) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decimalize(v, digits) for v in obj]
    if isinstance(obj, str) and _RATIONAL.match(obj):
        return format_decimal(Fraction(obj), digits)
    return obj


def _emit(args, obj, out=None):
    out = out or sys.stdout
    if args.decimal is not None:
        obj = _decimalize(obj, args.decimal)
    out.write(json.dumps(obj, indent=2) + "\n")


def _emit_matrix(args, M: RatMatrix):
    fmt = args.format
    if fmt == "pm":
        try:
            sys.stdout.write(to_pm(M))
        except ValueError as exc:
            raise UsageError(f"--format pm: {exc}") from None
    elif fmt in ("csv", "decimal"):
        digits = args.decimal if args.decimal is not None else 6
        w = csv.writer(sys.stdout, lineterminator="\n")
        for row in M:
            w.writerow([format_decimal(x, digits) if fmt == "decimal" else str(x) for x in row])
    else:
        _emit(args, matrix_to_json(M))


def _hrep_csv_rows(region: str, h: HRep, vertices) -> list[list[str]]:
    rows = []
    for idx, v in enumerate(vertices, 1):
        rows.append([region, "vertex", str(idx), *map(str, v), "", ""])
    for idx, r in enumerate(h.rows, 1):
        rows.append([region, "row", str(idx), *map(str, r.normal), str(r.offset), r.tag])
    return rows


def _write_csv(rows: list[list[str]], dim: int, dest) -> None:
    w = csv.writer(dest, lineterminator="\n")
    w.writerow(["region", "kind", "index", *[f"c{i}" for i in range(1, dim + 1)], "offset", "tag"])
    w.writerows(rows)


# -- verbs ------------------------------------------------------------------------


def cmd_walsh(args) -> int:
    _emit_matrix(args, walsh(args.n).matrix)
    return 0


def cmd_hadamard(args) -> int:
    _emit_matrix(args, hadamard_of_order(args.order).matrix)
    return 0


def cmd_classify(args) -> int:
    S = _basis(args)
    c = classify(S)
    eligible = doubly_stochastic_eligible(S)
    _emit(args, {
        "perron_indices": sorted(c.perron_indices),
        "strong_index": c.strong_index,
        "is_perron_similarity": c.is_perron_similarity,
        "doubly_stochastic_eligible": None if eligible is None else {
            "index": eligible[0], "alpha": str(eligible[1]), "beta": str(eligible[2])},
        "relative_gain_array": matrix_to_json(relative_gain_array(S)),
    })
    return 0


def _emit_hrep(args, h: HRep, region: str) -> int:
    if args.format == "csv":
        _write_csv(_hrep_csv_rows(region, h, []), h.dim, sys.stdout)
    else:
        _emit(args, h.to_json())
    return 0


def cmd_cone(args) -> int:
    return _emit_hrep(args, spectracone_hrep(_basis(args)), "C")


def cmd_tope(args) -> int:
    S = _basis(args)
    h = spectratope_hrep(S) if args.kind == "P" else wpolytope_hrep(S)
    return _emit_hrep(args, h, args.kind)


def cmd_project(args) -> int:
    return _emit_hrep(args, project_p1(_basis(args)), "P1")


def cmd_membership(args) -> int:
    x = _vector(args.vector, "--vector")
    if args.walsh is not None:
        coeffs = walsh_cone_coefficients(args.walsh, x)
        member = all(c >= 0 for c in coeffs)
        body = {"member": member, "coefficients": vector_to_json(coeffs)}
    elif args.hrep is not None:
        h = HRep.from_json(_load_json(args.hrep, "--hrep"))
        member = hrep_membership(h, x)
        body = {"member": member}
    else:
        member, A = cone_membership_direct(_load_matrix(args.matrix), x)
        body = {"member": member, "realizer": matrix_to_json(A)}
    _emit(args, body)
    return 0 if member else 1


def _region(args) -> HRep:
    if args.hrep is not None:
        return HRep.from_json(_load_json(args.hrep, "--hrep"))
    S = _basis(args)
    return {"W": wpolytope_hrep, "P": spectratope_hrep, "P1": project_p1}[args.kind](S)


def cmd_volume(args) -> int:
    if args.vertices is not None:
        verts = [_vector(v, "--vertices") for v in args.vertices.split(";")]
    else:
        verts = enumerate_vertices(_region(args))
    if args.kind == "P" and args.vertices is None:
        verts = [v[1:] for v in verts]  # x_1 is pinned; measure in the remaining coordinates
    dim = len(verts[0]) if verts else 0
    if len(verts) != dim + 1:
        raise UsageError(f"region has {len(verts)} vertices; only simplices (dim + 1 = {dim + 1}) have a volume here")
    _emit(args, {"volume": str(simplex_volume(verts)), "vertices": [vector_to_json(v) for v in verts]})
    return 0


def _figure_rows(which: str, a: Fraction) -> tuple[list[list[str]], int]:
    H1 = walsh(1).matrix
    if which == "fig1":
        regions = [("W(H1)", wpolytope_hrep(H1)), ("P(H1)", spectratope_hrep(H1)), ("P1(H1)", project_p1(H1))]
    elif which == "fig2":
        S = RatMatrix([[1, 1, 0], [1, -1, 0], [0, 0, 1]])
        P = RatMatrix([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
        regions = [("P1(S)", project_p1(S)), ("P1(SP)", project_p1(S @ P)), ("P1(S_a)", project_p1(n3_basis(a)))]
    else:
        regions = [("P1(H2)", project_p1(walsh(2).matrix))]
    dim = max(h.dim for _, h in regions)
    rows = []
    for name, h in regions:
        pad = [""] * (dim - h.dim)
        for r in _hrep_csv_rows(name, h, enumerate_vertices(h)):
            rows.append(r[:3 + h.dim] + pad + r[3 + h.dim:])
    return rows, dim


def cmd_vertices(args) -> int:
    if args.figure is not None:
        try:
            a = Fraction(args.a)
        except ValueError:
            raise UsageError(f"--a: not a rational literal: {args.a!r}") from None
        if not 0 <= a <= 1:
            raise UsageError("--a must lie in [0, 1]")
        rows, dim = _figure_rows(args.figure, a)
        buf = io.StringIO()
        _write_csv(rows, dim, buf)
        if args.out:
            try:
                Path(args.out).write_text(buf.getvalue())
            except OSError as exc:
                raise UsageError(f"--out: cannot write {args.out!r}: {exc.strerror}") from None
        else:
            sys.stdout.write(buf.getvalue())
        return 0
    h = _region(args)
    verts = enumerate_vertices(h)
    if args.format == "csv":
        _write_csv(_hrep_csv_rows(args.kind, h, verts), h.dim, sys.stdout)
    else:
        _emit(args, {"dim": h.dim, "vertices": [vector_to_json(v) for v in verts]})
    return 0


def cmd_realize(args) -> int:
    spectrum = _vector(args.spectrum, "--spectrum")
    try:
        cert = realize_auto(spectrum, symmetric=args.symmetric)
    except (ConditionsFail, NotSupported) as exc:
        report = exc.report or necessary_conditions(spectrum)
        _emit(args, {"realizable": False, "reason": str(exc), "report": report.to_json()})
        return 1
    body = cert.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(body, indent=2) + "\n")
    _emit(args, body)
    return 0


def cmd_verify(args) -> int:
    try:
        cert = RealizationCertificate.from_json(_load_json(args.certificate, "--certificate"))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"--certificate: malformed certificate ({exc})") from None
    spectrum = _vector(args.spectrum, "--spectrum") if args.spectrum else None
    report = verify_certificate(cert, spectrum)
    _emit(args, report.to_json())
    return 0 if report.passed else 1


def cmd_scheme(args) -> int:
    if args.x is not None:
        _emit_matrix(args, group_matrix(args.n, _vector(args.x, "--x")))
        return 0
    if args.k is not None:
        _emit_matrix(args, perm_basis(args.n, args.k).as_matrix())
        return 0
    images = {str(k): [r + 1 for r in perm_basis(args.n, k).image] for k in range(1, 2**args.n + 1)}
    _emit(args, {"n": args.n, "images": images})
    return 0


# -- parser -----------------------------------------------------------------------


def _add_basis(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--walsh", type=int, metavar="N", help="use the Walsh matrix H_N")
    g.add_argument("--matrix", metavar="FILE", help="JSON rational grid or +/- text; '-' reads stdin")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pm", "decimal"), default="json")
    common.add_argument("--decimal", type=int, metavar="K", help="render rationals as K-digit decimals")

    parser = argparse.ArgumentParser(prog="spectratope", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("walsh", parents=[common], help="Walsh matrix H_n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_walsh)

    p = sub.add_parser("hadamard", parents=[common], help="normalized Hadamard matrix of a supported order")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_hadamard)

    p = sub.add_parser("classify", parents=[common], help="Perron-similarity classification of a basis")
    _add_basis(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cone", parents=[common], help="H-representation of C(S)")
    _add_basis(p)
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("tope", parents=[common], help="H-representation of P(S) or W(S)")
    _add_basis(p)
    p.add_argument("--kind", choices=("P", "W"), default="P")
    p.set_defaults(func=cmd_tope)

    p = sub.add_parser("project", parents=[common], help="H-representation of P1(S)")
    _add_basis(p)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("membership", parents=[common], help="test x against C(S) or an H-representation")
    g = _add_basis(p)
    g.add_argument("--hrep", metavar="FILE")
    p.add_argument("--vector", required=True)
    p.set_defaults(func=cmd_membership)

    for verb, func, text in (("volume", cmd_volume, "volume of a simplex region"),
                             ("vertices", cmd_vertices, "vertex enumeration and figure data")):
        p = sub.add_parser(verb, parents=[common], help=text)
        g = _add_basis(p, required=False)
        g.add_argument("--hrep", metavar="FILE")
        p.add_argument("--kind", choices=("W", "P", "P1"), default="W")
        if verb == "volume":
            g.add_argument("--vertices", help="semicolon-separated vertex list, e.g. '0,0;1,1;1,-1'")
        else:
            g.add_argument("--figure", choices=("fig1", "fig2", "fig3"))
            p.add_argument("--a", default="1/2", help="S_a parameter for fig2")
            p.add_argument("--out", metavar="PATH")
        p.set_defaults(func=func)

    p = sub.add_parser("realize", parents=[common], help="realize a spectrum with a certificate")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--out", metavar="PATH", help="also write the certificate to PATH")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", parents=[common], help="re-check a realization certificate")
    p.add_argument("--certificate", required=True, metavar="FILE")
    p.add_argument("--spectrum")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scheme", parents=[common], help="permutation basis of the Walsh association scheme")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--k", type=int)
    g.add_argument("--x", help="coefficients of a group matrix")
    p.set_defaults(func=cmd_scheme)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "format", None) == "decimal" and args.decimal is None:
        args.decimal = 6
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SpectratopeError, ValueError) as exc:
        print(f"error ({args.verb}): {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

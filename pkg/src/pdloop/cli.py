"""Command-line interface.

Exit codes: 0 success, 1 a hypothesis of the theorem in use fails or is
unknown, 2 malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report
from .algebra import FieldSpec
from .catalog import Catalog, resolve
from .constructors import GyrationSpec, connected_sum, gyration
from .decompose import (
    cross_check,
    decompose,
    loop_series_decomposition,
    loop_series_one_relator,
    one_relator,
)
from .errors import HypothesisError, InputError
from .localize import full_plan, retraction_plan, skeleton_class_plan
from .momentangle import (
    SimplicialComplex,
    minimal_missing_faces,
    neighbourliness,
    sphere_check,
    zk_decompose,
    zk_skeleton,
    ZkReport,
)
from .pdcomplex import PDComplex, class_a_evidence, validate
from .series import DEFAULT_CAP

DEFAULT_CATALOG = ".pdloop-catalog"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _primes(text: str | None):
    if text is None or text == "auto":
        return None
    try:
        return frozenset(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise InputError(f"--localize expects 'auto' or a comma list of primes, got {text!r}") from None


def _complex(args, source: str) -> PDComplex:
    doc = resolve(source, Catalog(Path(args.catalog)))
    if not isinstance(doc, PDComplex):
        raise InputError(f"{source} is a simplicial complex; expected a duality complex")
    return doc


def _write_complex(M: PDComplex, out: str | None) -> dict:
    res = report.complex_doc(M)
    if out:
        Path(out).write_text(M.dumps(), encoding="utf-8")
        res["written"] = out
    return res


def cmd_validate(args):
    M = _complex(args, args.file)
    rep = validate(M)
    doc = report.validation_doc(M, rep)
    return doc, (0 if rep.ok else 1), ()


def cmd_decompose(args):
    M = _complex(args, args.file)
    field = FieldSpec.parse(args.field)
    loc = _primes(args.localize)
    d = decompose(M, loc)
    pres = one_relator(M, field, loc)
    series = loop_series_decomposition(d, field, args.cap)
    res = {"decomposition": report.decomposition_doc(d),
           "presentation": report.presentation_doc(pres),
           "series": list(series.coeffs)}
    return res, 0, d.citations + pres.citations


def cmd_hilbert(args):
    M = _complex(args, args.file)
    field = FieldSpec.parse(args.field)
    loc = _primes(args.localize)
    if args.method == "both":
        r = cross_check(M, field, args.cap, loc)
        return report.cross_check_doc(r), (0 if r.equal else 1), ("Thm 1", "Thm 4.3")
    res = {"name": M.name, "field": str(field), "cap": args.cap}
    if args.method == "decomposition":
        d = decompose(M, loc)
        res["decomposition"] = list(loop_series_decomposition(d, field, args.cap).coeffs)
        res["localization"] = sorted(d.localization)
        return res, 0, d.citations
    s = loop_series_one_relator(M, field, args.cap, loc)
    res["one_relator"] = list(s.coeffs)
    return res, 0, ("Thm 4.1", "Thm 4.3")


def cmd_sum(args):
    M = connected_sum(_complex(args, args.a), _complex(args, args.b))
    return _write_complex(M, args.output), 0, ("Prop 6.1",)


def cmd_gyrate(args):
    M = gyration(_complex(args, args.a), GyrationSpec(args.k, args.tau))
    return _write_complex(M, args.output), 0, ("Lemma 6.5", "Lemma 6.6", "Lemma 6.7")


def cmd_catalog(args):
    cat = Catalog(Path(args.catalog))
    if args.action == "list":
        args.command = "catalog list"
        return {"names": cat.names()}, 0, ()
    if not args.name:
        raise InputError(f"catalog {args.action} needs a NAME")
    if args.action == "add":
        if not args.source:
            raise InputError("catalog add needs a SOURCE (file or constructor spec)")
        doc = resolve(args.source, cat)
        path = cat.add(args.name, doc, replace=args.replace)
        args.command = "catalog add"
        res = (report.complex_doc(doc) if isinstance(doc, PDComplex)
               else {"simplicial": doc.to_json()})
        res["written"] = str(path)
        return res, 0, ()
    args.command = "catalog get"
    doc = cat.get(args.name)
    if isinstance(doc, PDComplex):
        return _write_complex(doc, args.output), 0, ()
    res = {"simplicial": doc.to_json()}
    if args.output:
        Path(args.output).write_text(doc.dumps(), encoding="utf-8")
        res["written"] = args.output
    return res, 0, ()


def cmd_zk(args):
    K = resolve(args.file, Catalog(Path(args.catalog)))
    if not isinstance(K, SimplicialComplex):
        raise InputError(f"{args.file} is not a simplicial complex document")
    if args.decompose:
        r = zk_decompose(K, limit=args.limit)
        return report.zk_doc(r), 0, r.citations + (r.decomposition.citations if r.decomposition else ())
    skel, ledger = zk_skeleton(K, args.limit)
    n = K.dim
    r = ZkReport(K.m, n, K.m + n + 1, 2 * neighbourliness(K) + 2, neighbourliness(K),
                 tuple(minimal_missing_faces(K)), skel, ledger, "not evaluated",
                 sphere_report=sphere_check(K, n))
    return report.zk_doc(r), 0, ()


def cmd_primes(args):
    M = _complex(args, args.file)
    ev = class_a_evidence(M)
    res = {"evidence": report.evidence_doc(ev)}
    for key, fn in (("retraction", retraction_plan), ("skeleton", skeleton_class_plan),
                    ("full", full_plan)):
        try:
            res[key] = report.plan_doc(fn(M))
        except HypothesisError as exc:
            res[key] = {"error": str(exc)}
    return res, 0, ev.citations


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write the machine report to PATH")
    common.add_argument("--catalog", default=DEFAULT_CATALOG, help="catalog directory")
    p = _Parser(prog="pdloop", description="Loop space decompositions of Poincare duality complexes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check duality symmetry")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("decompose", parents=[common], help="loop space decomposition")
    s.add_argument("file")
    s.add_argument("--field", default="Q")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.add_argument("--localize", default="auto")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("hilbert", parents=[common], help="Poincare series of loop homology")
    s.add_argument("file")
    s.add_argument("--field", default="Q")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.add_argument("--method", choices=("both", "decomposition", "one-relator"), default="both")
    s.add_argument("--localize", default="auto")
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("sum", parents=[common], help="connected sum")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sum)

    s = sub.add_parser("gyrate", parents=[common], help="gyration")
    s.add_argument("a")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--tau", default="0")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gyrate)

    s = sub.add_parser("catalog", parents=[common], help="named complex store")
    s.add_argument("action", choices=("add", "get", "list"))
    s.add_argument("name", nargs="?")
    s.add_argument("source", nargs="?")
    s.add_argument("-o", "--output")
    s.add_argument("--replace", action="store_true")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("zk", parents=[common], help="moment-angle manifold of a simplicial sphere")
    s.add_argument("file")
    s.add_argument("--decompose", action="store_true")
    s.add_argument("--limit", type=int, default=20, help="maximum vertex count for subset enumeration")
    s.set_defaults(func=cmd_zk)

    s = sub.add_parser("primes", parents=[common], help="localization plans")
    s.add_argument("file")
    s.set_defaults(func=cmd_primes)
    return p


def run(argv=None, out=None) -> tuple[int, dict]:
    """Run one command; returns (exit code, machine document)."""
    out = out if out is not None else sys.stdout
    command = "pdloop"
    json_path = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        json_path = args.json
        result, code, cites = args.func(args)
        command = args.command
        doc = report.envelope(command, result, code, cites)
    except InputError as exc:
        code, doc = 2, report.error_doc(command, exc, 2)
    except HypothesisError as exc:
        code, doc = 1, report.error_doc(command, exc, 1)
    out.write(report.render_text(doc))
    if json_path:
        try:
            Path(json_path).write_text(report.dumps(doc), encoding="utf-8")
        except OSError as exc:
            sys.stderr.write(f"cannot write {json_path}: {exc.strerror}\n")
            return 2, doc
    return code, doc


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())

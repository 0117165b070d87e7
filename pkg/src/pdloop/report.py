"""Machine documents for every report type and a text renderer driven only by them.

Because text is rendered from the document alone, re-parsing the JSON and
rendering again gives identical output.
"""

from __future__ import annotations

import json

from .algebra import GradedGroup
from .decompose import CrossCheckReport, Decomposition, OneRelatorPresentation
from .localize import LocalizationPlan
from .momentangle import ZkReport
from .pdcomplex import ClassAEvidence, PDComplex, ValidationReport
from .spacexpr import pretty, render

SCHEMA = "pdloop.report/1"


def envelope(command: str, result: dict, exit_code: int = 0, citations=(), error: dict | None = None) -> dict:
    doc = {
        "schema": SCHEMA,
        "command": command,
        "ok": exit_code == 0,
        "exit_code": exit_code,
        "citations": sorted(set(citations)),
        "result": result,
    }
    if error is not None:
        doc["error"] = error
    return doc


def error_doc(command: str, exc: Exception, exit_code: int) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    hyp = getattr(exc, "hypothesis", None)
    if hyp:
        err["hypothesis"] = hyp
    reasons = getattr(exc, "reasons", ())
    if reasons:
        err["reasons"] = list(reasons)
    return envelope(command, {}, exit_code, error=err)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def group_doc(g: GradedGroup) -> dict:
    return {str(d): g.describe(d) for d in g.degrees()}


# per-type documents

def complex_doc(M: PDComplex) -> dict:
    return {"complex": M.to_json(), "homology_text": group_doc(M.homology)}


def validation_doc(M: PDComplex, rep: ValidationReport) -> dict:
    return {
        "name": M.name,
        "valid": rep.ok,
        "failures": [{"kind": f.kind, "degrees": list(f.degrees), "message": f.message}
                     for f in rep.failures],
    }


def evidence_doc(ev: ClassAEvidence) -> dict:
    return {"member": ev.member.value, "primes": sorted(ev.primes), "reasons": list(ev.reasons)}


def plan_doc(p: LocalizationPlan) -> dict:
    return {
        "theorem": p.theorem,
        "inverted": sorted(p.inverted),
        "k": p.k,
        "resulting_skeleton_class": p.resulting_skeleton_class.value,
        "notes": list(p.notes),
    }


def decomposition_doc(d: Decomposition) -> dict:
    return {
        "name": d.name,
        "dim": d.dim,
        "m": d.m,
        "A": render(d.A),
        "B": render(d.B),
        "fibre": render(d.fibre),
        "A_pretty": pretty(d.A),
        "B_pretty": pretty(d.B),
        "fibre_display": d.fibre_display,
        "statement": d.statement,
        "localization": sorted(d.localization),
        "notes": list(d.notes),
    }


def presentation_doc(p: OneRelatorPresentation) -> dict:
    return {
        "field": str(p.field),
        "generators": [{"degree": g.degree, "source": g.source} for g in p.generators],
        "relation_degree": p.relation_degree,
        "quadratic": p.quadratic,
        "notes": list(p.notes),
    }


def cross_check_doc(r: CrossCheckReport) -> dict:
    return {
        "name": r.name,
        "field": str(r.field),
        "cap": r.cap,
        "decomposition": list(r.decomposition_series.coeffs),
        "one_relator": list(r.one_relator_series.coeffs),
        "equal": r.equal,
        "first_disagreement": r.first_disagreement,
        "localization": sorted(r.localization),
    }


def zk_doc(r: ZkReport) -> dict:
    out = {
        "vertices": r.vertices,
        "sphere_dim": r.sphere_dim,
        "zk_dimension": r.zk_dimension,
        "connectivity": r.connectivity,
        "neighbourliness": r.neighbourliness,
        "minimal_missing_faces": [list(f) for f in r.minimal_missing_faces],
        "skeleton": group_doc(r.skeleton),
        "ledger": [{"subset": list(c.subset), "homology": group_doc(c.homology)} for c in r.ledger],
        "branch": r.branch,
        "notes": list(r.notes),
    }
    if r.sphere_report is not None:
        out["sphere_check"] = {"passed": r.sphere_report.passed,
                               "checks": [[n, ok, det] for n, ok, det in r.sphere_report.checks],
                               "note": r.sphere_report.note}
    if r.plan is not None:
        out["plan"] = plan_doc(r.plan)
    if r.decomposition is not None:
        out["decomposition"] = decomposition_doc(r.decomposition)
    return out


# text rendering

def _series(xs) -> str:
    return "[" + ", ".join(str(x) for x in xs) + "]"


def _lines_decomposition(d: dict) -> list[str]:
    out = [d["statement"], f"  A = {d['A_pretty']}", f"  B = {d['B_pretty']}",
           f"  fibre = {d['fibre_display']}"]
    if d["localization"]:
        out.append(f"  localized away from {d['localization']}")
    out += [f"  note: {n}" for n in d["notes"]]
    return out


def _lines_presentation(p: dict) -> list[str]:
    degs = [g["degree"] for g in p["generators"]]
    out = [f"one-relator presentation over {p['field']}: generators in degrees {degs}, "
           f"relation in degree {p['relation_degree']}" + (" (quadratic)" if p["quadratic"] else "")]
    out += [f"  note: {n}" for n in p["notes"]]
    return out


def _lines_cross(c: dict) -> list[str]:
    out = [f"field {c['field']}, cap {c['cap']}"]
    if c.get("decomposition") is not None:
        out.append(f"  decomposition: {_series(c['decomposition'])}")
    if c.get("one_relator") is not None:
        out.append(f"  one-relator:   {_series(c['one_relator'])}")
    if "equal" in c:
        out.append("cross-check: equal" if c["equal"]
                   else f"cross-check: DIFFER first at degree {c['first_disagreement']}")
    return out


def _lines_plan(p: dict) -> list[str]:
    return [f"{p['theorem']}: invert {p['inverted']}, bottom degree {p['k']}, "
            f"skeleton {p['resulting_skeleton_class']}"] + [f"  - {n}" for n in p["notes"]]


def _lines_group(g: dict) -> list[str]:
    return [f"  H_{d} = {v}" for d, v in sorted(g.items(), key=lambda kv: int(kv[0]))] or ["  0"]


def render_text(doc: dict) -> str:
    cmd = doc.get("command", "")
    res = doc.get("result", {})
    lines: list[str] = []
    if "error" in doc:
        e = doc["error"]
        lines.append(f"error ({e['type']}): {e['message']}")
        if "hypothesis" in e and e["hypothesis"] != e["message"]:
            lines.append(f"  missing hypothesis: {e['hypothesis']}")
        lines += [f"  - {r}" for r in e.get("reasons", [])]
    elif cmd == "validate":
        lines.append(f"{res['name']}: {'valid' if res['valid'] else 'INVALID'}")
        lines += [f"  {f['kind']} {f['degrees']}: {f['message']}" for f in res["failures"]]
    elif cmd == "decompose":
        lines += _lines_decomposition(res["decomposition"])
        lines += _lines_presentation(res["presentation"])
        if "series" in res:
            lines.append(f"Poincare series of loop homology over {res['presentation']['field']} "
                         f"through degree {len(res['series']) - 1}: {_series(res['series'])}")
    elif cmd == "hilbert":
        lines += _lines_cross(res)
    elif cmd in ("sum", "gyrate", "catalog get", "catalog add"):
        if "complex" in res:
            c = res["complex"]
            lines.append(f"{c['name']}: dim {c['dim']}, connectivity {c['connectivity']}")
            lines += _lines_group(res["homology_text"])
            lines.append("  flags: " + ", ".join(f"{k}={v}" for k, v in sorted(c["flags"].items())))
            lines += [f"  provenance: {p}" for p in c["provenance"]]
        elif "simplicial" in res:
            s = res["simplicial"]
            lines.append(f"simplicial complex on {s['vertices']} vertices, {len(s['facets'])} facets")
        if "written" in res:
            lines.append(f"written to {res['written']}")
    elif cmd == "catalog list":
        lines += res["names"] or ["(empty catalog)"]
    elif cmd == "zk":
        lines.append(f"Z_K: {res['vertices']} vertices, K of dimension {res['sphere_dim']}, "
                     f"dim Z_K = {res['zk_dimension']}, {res['connectivity']}-connected")
        lines.append(f"neighbourliness {res['neighbourliness']}; minimal missing faces "
                     f"{res['minimal_missing_faces']}")
        lines.append("skeleton homology:")
        lines += _lines_group(res["skeleton"])
        for c in res["ledger"]:
            lines.append(f"  from I = {c['subset']}: " + ", ".join(
                f"H_{d} = {v}" for d, v in sorted(c["homology"].items(), key=lambda kv: int(kv[0]))))
        if "sphere_check" in res:
            sc = res["sphere_check"]
            lines.append(f"sphere check: {'pass' if sc['passed'] else 'FAIL'} ({sc['note']})")
        lines.append(f"branch: {res['branch']}")
        if "plan" in res:
            lines += _lines_plan(res["plan"])
        if "decomposition" in res:
            lines += _lines_decomposition(res["decomposition"])
        lines += [f"  note: {n}" for n in res["notes"]]
    elif cmd == "primes":
        ev = res["evidence"]
        lines.append(f"class A: {ev['member']}" + (f", invert {ev['primes']}" if ev["primes"] else ""))
        lines += [f"  - {r}" for r in ev["reasons"]]
        for key, label in (("retraction", "retraction primes"), ("skeleton", "skeleton plan"),
                           ("full", "full plan")):
            v = res.get(key)
            if v is None:
                continue
            if "error" in v:
                lines.append(f"{label}: unavailable ({v['error']})")
            else:
                lines.append(f"{label}:")
                lines += ["  " + x for x in _lines_plan(v)]
    else:
        lines.append(json.dumps(res, sort_keys=True, ensure_ascii=False))
    if doc.get("citations"):
        lines.append("citations: " + ", ".join(doc["citations"]))
    return "\n".join(lines) + "\n"

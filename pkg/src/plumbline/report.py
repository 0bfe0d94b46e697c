"""End-to-end report over the bundled cases.

Every value here comes from the library modules; this file only gathers
and formats.  JSON output uses a fixed key order and writes rationals as
"p/q" strings so it is byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from . import fixtures
from .blowdown import BlowdownReport, blowdown_report, load_enhanced_form
from .charvec import DEFAULT_BUDGET
from .diagram import load_pd, mirror
from .invariants import QACertificate, jones, knot_determinant, qa_certificate, signature_gl
from .khovanov import HTHIN, hthin_mirror_inference, ingest_table, reduced_rank_bound, table_signature, z2_lspace_verdict
from .plumbing import load_graph

SCHEMA = 1


def rational(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else str(Fraction(x))


def certificate_summary(cert: Optional[QACertificate]) -> dict:
    if cert is None:
        return {"found": False}
    leaves: dict[str, int] = {}

    def walk(c):
        if not c.children:
            leaves[c.kind] = leaves.get(c.kind, 0) + 1
        for ch in c.children:
            walk(ch)

    walk(cert)
    return {
        "found": True,
        "root": cert.kind,
        "dets": list(cert.dets) if cert.dets else [cert.det],
        "depth": cert.depth(),
        "leaves": dict(sorted(leaves.items())),
    }


def blowdown_json(rep: BlowdownReport) -> dict:
    out = {
        "h": rep.h,
        "bad_vertices": rep.bad_vertices,
        "negative_definite": rep.negative_definite,
        "good_vectors": [list(v) for v in sorted(v for c in rep.classes for v in c.members)],
        "lspace": rep.lspace.lspace,
        "classes": [{"rep": list(c.representative), "d": rational(c.d_value)} for c in rep.classes],
        "d_zero": [list(v) for v in rep.d_zero],
        "expected_t": rep.expected_t,
        "extenders": [list(v) for v in rep.extenders],
        "extenders_source": rep.extenders_source,
        "discrepancy": rep.discrepancy,
    }
    if rep.congruence is not None:
        out["congruence"] = str(rep.congruence)
    return out


def case_report(case: fixtures.Case, budget: int = DEFAULT_BUDGET, workers: int = 1, depth: int = 3) -> dict:
    G = load_graph(fixtures.graph_path(case.graph))
    A = load_enhanced_form(fixtures.ball_path(case.ball)) if case.ball else None
    rep = blowdown_report(G, A, budget, workers)

    D = load_pd(fixtures.pd_path(case.knot))
    M = mirror(D)
    J = jones(M)
    det = knot_determinant(M)
    table = ingest_table(fixtures.kh_path(case.knot))
    sigma = table_signature(table, signature_gl(D))
    # every knot in the bundled cases is slice
    inference = hthin_mirror_inference(table, slice_knot=True)
    bound = reduced_rank_bound(J)
    z2 = z2_lspace_verdict(det, bound, inference.verdict == HTHIN)

    out = {"case": case.name, "knot": "!" + case.knot, "graph": case.graph}
    out.update(blowdown_json(rep))
    out["knot_data"] = {
        "det": det,
        "jones": J.to_json(),
        "signature": -sigma,
        "mirror_thin": inference.verdict,
        "rank_bound": bound,
        "z2_lspace": z2,
        "qa": certificate_summary(qa_certificate(M, depth)),
    }
    return out


def cases_report(budget: int = DEFAULT_BUDGET, workers: int = 1, depth: int = 3) -> dict:
    return {"schema": SCHEMA, "cases": [case_report(c, budget, workers, depth) for c in fixtures.CASES]}


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def to_text(report: dict) -> str:
    lines = []
    for c in report["cases"]:
        k = c["knot_data"]
        lines.append(f"{c['case']}: double cover of {c['knot']}, plumbing {c['graph']}")
        lines.append(f"  |H_1| = {c['h']}, bad vertices {', '.join(c['bad_vertices'])}")
        lines.append(f"  good vectors: {len(c['good_vectors'])}, L-space over Q: {str(c['lspace']).lower()}")
        dtab = ", ".join(f"{_vec(x['rep'])}:{x['d']}" for x in c["classes"])
        lines.append(f"  d: {dtab}")
        lines.append(f"  d = 0: {len(c['d_zero'])} {' '.join(_vec(v) for v in c['d_zero'])}")
        ext = " ".join(_vec(v) for v in c["extenders"])
        lines.append(f"  extenders ({c['extenders_source']}): {len(c['extenders'])} {ext}")
        if "congruence" in c:
            lines.append(f"  congruence: {c['congruence']}")
        flag = "  DISCREPANCY" if c["discrepancy"] else ""
        lines.append(f"  expected t = {c['expected_t']}{flag}")
        qa = k["qa"]
        qa_txt = f"certificate, root {tuple(qa['dets'])}" if qa["found"] else "no certificate within depth"
        lines.append(f"  det {k['det']}, signature {k['signature']}, rank bound {k['rank_bound']}")
        lines.append(f"  mirror thin: {k['mirror_thin']}, L-space over Z/2: {k['z2_lspace']}")
        lines.append(f"  quasi-alternating: {qa_txt}")
    return "\n".join(lines) + "\n"

"""``plumbline`` command-line interface.

Exit status: 0 on success, 1 when a computation fails (bad input file,
budget exceeded, unsupported graph), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import fixtures
from .blowdown import blowdown_report, load_enhanced_form
from .charvec import DEFAULT_BUDGET, BudgetExceeded, d_invariants, good_vectors, initial_vectors, lspace_verdict
from .diagram import load_pd, mirror
from .invariants import (
    DEFAULT_JONES_CAP,
    CapExceeded,
    jones,
    knot_determinant,
    qa_certificate,
    signature_gl,
)
from .khovanov import (
    hthin_mirror_inference,
    ingest_table,
    is_hthin,
    mirror_table,
    reduced_rank_bound,
    table_signature,
    z2_lspace_verdict,
)
from .linalg import is_negative_definite
from .plumbing import bad_vertices, h1_order, intersection_form, load_graph
from .report import blowdown_json, cases_report, rational, to_json, to_text

log = logging.getLogger("plumbline")


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps({"schema": 1, **data}, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _graph(args):
    return load_graph(fixtures.resolve_path(args.graph, ".json"))


def _diagram(args):
    if args.pd is None:
        if getattr(args, "unknot", False):
            from .diagram import parse_pd

            return parse_pd("", unknot=True)
        raise FileNotFoundError("--pd is required")
    D = load_pd(fixtures.resolve_path(args.pd, ".pd"), unknot=getattr(args, "unknot", False))
    return mirror(D) if args.mirror else D


# -- graph ------------------------------------------------------------------

def cmd_graph_analyze(args):
    G = _graph(args)
    Q = intersection_form(G)
    v = lspace_verdict(G, args.budget, args.workers)
    data = {
        "vertices": list(G.vertices),
        "h": h1_order(G),
        "bad_vertices": bad_vertices(G),
        "negative_definite": is_negative_definite(Q),
        "initial_vectors": len(initial_vectors(G)),
        "good_vectors": v.good,
        "lspace": v.lspace,
    }
    text = "\n".join(
        [
            f"vertices: {len(G)}  |H_1| = {data['h']}",
            f"bad vertices: {', '.join(data['bad_vertices']) or 'none'}",
            f"negative-definite: {str(data['negative_definite']).lower()}",
            f"good initial vectors: {v.good} of {data['initial_vectors']}",
            str(v),
        ]
    )
    _emit(args, data, text)


def cmd_graph_lspace(args):
    v = lspace_verdict(_graph(args), args.budget, args.workers)
    _emit(args, {"lspace": v.lspace, "verdict": v.verdict, "good": v.good, "h": v.h, "bad": v.bad}, str(v))


def cmd_graph_dinv(args):
    G = _graph(args)
    classes = d_invariants(G, args.budget, args.workers)
    good = good_vectors(G, args.budget, args.workers)
    v = lspace_verdict(G, args.budget, args.workers)
    data = {
        "h": h1_order(G),
        "good_vectors": [list(x) for x in good],
        "classes": [{"rep": list(c.representative), "d": rational(c.d_value)} for c in classes],
        "lspace": v.lspace,
    }
    text = "\n".join(f"{c.representative}  d = {rational(c.d_value)}" for c in classes)
    _emit(args, data, text)


# -- blowdown -----------------------------------------------------------------

def cmd_blowdown(args):
    G = _graph(args)
    A = load_enhanced_form(fixtures.resolve_path(args.ball, ".json")) if args.ball else None
    rep = blowdown_report(G, A, args.budget, args.workers)
    data = blowdown_json(rep)
    lines = [
        f"|H_1| = {rep.h}, expected extending structures t = {rep.expected_t}",
        f"d = 0 classes: {len(rep.d_zero)}",
        *[f"  {v}" for v in rep.d_zero],
        f"extending ({rep.extenders_source}): {len(rep.extenders)}",
        *[f"  {v}" for v in rep.extenders],
    ]
    if rep.congruence is not None:
        lines.append(f"congruence: {rep.congruence}")
    if not rep.hypotheses_ok:
        lines.append("warning: hypotheses (negative-definite, L-space, one bad vertex) not all met")
    if rep.discrepancy:
        lines.append(f"DISCREPANCY: {len(rep.d_zero)} classes with d = 0 but t = {rep.expected_t}")
    _emit(args, data, "\n".join(lines))


# -- knot -----------------------------------------------------------------

def cmd_knot_det(args):
    D = _diagram(args)
    det = knot_determinant(D)
    _emit(args, {"det": det}, f"det = {det}")


def cmd_knot_jones(args):
    J = jones(_diagram(args), args.cap)
    _emit(args, {"jones": J.to_json(), "at_minus_one": J.abs_at_minus_one()}, f"V(q) = {J}")


def cmd_knot_signature(args):
    s = signature_gl(_diagram(args))
    _emit(args, {"signature": s}, f"signature = {s}")


def _cert_text(c, indent=0):
    pad = "  " * indent
    if c.children:
        head = f"{pad}resolve crossing {c.crossing}: det {c.dets[0]} = {c.dets[1]} + {c.dets[2]}"
        return "\n".join([head] + [_cert_text(ch, indent + 1) for ch in c.children])
    return f"{pad}{c.kind} (det {c.det}, {len(c.diagram)} crossings)"


def cmd_knot_qa(args):
    cert = qa_certificate(_diagram(args), args.depth)
    if cert is None:
        _emit(args, {"certificate": None}, f"no certificate found within depth {args.depth} (inconclusive)")
    else:
        _emit(args, {"certificate": cert.to_json()}, "quasi-alternating\n" + _cert_text(cert))


# -- kh -------------------------------------------------------------------

def _table_and_sigma(args):
    T = ingest_table(fixtures.resolve_path(args.kh, ".kh.json"))
    diag_sigma = signature_gl(load_pd(fixtures.resolve_path(args.pd, ".pd"))) if args.pd else None
    return T, table_signature(T, diag_sigma)


def cmd_kh_thin(args):
    T, sigma = _table_and_sigma(args)
    thin = is_hthin(T, sigma)
    _emit(args, {"knot": T.knot, "sigma": sigma, "hthin": thin}, f"{T.knot}: H-thin {str(thin).lower()} (sigma = {sigma})")


def cmd_kh_z2(args):
    T, sigma = _table_and_sigma(args)
    if T.jones is None or T.det is None:
        raise ValueError("table lacks the Jones polynomial or determinant")
    thin = is_hthin(T, sigma)
    bound = reduced_rank_bound(T.jones)
    verdict = z2_lspace_verdict(T.det, bound, thin)
    data = {"knot": T.knot, "det": T.det, "rank_bound": bound, "hthin": thin, "z2_lspace": verdict}
    _emit(args, data, f"{T.knot}: det {T.det}, rank bound {bound}, thin {str(thin).lower()} -> {verdict} over Z/2")


def cmd_kh_mirror(args):
    T, _ = _table_and_sigma(args)
    if args.slice:
        inf = hthin_mirror_inference(T, True)
        M = inf.mirror or mirror_table(T)
        data = {"verdict": inf.verdict, "reason": inf.reason, "table": M.to_json()}
        _emit(args, data, str(inf))
    else:
        M = mirror_table(T)
        rows = [f"({g.i},{g.j}) rank {g.rank}" + (f" torsion {list(g.torsion)}" if g.torsion else "") for g in M.groups]
        _emit(args, {"table": M.to_json()}, "\n".join([M.knot] + rows))


# -- report ---------------------------------------------------------------

def cmd_report_paper(args):
    rep = cases_report(args.budget, args.workers, args.depth)
    sys.stdout.write(to_json(rep) if args.json else to_text(rep))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="path-search step budget per vector")
    common.add_argument("--workers", type=int, default=1, help="processes for the vector enumeration")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="plumbline", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="group", required=True)

    g = sub.add_parser("graph", help="plumbing graph computations").add_subparsers(dest="cmd", required=True)
    for name, fn in (("analyze", cmd_graph_analyze), ("lspace", cmd_graph_lspace), ("dinv", cmd_graph_dinv)):
        sp = g.add_parser(name, parents=[common])
        sp.add_argument("--graph", required=True)
        sp.set_defaults(func=fn)

    b = sub.add_parser("blowdown", parents=[common], help="which spin^c structures extend over a rational ball")
    b.add_argument("--graph", required=True)
    b.add_argument("--ball", help="enhanced intersection form (JSON matrix)")
    b.set_defaults(func=cmd_blowdown)

    k = sub.add_parser("knot", help="diagram invariants").add_subparsers(dest="cmd", required=True)
    for name, fn in (("det", cmd_knot_det), ("jones", cmd_knot_jones), ("signature", cmd_knot_signature), ("qa", cmd_knot_qa)):
        sp = k.add_parser(name, parents=[common])
        sp.add_argument("--pd")
        sp.add_argument("--unknot", action="store_true", help="accept an empty PD as the crossingless unknot")
        sp.add_argument("--mirror", action="store_true", help="use the mirror diagram")
        sp.add_argument("--depth", type=int, default=3, help="resolution depth for qa")
        sp.add_argument("--cap", type=int, default=DEFAULT_JONES_CAP, help="crossing cap for the state sum")
        sp.set_defaults(func=fn)

    h = sub.add_parser("kh", help="tabulated Khovanov homology").add_subparsers(dest="cmd", required=True)
    for name, fn in (("thin", cmd_kh_thin), ("z2", cmd_kh_z2), ("mirror", cmd_kh_mirror)):
        sp = h.add_parser(name, parents=[common])
        sp.add_argument("--kh", required=True)
        sp.add_argument("--pd", help="diagram to take the signature from")
        sp.add_argument("--slice", action="store_true", help="knot is known to be slice")
        sp.set_defaults(func=fn)

    r = sub.add_parser("report", help="reports over the bundled cases").add_subparsers(dest="cmd", required=True)
    sp = r.add_parser("paper", parents=[common])
    sp.add_argument("--depth", type=int, default=3)
    sp.set_defaults(func=cmd_report_paper)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args.func(args)
    except (ValueError, OSError, BudgetExceeded, CapExceeded) as exc:
        print(f"plumbline: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())

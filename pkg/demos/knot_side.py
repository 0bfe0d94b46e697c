"""The knot side of the mirror of 8_20: determinant, Jones, a QA certificate, Khovanov data.

Run with ``python demos/knot_side.py``.
"""
from plumbline import fixtures
from plumbline.diagram import load_pd, mirror
from plumbline.invariants import jones, knot_determinant, qa_certificate, signature_gl
from plumbline.khovanov import hthin_mirror_inference, ingest_table, reduced_rank_bound, z2_lspace_verdict

K = load_pd(fixtures.pd_path("8_20"))
M = mirror(K)
J = jones(M)
print(f"{M.name}: {len(M)} crossings, det {knot_determinant(M)}, signature {signature_gl(M)}")
print(f"V(q) = {J}, |V(-1)| = {J.abs_at_minus_one()}")


def show(cert, depth=0):
    pad = "  " * depth
    if cert.children:
        det, d0, d1 = cert.dets
        print(f"{pad}crossing {cert.crossing}: {det} = {d0} + {d1}")
        for child in cert.children:
            show(child, depth + 1)
    else:
        print(f"{pad}{cert.kind}, det {cert.det}")


cert = qa_certificate(M, depth_budget=3)
show(cert)

T = ingest_table(fixtures.kh_path("8_20"))
inf = hthin_mirror_inference(T, slice_knot=True)
print(inf)
bound = reduced_rank_bound(J)
print("Z/2 L-space:", z2_lspace_verdict(knot_determinant(M), bound, inf.verdict == "H-thin"))

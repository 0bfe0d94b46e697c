"""Walk through the plumbing w1: good vectors, d-invariants, extension over a ball.

Run with ``python demos/lattice_walk.py``.
"""
from plumbline import fixtures
from plumbline.blowdown import derive_congruence, extends_over_ball, load_enhanced_form
from plumbline.charvec import classify_path, d_invariants, good_vectors, initial_vectors, lspace_verdict
from plumbline.plumbing import bad_vertices, h1_order, load_graph

G = load_graph(fixtures.graph_path("w1"))
print(f"weights {dict(zip(G.vertices, G.weights))}, |H_1| = {h1_order(G)}, bad {bad_vertices(G)}")

init = initial_vectors(G)
good = good_vectors(G)
print(f"{len(good)} of {len(init)} initial vectors reach the terminal box")

# the longest path in detail
a, out = max(((a, classify_path(G, a)) for a in good), key=lambda p: len(p[1].trace))
print(f"{a} -> {out.terminal} by pushing {' '.join(out.trace) or 'nothing'}")

print(lspace_verdict(G))

for c in d_invariants(G):
    print(f"  d{c.representative} = {c.d_value}")

A = load_enhanced_form(fixtures.ball_path("a1"))
print("kernel of the enhanced form:", [str(x) for x in A.kernel()[0]])
print("integrality condition:", derive_congruence(A))
for a in good:
    v = extends_over_ball(A, a)
    if v.extends:
        print(f"  {a} extends, handle value {v.completed_values}")

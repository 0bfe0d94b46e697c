"""Knot and link invariants from PD diagrams.

Determinants come from the Goeritz matrix of a checkerboard colouring; the
Jones polynomial from the Kauffman bracket state sum.  The two routes are
independent and are expected to agree on ``|V(-1)|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .diagram import (
    BLACK,
    WHITE,
    A_SMOOTHING,
    B_SMOOTHING,
    Diagram,
    DiagramError,
    RegionColoring,
    _oriented_components,
    checkerboard,
    crossing_signs,
    is_alternating_diagram,
    is_consistently_oriented,
    is_reduced,
    is_split_diagram,
    normalize,
)
from .linalg import det_exact

Exponent = Union[int, Fraction]

DEFAULT_JONES_CAP = 16


class CapExceeded(ValueError):
    pass


def _norm_exp(e) -> Exponent:
    e = Fraction(e)
    return int(e) if e.denominator == 1 else e


class LaurentPolynomial:
    """Integer Laurent polynomial in one variable, zero terms dropped.

    Exponents are integers, or halves for the Jones polynomial of a link
    with an even number of components.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict] = None):
        out: dict[Exponent, int] = {}
        for e, c in (coeffs or {}).items():
            e = _norm_exp(e)
            out[e] = out.get(e, 0) + int(c)
        self.coeffs = {e: c for e, c in sorted(out.items()) if c}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPolynomial":
        return cls({Fraction(k): v for k, v in data.items()})

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.coeffs.items()}

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        return isinstance(other, LaurentPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self.coeffs.items()})
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def substitute_inverse(self) -> "LaurentPolynomial":
        """q -> 1/q."""
        return LaurentPolynomial({-e: c for e, c in self.coeffs.items()})

    def abs_at_minus_one(self) -> int:
        """|p(-1)|, reading q^(1/2) as a square root of -1 when needed."""
        if not self.coeffs:
            return 0
        e0 = min(self.coeffs)
        return abs(sum(c * (-1) ** int(e - e0) for e, c in self.coeffs.items()))

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self.coeffs.values())

    def __repr__(self):
        return f"LaurentPolynomial({self.coeffs!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = "q" if e == 1 else f"q^{e}" if isinstance(e, int) and e > 0 else f"q^({e})"
                body = power if mag == 1 else f"{mag}{power}"
            parts.append(("-" if c < 0 else "+") + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


# -- Goeritz ----------------------------------------------------------------

def goeritz_matrix(D: Diagram, coloring: Optional[RegionColoring] = None, color: str = BLACK) -> list[list[int]]:
    """Reduced Goeritz matrix on the regions of one colour.

    Off-diagonal entry (i, j) is minus the sum of crossing types over the
    crossings where regions i and j meet; rows sum to zero before the first
    region of the colour is dropped.
    """
    coloring = coloring or checkerboard(D)
    regions = coloring.of_color(color)
    pos = {r: k for k, r in enumerate(regions)}
    n = len(regions)
    G = [[0] * n for _ in range(n)]
    for i, j, eta in coloring.adjacency(color):
        if i == j:
            continue
        a, b = pos[i], pos[j]
        G[a][b] -= eta
        G[b][a] -= eta
        G[a][a] += eta
        G[b][b] += eta
    return [row[1:] for row in G[1:]]


def knot_determinant(D: Diagram) -> int:
    """|det| of the reduced Goeritz matrix; 0 for split diagrams."""
    if is_split_diagram(D):
        return 0
    return abs(det_exact(goeritz_matrix(D)))


def _signature_of(M) -> int:
    """Signature of a symmetric integer matrix via Sylvester's law (LDL^T over Q)."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    pos = neg = 0
    k = 0
    while k < n:
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    k += 1
                    continue
                # e_k + e_j has square 2 A[k][j] != 0
                for t in range(n):
                    A[k][t] += A[j][t]
                for t in range(n):
                    A[t][k] += A[t][j]
        p = A[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = A[i][k] / p
            if f:
                for t in range(k, n):
                    A[i][t] -= f * A[k][t]
        for i in range(k + 1, n):
            A[k][i] = Fraction(0)
            A[i][k] = Fraction(0)
        k += 1
    return pos - neg


def signature_gl(D: Diagram, color: str = WHITE) -> int:
    """Signature by the Gordon-Litherland formula.

    The spanning surface is made of the regions not of ``color``; the form is
    the Goeritz matrix on the ``color`` regions.  Crossing types here are the
    negatives of the usual Gordon-Litherland ones, hence the sign flips.
    Either colour gives the same answer; the right-handed trefoil has -2.
    """
    if len(D) == 0:
        return 0
    if not is_consistently_oriented(D):
        D = normalize(D)
    coloring = checkerboard(D)
    surface = BLACK if color == WHITE else WHITE
    G = goeritz_matrix(D, coloring, color)
    mu = 0
    for ci, s in enumerate(crossing_signs(D)):
        # the oriented smoothing is the A-smoothing at positive crossings,
        # which opens a channel through corners 1 and 3
        merged = 1 if s > 0 else 0
        if coloring.colors[coloring.corners[ci][merged]] == surface:
            mu += coloring.crossing_type(ci, color)
    return mu - _signature_of(G)


# -- Jones ------------------------------------------------------------------

def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return out


def kauffman_bracket(D: Diagram, cap: int = DEFAULT_JONES_CAP) -> dict[int, int]:
    """Unnormalised bracket <D> as {A-exponent: coefficient}, with <O> = 1."""
    n = len(D)
    if n > cap:
        raise CapExceeded(f"{n} crossings exceeds the state-sum cap of {cap}")
    if n == 0:
        loops = D.free_loops
        out = {0: 1}
        for _ in range(loops - 1):
            out = _poly_mul(out, {2: -1, -2: -1})
        return out
    labels = sorted({x for c in D.crossings for x in c})
    index = {x: i for i, x in enumerate(labels)}
    cr = [tuple(index[x] for x in c) for c in D.crossings]
    by_loops: dict[tuple[int, int], int] = {}
    for state in range(1 << n):
        parent = list(range(len(labels)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for ci, c in enumerate(cr):
            pairs = B_SMOOTHING if state >> ci & 1 else A_SMOOTHING
            for p, q in pairs:
                a, b = find(c[p]), find(c[q])
                if a != b:
                    parent[a] = b
        loops = sum(1 for i in range(len(labels)) if find(i) == i) + D.free_loops
        nb = bin(state).count("1")
        key = (n - 2 * nb, loops)
        by_loops[key] = by_loops.get(key, 0) + 1
    delta_pow = {0: {0: 1}}
    out: dict[int, int] = {}
    for (a_exp, loops), mult in by_loops.items():
        k = loops - 1
        if k not in delta_pow:
            p = {0: 1}
            for _ in range(k):
                p = _poly_mul(p, {2: -1, -2: -1})
            delta_pow[k] = p
        for e, c in delta_pow[k].items():
            out[a_exp + e] = out.get(a_exp + e, 0) + mult * c
    return {e: c for e, c in out.items() if c}


def jones(D: Diagram, cap: int = DEFAULT_JONES_CAP) -> LaurentPolynomial:
    """Jones polynomial V(q) with V(unknot) = 1, via A = q^(-1/4)."""
    if not is_consistently_oriented(D):
        D = normalize(D)
    bracket = kauffman_bracket(D, cap)
    w = sum(crossing_signs(D)) if len(D) else 0
    # (-A^3)^(-w) <D>
    sign = -1 if w % 2 else 1
    f = {e - 3 * w: sign * c for e, c in bracket.items()}
    return LaurentPolynomial({Fraction(-e, 4): c for e, c in f.items()})


# -- quasi-alternating certificates ---------------------------------------------

UNKNOT_LEAF = "unknot-leaf"
ALTERNATING_LEAF = "alternating-leaf"
RESOLUTION = "resolution-node"


@dataclass(frozen=True)
class QACertificate:
    kind: str
    diagram: Diagram
    det: int
    crossing: Optional[int] = None
    dets: Optional[tuple[int, int, int]] = None
    children: tuple["QACertificate", ...] = ()

    def to_json(self) -> dict:
        out = {"kind": self.kind, "det": self.det, "pd": self.diagram.to_json()}
        if self.kind == RESOLUTION:
            out["crossing"] = self.crossing
            out["dets"] = list(self.dets)
            out["children"] = [c.to_json() for c in self.children]
        return out

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0) if self.children else 0


def _alternating_leaf(D: Diagram) -> bool:
    return (
        len(D) > 0
        and not is_split_diagram(D)
        and is_alternating_diagram(D)
        and is_reduced(D)
        and knot_determinant(D) != 0
    )


def qa_certificate(D: Diagram, depth_budget: int = 3, move_budget: int = 1000) -> Optional[QACertificate]:
    """Search for a quasi-alternating certificate.

    Leaves are diagrams that simplify to the crossingless unknot, or reduced
    non-split alternating diagrams.  Inner nodes resolve one crossing with
    det = det0 + det1 and both child determinants nonzero.  ``None`` means
    no certificate was found within the depth budget; it is not a proof that
    the link is not quasi-alternating.
    """
    from .diagram import resolve, simplify, canonical_key

    memo: dict = {}

    def search(D: Diagram, depth: int) -> Optional[QACertificate]:
        S = simplify(D, move_budget)
        key = (canonical_key(S), depth)
        if key in memo:
            return memo[key]
        memo[key] = None
        if len(S) == 0 and S.free_loops == 1:
            result = QACertificate(UNKNOT_LEAF, S, 1)
        elif _alternating_leaf(S):
            result = QACertificate(ALTERNATING_LEAF, S, knot_determinant(S))
        else:
            result = None
            det = knot_determinant(S)
            if depth > 0 and det:
                splits = []
                for i in range(len(S)):
                    L0, L1 = resolve(S, i, 0), resolve(S, i, 1)
                    d0, d1 = knot_determinant(L0), knot_determinant(L1)
                    if d0 and d1 and d0 + d1 == det:
                        splits.append((-(d0 * d1), i, L0, L1, d0, d1))
                splits.sort(key=lambda s: (s[0], s[1]))
                for _, i, L0, L1, d0, d1 in splits:
                    c0 = search(L0, depth - 1)
                    if c0 is None:
                        continue
                    c1 = search(L1, depth - 1)
                    if c1 is None:
                        continue
                    result = QACertificate(RESOLUTION, S, det, i, (det, d0, d1), (c0, c1))
                    break
        memo[key] = result
        return result

    return search(D, depth_budget)


def validate_certificate(cert: QACertificate, move_budget: int = 1000) -> bool:
    """Re-check every node of a certificate from its stored diagrams."""
    from .diagram import resolve, simplify

    D = cert.diagram
    if cert.kind == UNKNOT_LEAF:
        S = simplify(D, move_budget)
        return len(S) == 0 and S.free_loops == 1
    if cert.kind == ALTERNATING_LEAF:
        return _alternating_leaf(D) and knot_determinant(D) == cert.det
    if cert.kind != RESOLUTION or len(cert.children) != 2:
        return False
    det, d0, d1 = cert.dets
    if not (d0 and d1 and det == d0 + d1 and knot_determinant(D) == det == cert.det):
        return False
    for kind, child in enumerate(cert.children):
        L = resolve(D, cert.crossing, kind)
        if knot_determinant(L) != (d0, d1)[kind] or child.det != (d0, d1)[kind]:
            return False
        if simplify(L, move_budget) != simplify(child.diagram, move_budget):
            return False
        if not validate_certificate(child, move_budget):
            return False
    return True

"""Characteristic vectors on plumbing graphs.

A characteristic vector is stored in dual coordinates: ``a[i] = <K, v_i>``
in the graph's vertex order, with ``a[i] = m(v_i) (mod 2)``.  The path
algorithm starts from vectors in the box ``m + 2 <= a <= -m`` and repeatedly
pushes a vertex sitting at ``a_v = -m(v)`` (adding twice the corresponding
row of the intersection form) until every coordinate lies in
``m <= a <= -m - 2`` (a full path) or some coordinate exceeds ``-m`` (the
path dies).
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .linalg import inverse_rational, is_negative_definite, solve_integral
from .plumbing import WeightedGraph, bad_vertices, h1_order, intersection_form

log = logging.getLogger(__name__)

CharVector = tuple[int, ...]

DEFAULT_BUDGET = 10**6

GOOD = "good"
DEAD = "dead"
BUDGET_EXCEEDED = "budget-exceeded"


class CharVectorError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class UnsupportedGraph(ValueError):
    pass


@dataclass(frozen=True)
class PathOutcome:
    verdict: str
    terminal: Optional[CharVector] = None
    trace: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class SpincClass:
    representative: CharVector
    members: frozenset = field(default_factory=frozenset)
    d_value: Optional[Fraction] = None


def is_characteristic(G: WeightedGraph, a: Sequence[int]) -> bool:
    return len(a) == len(G) and all((x - m) % 2 == 0 for x, m in zip(a, G.weights))


def _check(G, a):
    if not is_characteristic(G, a):
        raise CharVectorError(f"{tuple(a)} is not characteristic for this graph")


def initial_vectors(G: WeightedGraph) -> list[CharVector]:
    ranges = [range(m + 2, -m + 1, 2) for m in G.weights]
    return [tuple(p) for p in itertools.product(*ranges)]


def is_terminal(G: WeightedGraph, a: Sequence[int]) -> bool:
    return all(m <= x <= -m - 2 for x, m in zip(a, G.weights))


def is_overshot(G: WeightedGraph, a: Sequence[int]) -> bool:
    return any(x > -m for x, m in zip(a, G.weights))


def push(G: WeightedGraph, a: Sequence[int], v, Q=None) -> CharVector:
    """Add twice the Poincare dual of vertex ``v``; requires ``a_v == -m(v)``."""
    i = G.index(v)
    if a[i] != -G.weights[i]:
        raise CharVectorError(f"cannot push {G.vertices[i]}: <K,v> = {a[i]} != {-G.weights[i]}")
    Q = Q or intersection_form(G)
    return tuple(x + 2 * q for x, q in zip(a, Q[i]))


def _pushable(G, a):
    return [i for i, (x, m) in enumerate(zip(a, G.weights)) if x == -m]


def classify_path(G: WeightedGraph, K0: Sequence[int], budget: int = DEFAULT_BUDGET) -> PathOutcome:
    """Depth-first search over all push orders starting at ``K0``.

    The verdict is good as soon as some push sequence reaches a terminal
    vector.  Vectors already seen are not expanded again.
    """
    _check(G, K0)
    Q = intersection_form(G)
    start = tuple(K0)
    parent: dict[CharVector, Optional[tuple[CharVector, int]]] = {start: None}
    stack = [start]
    visits = 0
    while stack:
        a = stack.pop()
        visits += 1
        if visits > budget:
            return PathOutcome(BUDGET_EXCEEDED)
        if is_terminal(G, a):
            trace = []
            node = a
            while parent[node] is not None:
                node, i = parent[node]
                trace.append(G.vertices[i])
            return PathOutcome(GOOD, a, tuple(reversed(trace)))
        if is_overshot(G, a):
            continue
        for i in reversed(_pushable(G, a)):
            b = tuple(x + 2 * q for x, q in zip(a, Q[i]))
            if b not in parent:
                parent[b] = (a, i)
                stack.append(b)
    return PathOutcome(DEAD)


def explore_paths(G: WeightedGraph, K0: Sequence[int], budget: int = DEFAULT_BUDGET) -> set[str]:
    """Verdicts of every maximal push sequence from ``K0``.

    Returns the set of end states reached (``good``/``dead``).  Raises
    :class:`BudgetExceeded` if more than ``budget`` vectors are reachable and
    :class:`CharVectorError` if a push sequence can cycle.
    """
    _check(G, K0)
    Q = intersection_form(G)
    state: dict[CharVector, int] = {}  # 1 = on stack, 2 = finished
    ends: set[str] = set()
    stack = [(tuple(K0), False)]
    while stack:
        a, leaving = stack.pop()
        if leaving:
            state[a] = 2
            continue
        if state.get(a) == 2:
            continue
        if len(state) >= budget:
            raise BudgetExceeded(f"more than {budget} vectors reachable from {tuple(K0)}")
        if is_terminal(G, a):
            ends.add(GOOD)
            state[a] = 2
            continue
        children = [] if is_overshot(G, a) else _pushable(G, a)
        if not children:
            ends.add(DEAD)
            state[a] = 2
            continue
        state[a] = 1
        stack.append((a, True))
        for i in children:
            b = tuple(x + 2 * q for x, q in zip(a, Q[i]))
            if state.get(b) == 1:
                raise CharVectorError(f"push sequence from {tuple(K0)} cycles")
            if b not in state:
                stack.append((b, False))
    return ends


def _classify_chunk(args):
    G, vectors, budget = args
    return [(v, classify_path(G, v, budget).verdict) for v in vectors]


def good_vectors(G: WeightedGraph, budget: int = DEFAULT_BUDGET, workers: int = 1) -> list[CharVector]:
    """Initial vectors that start a full path, in lexicographic order."""
    init = initial_vectors(G)
    if workers > 1:
        chunks = [init[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            results = [r for part in pool.map(_classify_chunk, [(G, c, budget) for c in chunks]) for r in part]
    else:
        results = _classify_chunk((G, init, budget))
    over = [v for v, verdict in results if verdict == BUDGET_EXCEEDED]
    if over:
        raise BudgetExceeded(f"path search exceeded the budget of {budget} steps from {over[0]}")
    return sorted(v for v, verdict in results if verdict == GOOD)


def square(G: WeightedGraph, a: Sequence[int], Qinv=None) -> Fraction:
    """K^2 = a^T Q^{-1} a."""
    if len(a) != len(G):
        raise CharVectorError("vector length does not match the graph")
    Qinv = Qinv or inverse_rational(intersection_form(G))
    n = len(a)
    return sum((a[i] * Qinv[i][j] * a[j] for i in range(n) for j in range(n)), Fraction(0))


def same_spinc(G: WeightedGraph, a: Sequence[int], b: Sequence[int], Q=None) -> bool:
    diff = [y - x for x, y in zip(a, b)]
    if any(d % 2 for d in diff):
        raise CharVectorError(f"{tuple(a)} and {tuple(b)} differ by an odd vector")
    Q = Q or intersection_form(G)
    return solve_integral(Q, [d // 2 for d in diff]) is not None


def spinc_classes(G: WeightedGraph, vectors: Iterable[Sequence[int]]) -> list[SpincClass]:
    """Partition vectors by the spin^c structure they induce on the boundary."""
    Q = intersection_form(G)
    groups: list[list[CharVector]] = []
    for v in sorted(tuple(x) for x in vectors):
        _check(G, v)
        for grp in groups:
            if same_spinc(G, grp[0], v, Q):
                grp.append(v)
                break
        else:
            groups.append([v])
    return [SpincClass(grp[0], frozenset(grp)) for grp in groups]


def d_invariants(G: WeightedGraph, budget: int = DEFAULT_BUDGET, workers: int = 1) -> list[SpincClass]:
    """Correction terms of the boundary, one entry per spin^c class found.

    Each value is the maximum of (K^2 + |G|)/4 over the good initial vectors
    of the class.
    """
    Q = intersection_form(G)
    if not is_negative_definite(Q):
        raise UnsupportedGraph("graph is not negative-definite")
    if len(bad_vertices(G)) > 2:
        raise UnsupportedGraph("more than two bad vertices")
    Qinv = inverse_rational(Q)
    classes = spinc_classes(G, good_vectors(G, budget, workers))
    missing = h1_order(G) - len(classes)
    if missing:
        log.warning("%d spin^c structures have no good initial vector", missing)
    n = len(G)
    return [
        SpincClass(c.representative, c.members, max((square(G, K, Qinv) + n) / 4 for K in c.members))
        for c in classes
    ]


def conjugate_class(G: WeightedGraph, classes: Sequence[SpincClass], c: SpincClass) -> SpincClass:
    """The class containing -K for K in ``c``."""
    Q = intersection_form(G)
    neg = tuple(-x for x in c.representative)
    for other in classes:
        if same_spinc(G, neg, other.representative, Q):
            return other
    raise CharVectorError(f"no class contains the conjugate of {c.representative}")


@dataclass(frozen=True)
class LSpaceVerdict:
    lspace: bool
    good: int
    h: int
    bad: int

    @property
    def verdict(self) -> str:
        return "L-space" if self.lspace else "inconclusive"

    def __str__(self):
        rel = "=" if self.good == self.h else "!="
        return f"L-space: {str(self.lspace).lower()} ({self.good} {rel} {self.h})"


def lspace_verdict(G: WeightedGraph, budget: int = DEFAULT_BUDGET, workers: int = 1) -> LSpaceVerdict:
    """L-space iff the good-vector count equals |H_1| and at most one vertex is bad."""
    bad = len(bad_vertices(G))
    h = h1_order(G)
    if bad > 2:
        return LSpaceVerdict(False, 0, h, bad)
    good = len(good_vectors(G, budget, workers))
    return LSpaceVerdict(good == h and bad <= 1, good, h, bad)

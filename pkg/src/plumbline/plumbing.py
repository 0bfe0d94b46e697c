"""Weighted plumbing graphs and their intersection forms."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .linalg import det_exact


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedGraph:
    """A forest with an integer weight (Euler number) on each vertex.

    The order of ``vertices`` is the coordinate order used by every vector
    and matrix derived from the graph.
    """

    vertices: tuple[str, ...]
    weights: tuple[int, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        if len(self.vertices) != len(self.weights):
            raise GraphError("one weight per vertex required")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        for w in self.weights:
            if isinstance(w, bool) or not isinstance(w, int):
                raise GraphError(f"non-integer weight {w!r}")
        known = set(self.vertices)
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"self-loop at {sorted(e)[0]}")
            unknown = e - known
            if unknown:
                raise GraphError(f"unknown vertex {sorted(unknown)[0]!r}")
        # forest check: union-find over the edges
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for e in sorted(tuple(sorted(e)) for e in self.edges):
            a, b = (find(v) for v in e)
            if a == b:
                raise GraphError(f"cycle through edge {e[0]}-{e[1]}")
            parent[a] = b

    @classmethod
    def build(cls, weights: dict[str, int] | Iterable[tuple[str, int]], edges: Iterable[tuple[str, str]]):
        items = list(weights.items()) if isinstance(weights, dict) else list(weights)
        edge_set: set[frozenset[str]] = set()
        for a, b in edges:
            e = frozenset((a, b))
            if e in edge_set:
                raise GraphError(f"duplicate edge {a}-{b}")
            if a == b:
                raise GraphError(f"self-loop at {a}")
            edge_set.add(e)
        return cls(tuple(v for v, _ in items), tuple(w for _, w in items), frozenset(edge_set))

    def __len__(self):
        return len(self.vertices)

    def index(self, v: str | int) -> int:
        return v if isinstance(v, int) else self.vertices.index(v)

    def degree(self, v: str | int) -> int:
        name = self.vertices[self.index(v)]
        return sum(1 for e in self.edges if name in e)

    def neighbors(self, v: str | int) -> list[int]:
        name = self.vertices[self.index(v)]
        return sorted(self.vertices.index(w) for e in self.edges if name in e for w in e if w != name)

    def to_json(self) -> dict:
        order = {v: i for i, v in enumerate(self.vertices)}
        edges = sorted((sorted(e, key=order.get) for e in self.edges), key=lambda e: (order[e[0]], order[e[1]]))
        return {
            "vertices": [{"id": v, "weight": w} for v, w in zip(self.vertices, self.weights)],
            "edges": edges,
        }


def parse_graph(text: str) -> WeightedGraph:
    """Parse the JSON graph format ``{"vertices": [...], "edges": [...]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from None
    try:
        verts = [(str(v["id"]), v["weight"]) for v in data["vertices"]]
        edges = [tuple(e) for e in data.get("edges", [])]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph: {exc}") from None
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {list(e)} does not have two endpoints")
    return WeightedGraph.build(verts, [(str(a), str(b)) for a, b in edges])


def load_graph(path) -> WeightedGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def intersection_form(G: WeightedGraph) -> list[list[int]]:
    n = len(G)
    Q = [[0] * n for _ in range(n)]
    for i, w in enumerate(G.weights):
        Q[i][i] = w
    for e in G.edges:
        a, b = (G.vertices.index(v) for v in e)
        Q[a][b] = Q[b][a] = 1
    return Q


def bad_vertices(G: WeightedGraph) -> list[str]:
    return [v for v, m in zip(G.vertices, G.weights) if m > -G.degree(v)]


def h1_order(G: WeightedGraph) -> int:
    """Order of H_1 of the boundary, i.e. |det Q|."""
    d = det_exact(intersection_form(G))
    if d == 0:
        raise GraphError("intersection form is degenerate")
    return abs(d)

"""Planar-diagram (PD) link diagrams.

Each crossing is a 4-tuple of arc labels listed counterclockwise starting
from the incoming under-strand, so positions 0 -> 2 are the under-strand and
positions 1, 3 the over-strand.  The crossing is positive when the
over-strand runs from position 3 to position 1.

Regions are recovered from the rotation system: a corner ``(c, p)`` is the
angle between positions ``p`` and ``p + 1`` of crossing ``c``, and walking
along the arc at position ``p + 1`` lands in the corner ``(c', q)`` at the
arc's other end.  Orbits of that walk are the faces.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

Crossing = tuple[int, int, int, int]
Corner = tuple[int, int]

A_SMOOTHING = ((0, 1), (2, 3))
B_SMOOTHING = ((0, 3), (1, 2))
THROUGH = ((0, 2), (1, 3))


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    name: Optional[str] = field(default=None, compare=False)
    marked: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        counts = Counter(x for c in self.crossings for x in c)
        for c in self.crossings:
            if len(c) != 4:
                raise DiagramError(f"crossing {c} does not have four arcs")
        bad = sorted(k for k, v in counts.items() if v != 2)
        if bad:
            raise DiagramError(f"arc {bad[0]} occurs {counts[bad[0]]} times, expected 2")
        if self.free_loops < 0:
            raise DiagramError("negative free-loop count")

    def __len__(self):
        return len(self.crossings)

    @property
    def components(self) -> int:
        return len(_traverse(self.crossings)) + self.free_loops

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.crossings]

    def to_pd(self) -> str:
        return "\n".join("X({},{},{},{})".format(*c) for c in self.crossings)


UNKNOT = Diagram((), 1, name="unknot")


# -- parsing ---------------------------------------------------------------

_X = re.compile(r"X\s*[\(\[]\s*([^\)\]]*)[\)\]]")


def parse_pd(text: str, unknot: bool = False, name: Optional[str] = None) -> Diagram:
    """Parse ``X(a,b,c,d)`` lines or a JSON list of 4-tuples.

    Lines starting with ``#`` are metadata; ``# name: ...`` and
    ``# marked: i, j`` (0-based crossing indices) are recognised.
    """
    meta = {}
    body = []
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("#"):
            key, _, value = s[1:].partition(":")
            meta[key.strip()] = value.strip()
        elif s:
            body.append(s)
    src = "\n".join(body)
    name = name or meta.get("name")
    marked = tuple(int(x) for x in meta.get("marked", "").replace(",", " ").split())
    if not src:
        if unknot:
            return Diagram((), 1, name=name or "unknot")
        raise DiagramError("no crossings given (pass unknot=True for the crossingless unknot)")
    if src.lstrip().startswith("["):
        try:
            data = json.loads(src)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"invalid JSON: {exc}") from None
        tuples = data
    else:
        tuples = []
        rest = _X.sub("", src).replace(",", " ").replace(";", " ").strip()
        if rest:
            raise DiagramError(f"unparseable text near {rest[:20]!r}")
        for m in _X.finditer(src):
            tuples.append([t.strip() for t in m.group(1).split(",")])
    crossings = []
    for t in tuples:
        if not isinstance(t, (list, tuple)) or len(t) != 4:
            raise DiagramError(f"malformed crossing {t!r}")
        try:
            crossings.append(tuple(int(x) for x in t))
        except (TypeError, ValueError):
            raise DiagramError(f"malformed crossing {t!r}") from None
    return Diagram(tuple(crossings), 0, name=name, marked=marked)


def load_pd(path, unknot: bool = False) -> Diagram:
    with open(path) as fh:
        return parse_pd(fh.read(), unknot=unknot)


# -- combinatorics -----------------------------------------------------------

def _occurrences(crossings) -> dict[int, list[Corner]]:
    occ: dict[int, list[Corner]] = {}
    for ci, c in enumerate(crossings):
        for p, x in enumerate(c):
            occ.setdefault(x, []).append((ci, p))
    return occ


def _other_end(occ, crossings, ci, p) -> Corner:
    a, b = occ[crossings[ci][p]]
    return b if a == (ci, p) else a


def _traverse(crossings) -> list[list[tuple[int, int]]]:
    """Walk every component once.

    Returns, per component, the list of visits ``(crossing, entry position)``
    in travel order, starting from the component's smallest arc label.
    """
    occ = _occurrences(crossings)
    seen: set[int] = set()
    comps = []
    for start in sorted(occ):
        if start in seen:
            continue
        visits = []
        ci, p = occ[start][1]  # travel from occurrence 0 to occurrence 1
        label = start
        while True:
            seen.add(label)
            visits.append((ci, p))
            out = (p + 2) % 4
            label = crossings[ci][out]
            if label == start and (ci, out) == occ[start][0]:
                break
            ci, p = _other_end(occ, crossings, ci, out)
        comps.append(visits)
    return comps


def _reverse(visits):
    return [(ci, (p + 2) % 4) for ci, p in reversed(visits)]


def _oriented_components(crossings):
    """Traversals with each component oriented to agree with its under-strands."""
    comps = []
    for visits in _traverse(crossings):
        agree = sum(1 for _, p in visits if p == 0)
        disagree = sum(1 for _, p in visits if p == 2)
        comps.append(_reverse(visits) if disagree > agree else visits)
    return comps


def is_consistently_oriented(D: Diagram) -> bool:
    return all(p != 2 for comp in _oriented_components(D.crossings) for _, p in comp)


def normalize(D: Diagram) -> Diagram:
    """Re-orient and relabel arcs 1..2n along components.

    Crossings whose under-strand is entered at position 2 are rotated by two
    so position 0 is again the incoming under-strand.
    """
    cr = D.crossings
    comps = _oriented_components(cr)
    rotate = set()
    relabel: dict[Corner, int] = {}
    label = 0
    for visits in comps:
        for ci, p in visits:
            label += 1
            relabel[(ci, p)] = label  # arc entering ci at p
            if p == 2:
                rotate.add(ci)
    occ = _occurrences(cr)
    new = []
    for ci, c in enumerate(cr):
        # an arc is named where it enters; at an exit look up the other end
        t = [relabel.get((ci, p)) or relabel[_other_end(occ, cr, ci, p)] for p in range(4)]
        if ci in rotate:
            t = t[2:] + t[:2]
        new.append(tuple(t))
    return Diagram(tuple(new), D.free_loops, name=D.name, marked=D.marked)


def canonical_key(D: Diagram) -> tuple:
    N = normalize(D)
    return (tuple(sorted(N.crossings)), N.free_loops)


def crossing_signs(D: Diagram) -> list[int]:
    """+1/-1 per crossing; the diagram must be consistently oriented."""
    if not is_consistently_oriented(D):
        raise DiagramError("diagram is not consistently oriented; normalize it first")
    signs = [0] * len(D)
    for comp in _oriented_components(D.crossings):
        for ci, p in comp:
            if p == 3:
                signs[ci] = 1
            elif p == 1:
                signs[ci] = -1
    return signs


def writhe(D: Diagram) -> int:
    return sum(crossing_signs(D))


def mirror(D: Diagram) -> Diagram:
    """Switch every crossing, keeping arc labels and orientation."""
    if not is_consistently_oriented(D):
        D = normalize(D)
    entering = {(ci, p) for comp in _oriented_components(D.crossings) for ci, p in comp}
    new = []
    for ci, (a, b, c, d) in enumerate(D.crossings):
        new.append((b, c, d, a) if (ci, 1) in entering else (d, a, b, c))
    return Diagram(tuple(new), D.free_loops, name=_mirror_name(D.name), marked=D.marked)


def _mirror_name(name):
    if not name:
        return name
    return name[1:] if name.startswith("!") else "!" + name


def _excise(D: Diagram, removals: dict[int, Sequence[tuple[int, int]]]) -> Diagram:
    """Delete crossings, joining the arc ends at each one in the given pairs."""
    cr = D.crossings
    parent: dict[int, int] = {x: x for c in cr for x in c}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ci, pairs in removals.items():
        for p, q in pairs:
            a, b = find(cr[ci][p]), find(cr[ci][q])
            if a != b:
                parent[max(a, b)] = min(a, b)
    kept = [tuple(find(x) for x in c) for ci, c in enumerate(cr) if ci not in removals]
    used = Counter(x for c in kept for x in c)
    touched = {find(x) for ci in removals for x in cr[ci]}
    loops = sum(1 for r in touched if used[r] == 0)
    return normalize(Diagram(tuple(kept), D.free_loops + loops, name=None))


def resolve(D: Diagram, index: int, kind: int) -> Diagram:
    """Smooth one crossing.

    Kind 0 joins positions (0, 3) and (1, 2), kind 1 joins (0, 1) and (2, 3).
    The choice depends only on the crossing picture, not on orientation, so it
    is well defined for links.  Indices refer to ``D`` as given.
    """
    if not 0 <= index < len(D):
        raise DiagramError(f"crossing index {index} out of range for {len(D)} crossings")
    if kind not in (0, 1):
        raise DiagramError("resolution kind must be 0 or 1")
    return _excise(D, {index: B_SMOOTHING if kind == 0 else A_SMOOTHING})


def faces(D: Diagram) -> list[frozenset[Corner]]:
    """Faces of the diagram as sets of corners, in order of first corner."""
    cr = D.crossings
    occ = _occurrences(cr)
    seen: set[Corner] = set()
    out = []
    for ci in range(len(cr)):
        for p in range(4):
            if (ci, p) in seen:
                continue
            face = []
            cur = (ci, p)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                c, q = cur
                cur = _other_end(occ, cr, c, (q + 1) % 4)
            out.append(frozenset(face))
    return out


def _face_index(fs) -> dict[Corner, int]:
    return {corner: i for i, f in enumerate(fs) for corner in f}


def is_alternating_diagram(D: Diagram) -> bool:
    for comp in _traverse(D.crossings):
        levels = [p % 2 for _, p in comp]  # 1 = passing over
        if any(levels[i] == levels[i - 1] for i in range(len(levels))):
            return False
    return True


def is_split_diagram(D: Diagram) -> bool:
    comps = _traverse(D.crossings)
    if D.free_loops and (comps or D.free_loops > 1):
        return True
    member = {}
    for k, visits in enumerate(comps):
        for ci, _ in visits:
            member.setdefault(ci, set()).add(k)
    parent = list(range(len(comps)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for ks in member.values():
        ks = sorted(ks)
        for k in ks[1:]:
            parent[find(k)] = find(ks[0])
    return len({find(k) for k in range(len(comps))}) > 1


def nugatory_crossings(D: Diagram) -> list[int]:
    """Crossings where two opposite corners lie in the same face."""
    idx = _face_index(faces(D))
    return [ci for ci in range(len(D)) if idx[(ci, 0)] == idx[(ci, 2)] or idx[(ci, 1)] == idx[(ci, 3)]]


def is_reduced(D: Diagram) -> bool:
    return not nugatory_crossings(D)


def _find_r1(D: Diagram) -> Optional[int]:
    for ci, c in enumerate(D.crossings):
        if any(c[p] == c[(p + 1) % 4] for p in range(4)):
            return ci
    return None


def _find_r2(D: Diagram) -> Optional[tuple[int, int]]:
    cr = D.crossings
    occ = _occurrences(cr)
    for f in faces(D):
        if len(f) != 2:
            continue
        (c1, p1), (c2, p2) = sorted(f)
        if c1 == c2:
            continue
        # the bigon edge leaving c1 at p1+1 arrives at c2; R2 needs the same
        # over/under status at both of its ends
        ce, pe = _other_end(occ, cr, c1, (p1 + 1) % 4)
        if (p1 + 1) % 2 == pe % 2:
            return c1, c2
    return None


def _find_r3(D: Diagram) -> list[Diagram]:
    """Every diagram one Reidemeister III move away from ``D``.

    A triangular face admits the move when one of its sides passes over (or
    equivalently under) at both ends.  Each crossing of the triangle slides
    to the far side of the opposite strand: along every strand the two
    triangle crossings swap order, so at each corner the external arc is
    replaced by the strand's other external arc and the internal side moves
    to where the external arc was.
    """
    cr = D.crossings
    occ = _occurrences(cr)
    out = []
    for f in faces(D):
        if len(f) != 3 or len({c for c, _ in f}) != 3:
            continue
        sides = []  # (crossing, position) of each triangle side at each corner
        for c, p in f:
            sides.extend([(c, p), (c, (p + 1) % 4)])
        over_both = False
        for c, q in sides:
            ce, qe = _other_end(occ, cr, c, q)
            if q % 2 == 1 and qe % 2 == 1:
                over_both = True
        if not over_both:
            continue
        new = [list(x) for x in cr]
        for c, q in sides:
            ce, qe = _other_end(occ, cr, c, q)
            new[c][(q + 2) % 4] = cr[c][q]
            new[c][q] = cr[ce][(qe + 2) % 4]
        out.append(Diagram(tuple(tuple(x) for x in new), D.free_loops))
    return out


def _monotone_step(D: Diagram) -> Optional[Diagram]:
    i = _find_r1(D)
    if i is not None:
        return _excise(D, {i: THROUGH})
    pair = _find_r2(D)
    if pair is not None:
        return _excise(D, {pair[0]: THROUGH, pair[1]: THROUGH})
    return None


def simplify(D: Diagram, move_budget: int = 1000) -> Diagram:
    """Remove crossings with Reidemeister moves.

    R1 and R2 moves are applied greedily.  When none is available, a
    breadth-first search over R3 moves (at most ``move_budget`` diagrams in
    total) looks for a diagram where one is.  The crossing count never goes
    up; a diagram that gets stuck is returned as is.
    """
    D = normalize(D)
    spent = 0
    while spent < move_budget and len(D):
        step = _monotone_step(D)
        spent += 1
        if step is not None:
            D = step
            continue
        seen = {canonical_key(D)}
        frontier = [D]
        found = None
        while frontier and found is None and spent < move_budget:
            nxt = []
            for E in frontier:
                for F in _find_r3(E):
                    key = canonical_key(F)
                    if key in seen:
                        continue
                    seen.add(key)
                    spent += 1
                    found = _monotone_step(F)
                    if found is not None or spent >= move_budget:
                        break
                    nxt.append(F)
                if found is not None or spent >= move_budget:
                    break
            frontier = nxt
        if found is None:
            break
        D = found
    return D


def is_unknot_diagram(D: Diagram) -> bool:
    return len(D) == 0 and D.free_loops == 1


# -- checkerboard colouring --------------------------------------------------

BLACK = "black"
WHITE = "white"


@dataclass(frozen=True)
class RegionColoring:
    """Two-colouring of the faces; the unbounded face is white.

    ``corners[c]`` lists the region index at corners 0..3 of crossing ``c``.
    A crossing's type is +1 when its black corners are the ones swept by
    the over-strand turning counterclockwise (corners 1 and 3), else -1.
    """

    regions: tuple[frozenset, ...]
    colors: tuple[str, ...]
    outer: int
    corners: tuple[tuple[int, int, int, int], ...]

    def of_color(self, color: str) -> list[int]:
        return [i for i, c in enumerate(self.colors) if c == color]

    def crossing_type(self, ci: int, color: str = BLACK) -> int:
        r = self.corners[ci]
        swept = self.colors[r[1]]
        return 1 if swept == color else -1

    def adjacency(self, color: str = BLACK) -> list[tuple[int, int, int]]:
        """(region, region, type) for each crossing, regions of ``color``."""
        out = []
        for ci, r in enumerate(self.corners):
            pair = (r[1], r[3]) if self.colors[r[1]] == color else (r[0], r[2])
            out.append((pair[0], pair[1], self.crossing_type(ci, color)))
        return out


def checkerboard(D: Diagram) -> RegionColoring:
    if is_split_diagram(D):
        raise DiagramError("checkerboard colouring needs a connected diagram")
    if len(D) == 0:
        return RegionColoring((frozenset(), frozenset()), (WHITE, BLACK), 0, ())
    fs = faces(D)
    idx = _face_index(fs)
    # the unbounded face is not recorded in a PD code; take the largest face
    outer = min(range(len(fs)), key=lambda i: (-len(fs[i]), sorted(fs[i])))
    # faces on the two sides of the arc at position p share that arc
    colors: list[Optional[str]] = [None] * len(fs)
    colors[outer] = WHITE
    stack = [outer]
    while stack:
        f = stack.pop()
        for ci, p in fs[f]:
            for nb in (idx[(ci, (p + 1) % 4)], idx[(ci, (p - 1) % 4)]):
                want = BLACK if colors[f] == WHITE else WHITE
                if colors[nb] is None:
                    colors[nb] = want
                    stack.append(nb)
                elif colors[nb] != want:
                    raise DiagramError("faces do not admit a checkerboard colouring (non-planar PD?)")
    corners = tuple(tuple(idx[(ci, p)] for p in range(4)) for ci in range(len(D)))
    return RegionColoring(tuple(fs), tuple(colors), outer, corners)

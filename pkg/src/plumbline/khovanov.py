"""Tabulated Khovanov homology: thinness, mirroring and the Z/2 L-space test.

Tables are ingested, never computed.  Gradings follow the usual (i, j)
convention where j is twice the exponent of the Jones variable, so the
reduced Euler characteristic sum((-1)^i rank * q^(j/2)) is the Jones
polynomial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional

from .invariants import LaurentPolynomial

CONFIRMED = "confirmed"
INCONCLUSIVE = "inconclusive"
HTHIN = "H-thin"


class KhDataError(ValueError):
    pass


@dataclass(frozen=True)
class KhGroup:
    i: int
    j: int
    rank: int = 0
    torsion: tuple[int, ...] = ()

    @property
    def diagonal(self) -> int:
        return self.j - 2 * self.i

    @property
    def trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "rank": self.rank, "torsion": list(self.torsion)}


def _validated(groups: Iterable[KhGroup]) -> tuple[KhGroup, ...]:
    seen = set()
    out = []
    for g in groups:
        if (g.i, g.j) in seen:
            raise KhDataError(f"duplicate group at (i, j) = ({g.i}, {g.j})")
        seen.add((g.i, g.j))
        if g.rank < 0:
            raise KhDataError(f"negative rank at ({g.i}, {g.j})")
        if any(t < 2 for t in g.torsion):
            raise KhDataError(f"torsion orders must be at least 2, got {list(g.torsion)}")
        if not g.trivial:
            out.append(replace(g, torsion=tuple(sorted(g.torsion))))
    return tuple(sorted(out, key=lambda g: (g.i, g.j)))


@dataclass(frozen=True)
class KhTable:
    knot: str
    groups: tuple[KhGroup, ...] = ()
    reduced_groups: Optional[tuple[KhGroup, ...]] = None
    sigma: Optional[int] = None
    det: Optional[int] = None
    jones: Optional[LaurentPolynomial] = field(default=None, compare=False)
    source: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "groups", _validated(self.groups))
        if self.reduced_groups is not None:
            object.__setattr__(self, "reduced_groups", _validated(self.reduced_groups))

    def to_json(self) -> dict:
        out = {"knot": self.knot, "sigma": self.sigma, "det": self.det}
        if self.jones is not None:
            out["jones"] = self.jones.to_json()
        out["groups"] = [g.to_json() for g in self.groups]
        if self.reduced_groups is not None:
            out["reduced_groups"] = [g.to_json() for g in self.reduced_groups]
        if self.source:
            out["source"] = self.source
        return out


def _groups_from_json(items) -> list[KhGroup]:
    out = []
    for g in items:
        try:
            out.append(KhGroup(int(g["i"]), int(g["j"]), int(g.get("rank", 0)), tuple(int(t) for t in g.get("torsion", ()))))
        except (KeyError, TypeError, ValueError) as exc:
            raise KhDataError(f"malformed group {g!r}: {exc}") from None
    return out


def parse_table(text: str) -> KhTable:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise KhDataError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise KhDataError("table must be a JSON object")
    reduced = data.get("reduced_groups")
    jones = data.get("jones")
    return KhTable(
        knot=str(data.get("knot", "")),
        groups=_groups_from_json(data.get("groups", [])),
        reduced_groups=None if reduced is None else _groups_from_json(reduced),
        sigma=data.get("sigma"),
        det=data.get("det"),
        jones=None if jones is None else LaurentPolynomial.from_json(jones),
        source=data.get("source"),
    )


def ingest_table(path) -> KhTable:
    with open(path) as fh:
        return parse_table(fh.read())


def is_hthin(T: KhTable, sigma: int) -> bool:
    """Every nontrivial group lies on j - 2i = sigma - 1 or sigma + 1."""
    return all(g.trivial or g.diagonal in (sigma - 1, sigma + 1) for g in T.groups)


def torsion_diagonals(T: KhTable) -> set[int]:
    return {g.diagonal for g in T.groups if g.torsion}


def _mirror_groups(groups) -> list[KhGroup]:
    merged: dict[tuple[int, int], list] = {}
    for g in groups:
        if g.rank:
            merged.setdefault((-g.i, -g.j), [0, []])[0] += g.rank
        if g.torsion:
            merged.setdefault((1 - g.i, -g.j), [0, []])[1].extend(g.torsion)
    return [KhGroup(i, j, r, tuple(sorted(t))) for (i, j), (r, t) in merged.items()]


def mirror_table(T: KhTable) -> KhTable:
    """Table of the mirror: free part (i, j) -> (-i, -j), torsion (i, j) -> (1 - i, -j)."""
    name = T.knot[1:] if T.knot.startswith("!") else "!" + T.knot
    return replace(
        T,
        knot=name,
        groups=tuple(_mirror_groups(T.groups)),
        reduced_groups=None if T.reduced_groups is None else tuple(_mirror_groups(T.reduced_groups)),
        sigma=None if T.sigma is None else -T.sigma,
        jones=None if T.jones is None else T.jones.substitute_inverse(),
    )


@dataclass(frozen=True)
class MirrorInference:
    verdict: str
    reason: str
    mirror: Optional[KhTable] = None

    def __str__(self):
        return f"mirror {self.verdict}: {self.reason}"


def hthin_mirror_inference(T: KhTable, slice_knot: bool) -> MirrorInference:
    """Thinness of the mirror of a thin slice knot with torsion on j - 2i = -1."""
    if not slice_knot:
        return MirrorInference(INCONCLUSIVE, "knot not known to be slice")
    if not is_hthin(T, 0):
        return MirrorInference(INCONCLUSIVE, "table is not H-thin with sigma = 0")
    tors = torsion_diagonals(T)
    if tors - {-1}:
        return MirrorInference(INCONCLUSIVE, f"torsion on diagonals {sorted(tors)}, not only -1")
    M = mirror_table(T)
    if not is_hthin(M, 0) or torsion_diagonals(M) - {-1}:
        raise KhDataError("mirror rule produced a non-thin table from thin input")
    return MirrorInference(HTHIN, "free part on j-2i = +-1, torsion on j-2i = -1", M)


def euler_characteristic(groups: Iterable[KhGroup]) -> LaurentPolynomial:
    """sum((-1)^i * rank * q^(j/2)); torsion does not contribute."""
    out: dict = {}
    for g in groups:
        e = Fraction(g.j, 2)
        out[e] = out.get(e, 0) + (-1) ** (g.i % 2) * g.rank
    return LaurentPolynomial(out)


def reduced_rank_bound(J: LaurentPolynomial) -> int:
    """Sum of |coefficients|; the reduced Khovanov rank of a thin knot."""
    return J.l1_norm()


def z2_lspace_verdict(det: int, rank_bound: int, hthin: bool) -> str:
    """det <= rank HF-hat(double cover; Z/2) <= rank reduced Kh; equality confirms."""
    if det < 1:
        raise KhDataError(f"determinant must be positive, got {det}")
    if hthin and rank_bound < det:
        raise KhDataError(f"rank bound {rank_bound} below determinant {det} for a thin knot")
    return CONFIRMED if hthin and rank_bound == det else INCONCLUSIVE


def table_signature(T: KhTable, diagram_sigma: Optional[int] = None) -> int:
    """Signature for the thinness test: the diagram's if given, checked against the table."""
    if diagram_sigma is not None:
        if T.sigma is not None and T.sigma != diagram_sigma:
            raise KhDataError(f"table signature {T.sigma} disagrees with diagram signature {diagram_sigma}")
        return diagram_sigma
    if T.sigma is None:
        raise KhDataError(f"no signature known for {T.knot or 'table'}")
    return T.sigma

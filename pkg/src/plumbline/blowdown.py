"""Which spin^c structures extend over a rational homology ball.

Two independent filters are provided: the correction-term test (an extending
structure must have d = 0) and the enhanced-intersection-form test (the
characteristic vector, completed on the handle coordinates, must be
orthogonal to the kernel and stay characteristic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .charvec import (
    DEFAULT_BUDGET,
    LSpaceVerdict,
    SpincClass,
    d_invariants,
    lspace_verdict,
)
from .linalg import (
    MatrixError,
    as_matrix,
    inverse_rational,
    is_negative_definite,
    is_symmetric,
    kernel_rational,
    load_matrix,
)
from .plumbing import WeightedGraph, bad_vertices, h1_order, intersection_form

EXTENDS = "extends"
OBSTRUCTED = "obstructed"


class BlowdownError(ValueError):
    pass


@dataclass(frozen=True)
class EnhancedForm:
    """Intersection matrix after adjoining the ball-producing 2-handles.

    The first ``n_original`` coordinates are the plumbing vertices; the rest
    are handle coordinates.
    """

    matrix: tuple[tuple[int, ...], ...]
    n_original: int

    def __post_init__(self):
        if not is_symmetric(self.matrix):
            raise MatrixError("enhanced form must be symmetric")
        if not 0 < self.n_original < len(self.matrix):
            raise BlowdownError("need at least one original and one handle coordinate")
        if not kernel_rational(self.matrix):
            raise BlowdownError("enhanced form is nondegenerate; a ball has no second homology")

    @classmethod
    def from_matrix(cls, M, n_original: Optional[int] = None) -> "EnhancedForm":
        rows = as_matrix(M)
        if n_original is None:
            n_original = len(rows) - 1
        return cls(tuple(tuple(r) for r in rows), n_original)

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def handle_indices(self) -> range:
        return range(self.n_original, self.size)

    def original_block(self) -> list[list[int]]:
        n = self.n_original
        return [list(r[:n]) for r in self.matrix[:n]]

    def kernel(self) -> list[list[Fraction]]:
        return kernel_rational(self.matrix)


def load_enhanced_form(path, n_original: Optional[int] = None) -> EnhancedForm:
    return EnhancedForm.from_matrix(load_matrix(path), n_original)


@dataclass(frozen=True)
class ExtensionVerdict:
    status: str
    completed_values: Optional[tuple] = None
    obstruction: Optional[str] = None  # None, "non-integral" or "parity"

    @property
    def extends(self) -> bool:
        return self.status == EXTENDS


def _handle_values(A: EnhancedForm, a: Sequence[int]) -> list[Fraction]:
    n = A.n_original
    if len(a) != n:
        raise BlowdownError(f"vector has length {len(a)}, expected {n}")
    kernel = A.kernel()
    k = A.size - n
    if len(kernel) != k:
        raise BlowdownError(f"kernel has dimension {len(kernel)} but there are {k} handle coordinates")
    H = [[Fraction(v[n + j]) for j in range(k)] for v in kernel]
    rhs = [-sum((Fraction(v[i]) * a[i] for i in range(n)), Fraction(0)) for v in kernel]
    try:
        Hinv = _inverse_fraction(H)
    except MatrixError:
        raise BlowdownError("handle values are underdetermined by the kernel") from None
    return [sum((Hinv[i][j] * rhs[j] for j in range(k)), Fraction(0)) for i in range(k)]


def _inverse_fraction(H):
    # clear denominators so the integer routine applies, then rescale
    L = math.lcm(*(x.denominator for row in H for x in row))
    inv = inverse_rational([[int(x * L) for x in row] for row in H])
    return [[x * L for x in row] for row in inv]


def extends_over_ball(A: EnhancedForm, a: Sequence[int]) -> ExtensionVerdict:
    """Complete ``a`` on the handle coordinates so it is orthogonal to ker A."""
    x = _handle_values(A, a)
    if any(v.denominator != 1 for v in x):
        return ExtensionVerdict(OBSTRUCTED, tuple(x), "non-integral")
    xs = tuple(int(v) for v in x)
    for j, v in zip(A.handle_indices, xs):
        if (v - A.matrix[j][j]) % 2:
            return ExtensionVerdict(OBSTRUCTED, xs, "parity")
    return ExtensionVerdict(EXTENDS, xs)


@dataclass(frozen=True)
class Congruence:
    """``sum(c_i * a_i) = 0 (mod modulus)`` on the original coordinates."""

    coefficients: tuple[int, ...]
    modulus: int

    def holds(self, a: Sequence[int]) -> bool:
        return sum(c * x for c, x in zip(self.coefficients, a)) % self.modulus == 0

    def __str__(self):
        terms = [f"{c}*a{i + 1}" if c != 1 else f"a{i + 1}" for i, c in enumerate(self.coefficients) if c]
        return f"{' + '.join(terms) or '0'} = 0 (mod {self.modulus})"


def derive_congruence(A: EnhancedForm) -> Congruence:
    """Integrality condition on the handle value, for a single handle."""
    kernel = A.kernel()
    if len(kernel) != 1:
        raise BlowdownError(f"congruence needs a 1-dimensional kernel, got {len(kernel)}")
    (v,) = kernel
    n = A.n_original
    if A.size - n != 1:
        raise BlowdownError("congruence needs exactly one handle coordinate")
    coeffs = [-v[i] / v[n] for i in range(n)]  # handle value = sum(coeffs * a)
    modulus = math.lcm(*(c.denominator for c in coeffs))
    return Congruence(tuple(int(c * modulus) % modulus for c in coeffs), modulus)


def extension_candidates_by_d(G: WeightedGraph, budget: int = DEFAULT_BUDGET, workers: int = 1) -> list[SpincClass]:
    return [c for c in d_invariants(G, budget, workers) if c.d_value == 0]


def expected_extension_count(h: int, s: int = 1) -> int:
    """t with h = s * t^2."""
    if h <= 0 or s <= 0 or h % s:
        raise BlowdownError(f"no rational ball count consistent with h={h}, s={s}")
    t = math.isqrt(h // s)
    if t * t != h // s:
        raise BlowdownError(f"no rational ball count consistent with h={h}, s={s}")
    return t


@dataclass
class BlowdownReport:
    h: int
    lspace: LSpaceVerdict
    bad_vertices: list[str]
    negative_definite: bool
    classes: list[SpincClass]
    d_zero: list[tuple]
    expected_t: Optional[int]
    extenders: list[tuple]
    extenders_source: str
    congruence: Optional[Congruence] = None
    verdicts: dict = field(default_factory=dict)

    @property
    def hypotheses_ok(self) -> bool:
        return self.negative_definite and self.lspace.lspace and len(self.bad_vertices) == 1

    @property
    def discrepancy(self) -> bool:
        return self.expected_t is None or len(self.d_zero) != self.expected_t or len(self.extenders) != self.expected_t

    @property
    def necessity_ok(self) -> bool:
        return set(self.extenders) <= set(self.d_zero)


def blowdown_report(
    G: WeightedGraph,
    A: Optional[EnhancedForm] = None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> BlowdownReport:
    Q = intersection_form(G)
    if A is not None and A.original_block() != Q:
        raise BlowdownError("enhanced form does not extend this graph's intersection form")
    classes = d_invariants(G, budget, workers)
    h = h1_order(G)
    d_zero = sorted(c.representative for c in classes if c.d_value == 0)
    try:
        t = expected_extension_count(h)
    except BlowdownError:
        t = None
    verdicts = {}
    congruence = None
    if A is not None:
        verdicts = {c.representative: extends_over_ball(A, c.representative) for c in classes}
        extenders = sorted(k for k, v in verdicts.items() if v.extends)
        source = "kernel"
        if len(A.kernel()) == 1 and A.size - A.n_original == 1:
            congruence = derive_congruence(A)
    else:
        extenders = d_zero
        source = "d=0"
    return BlowdownReport(
        h=h,
        lspace=lspace_verdict(G, budget, workers),
        bad_vertices=bad_vertices(G),
        negative_definite=is_negative_definite(Q),
        classes=classes,
        d_zero=d_zero,
        expected_t=t,
        extenders=extenders,
        extenders_source=source,
        congruence=congruence,
        verdicts=verdicts,
    )


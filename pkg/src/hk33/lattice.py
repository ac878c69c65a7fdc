"""Exact integer calculus on the rank-two homology lattice of an annulus exterior.

Coordinates always refer to a meridional basis.  Basis changes are restricted
to the two legal transition shapes (determinant +1 and -1); the slope
invariant of a curve pair lives in the half-open window 0 < p1 <= p for
positive boundary slope p, and p < p1 <= 0 for negative p.  Everything here
is exact integer or rational arithmetic; no floating point is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Union

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class LatticeVector:
    """An element of Z^2 written in a meridional basis."""

    c1: int
    c2: int

    def __post_init__(self) -> None:
        if not isinstance(self.c1, int) or not isinstance(self.c2, int):
            raise ValueError("lattice coordinates must be integers")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.c1, -self.c2)

    def scaled(self, k: int) -> "LatticeVector":
        return LatticeVector(k * self.c1, k * self.c2)

    def as_tuple(self) -> tuple[int, int]:
        return (self.c1, self.c2)

    def is_zero(self) -> bool:
        return self.c1 == 0 and self.c2 == 0


class BasisChangeKind(Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class BasisChange:
    """One of the two legal meridional basis transitions, parametrised by n.

    PLUS has basis-transition matrix rows (1-n, -n | n, n+1), determinant +1;
    MINUS has rows (1-n, -n+2 | n, n-1), determinant -1.
    """

    n: int
    kind: BasisChangeKind

    def __post_init__(self) -> None:
        rows = self.matrix()
        det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        expected = 1 if self.kind is BasisChangeKind.PLUS else -1
        if det != expected:
            raise AssertionError(f"basis change determinant {det} != {expected}")

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        n = self.n
        if self.kind is BasisChangeKind.PLUS:
            return ((1 - n, -n), (n, n + 1))
        return ((1 - n, -n + 2), (n, n - 1))

    def coefficient_matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Matrix acting on coordinates (inverse of the basis transition)."""
        n = self.n
        if self.kind is BasisChangeKind.PLUS:
            return ((n + 1, n), (-n, 1 - n))
        # the MINUS transition is an involution, so it acts as itself
        return ((1 - n, 2 - n), (n, n - 1))


def apply_change(v: LatticeVector, t: BasisChange) -> LatticeVector:
    """Coordinates of the same homology class in the transformed basis."""
    (a, b), (c, d) = t.coefficient_matrix()
    return LatticeVector(a * v.c1 + b * v.c2, c * v.c1 + d * v.c2)


class DivisibilityClass(Enum):
    NOT_MULTIPLE = "not_multiple"
    MULTIPLE_OF_ELEMENT = "multiple_of_element"
    MULTIPLE_OF_GENERATOR = "multiple_of_generator"


def divisibility_class(v: LatticeVector, p: int) -> DivisibilityClass:
    """Whether v is |p| times some lattice element, and if so of what kind.

    MULTIPLE_OF_GENERATOR means v = |p| * w with w primitive (gcd of the
    coordinates of w equal to 1); MULTIPLE_OF_ELEMENT covers the imprimitive
    quotients, including the zero vector.
    """
    if p == 0:
        raise ValueError("p must be nonzero")
    q = abs(p)
    if v.c1 % q != 0 or v.c2 % q != 0:
        return DivisibilityClass.NOT_MULTIPLE
    if gcd(v.c1 // q, v.c2 // q) == 1:
        return DivisibilityClass.MULTIPLE_OF_GENERATOR
    return DivisibilityClass.MULTIPLE_OF_ELEMENT


@dataclass(frozen=True)
class SlopeInvariant:
    """Normalized coordinates (p1, p2) of the positive boundary curve.

    Invariants: p1 + p2 = p, p != 0, and p1 lies in the normalization window
    (0, p] for p > 0 or (p, 0] for p < 0.
    """

    p1: int
    p2: int
    p: int

    def __post_init__(self) -> None:
        if self.p == 0:
            raise ValueError("non-trivial boundary slope required (p != 0)")
        if self.p1 + self.p2 != self.p:
            raise ValueError(f"p1 + p2 = {self.p1 + self.p2} != p = {self.p}")
        if self.p > 0 and not (0 < self.p1 <= self.p):
            raise ValueError(f"p1 = {self.p1} outside window (0, {self.p}]")
        if self.p < 0 and not (self.p < self.p1 <= 0):
            raise ValueError(f"p1 = {self.p1} outside window ({self.p}, 0]")

    def as_pair(self) -> tuple[int, int]:
        return (self.p1, self.p2)


def normalize(q1: int, q2: int) -> tuple[SlopeInvariant, int]:
    """Unique normalized coordinates congruent to (q1, q2), plus the n used.

    The returned n satisfies p1 = n*p + q1.  Rejects q1 + q2 = 0: an annulus
    with trivial boundary slope is outside the engine's scope.
    """
    p = q1 + q2
    if p == 0:
        raise ValueError("non-trivial boundary slope required (q1 + q2 != 0)")
    r = q1 % p  # Python % takes the divisor's sign: r in [0, p) or (p, 0]
    p1 = p if p > 0 and r == 0 else r
    n = (p1 - q1) // p
    return SlopeInvariant(p1, p - p1, p), n


def normalize_vector(v: LatticeVector) -> tuple[SlopeInvariant, int]:
    return normalize(v.c1, v.c2)


def reverse_orientation(s: SlopeInvariant) -> SlopeInvariant:
    """Slope invariant of the same annulus with reversed orientation."""
    return normalize(s.p2 + 1, s.p1 - 1)[0]


def slope_type(s: SlopeInvariant) -> SlopeInvariant:
    """Slope invariant under the preferred orientation (p1 > p2 when possible)."""
    if s.p1 > s.p2:
        return s
    return reverse_orientation(s)


def is_symmetric_type(s: SlopeInvariant) -> bool:
    """True iff the invariant is the fixed point ((p+1)/2, (p-1)/2) of reversal.

    Only odd p admits the fixed point; this is the sole type compatible with
    an orientation-reversing self-map of the annulus.
    """
    if s.p % 2 == 0:
        return False
    return s.p1 == (s.p + 1) // 2 and s.p2 == (s.p - 1) // 2


class SlopePairForm(Enum):
    TORUS_FIBERED = "torus_fibered"
    HANDLEBODY = "handlebody"
    BOUNDARY_SLOPE = "boundary_slope"
    INVALID = "invalid"


@dataclass(frozen=True)
class SlopePairKind:
    form: SlopePairForm
    p: Optional[int] = None
    q: Optional[int] = None


def _match_handlebody(x: Fraction, y: Fraction) -> Optional[tuple[int, int]]:
    # x = p/q with p = k*num, q = k*den, and y = p*q = k^2 * num * den
    if y.denominator != 1:
        return None
    target = y.numerator
    num, den = x.numerator, x.denominator
    if num == 0:
        return (0, 1) if target == 0 else None
    prod = num * den
    if target % prod != 0:
        return None
    square = target // prod
    if square <= 0:
        return None
    k = isqrt(square)
    if k * k != square:
        return None
    return (k * num, k * den)


def _match_torus_fibered(x: Fraction, y: Fraction) -> Optional[tuple[int, int]]:
    if x.numerator == 0:
        return None
    if y == Fraction(x.denominator, x.numerator):
        return (x.numerator, x.denominator)
    return None


def classify_slope_pair(r1: Rational, r2: Rational) -> SlopePairKind:
    """Sort an unordered slope pair into one of the two legal shapes.

    {p/q, pq} (q != 0) is the shape under which attaching the annulus yields
    a handlebody; q = 1 with p != 0 is reported as BOUNDARY_SLOPE(p).  The
    shape {p/q, q/p} (pq != 0) is the torus-fibered alternative.  Pairs
    matching both shapes are reported as the handlebody form, since matching
    that form is what characterises the handlebody case.
    """
    a, b = Fraction(r1), Fraction(r2)
    hit = _match_handlebody(a, b) or _match_handlebody(b, a)
    if hit is not None:
        p, q = hit
        if q == 1 and p != 0:
            return SlopePairKind(SlopePairForm.BOUNDARY_SLOPE, p, 1)
        return SlopePairKind(SlopePairForm.HANDLEBODY, p, q)
    candidates = [m for m in (_match_torus_fibered(a, b), _match_torus_fibered(b, a)) if m]
    if candidates:
        preferred = [c for c in candidates if abs(c[0]) >= abs(c[1])]
        p, q = (preferred or candidates)[0]
        return SlopePairKind(SlopePairForm.TORUS_FIBERED, p, q)
    return SlopePairKind(SlopePairForm.INVALID)

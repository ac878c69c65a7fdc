"""Exact word arithmetic in the free group of rank two.

Letters are nonzero integers: 1 and 2 for the generators x1, x2, and -1, -2
for their inverses.  A ``Word`` is a freely reduced tuple of letters; a
``CyclicWord`` is a conjugacy class, represented by the lexicographically
minimal rotation of the cyclic reduction under the letter order
x1 < x1^-1 < x2 < x2^-1.

Primitivity is decided by Whitehead descent: the rank-two Whitehead moves
are applied while the cyclic length does not increase, with full exploration
of equal-length plateaus, and an element is primitive exactly when the
descent reaches cyclic length one.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .lattice import LatticeVector
from .verdicts import Verdict, proved, refuted, unknown

ALPHABET = (1, -1, 2, -2)

#: Default conjugator budget for the bounded basis-pair search.
DEFAULT_BASIS_SEARCH_BOUND = 6


class WordSyntaxError(ValueError):
    """Raised when word text does not follow the x1/X1 token syntax."""


def _check_letters(letters: tuple[int, ...]) -> None:
    for a in letters:
        if a not in ALPHABET:
            raise ValueError(f"invalid letter {a!r}")
    for a, b in zip(letters, letters[1:]):
        if a == -b:
            raise ValueError("word is not freely reduced")


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the empty tuple is the identity."""

    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        _check_letters(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return free_reduce(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return free_reduce(base.letters * abs(n))

    def __str__(self) -> str:
        return format_word(self)

    def inverse(self) -> "Word":
        return Word(tuple(-a for a in reversed(self.letters)))

    def conjugated_by(self, g: "Word") -> "Word":
        """g * self * g^-1."""
        return free_reduce(g.letters + self.letters + g.inverse().letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def syllables(self) -> list[tuple[int, int]]:
        """Maximal runs of one generator, as (generator, exponent) pairs."""
        out: list[tuple[int, int]] = []
        for a in self.letters:
            gen, sgn = abs(a), (1 if a > 0 else -1)
            if out and out[-1][0] == gen:
                out[-1] = (gen, out[-1][1] + sgn)
            else:
                out.append((gen, sgn))
        return out


IDENTITY = Word()
X1 = Word((1,))
X2 = Word((2,))


def free_reduce(letters: Iterable[int]) -> Word:
    """The unique freely reduced form of a raw letter sequence."""
    stack: list[int] = []
    for a in letters:
        if a not in ALPHABET:
            raise ValueError(f"invalid letter {a!r}")
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return Word(tuple(stack))


def word_from_syllables(syllables: Iterable[tuple[int, int]]) -> Word:
    letters: list[int] = []
    for gen, exp in syllables:
        if gen not in (1, 2):
            raise ValueError(f"invalid generator {gen!r}")
        letters.extend([gen if exp > 0 else -gen] * abs(exp))
    return free_reduce(letters)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split w as conjugator * core * conjugator^-1 with core cyclically reduced."""
    letters = list(w.letters)
    peeled: list[int] = []
    while len(letters) >= 2 and letters[0] == -letters[-1]:
        peeled.append(letters[0])
        letters = letters[1:-1]
    return Word(tuple(letters)), Word(tuple(peeled))


def _letter_key(a: int) -> tuple[int, int]:
    return (abs(a), 0 if a > 0 else 1)


def _min_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    if not letters:
        return letters
    keyed = [tuple(_letter_key(a) for a in letters[r:] + letters[:r]) for r in range(len(letters))]
    best = min(range(len(letters)), key=lambda r: keyed[r])
    return letters[best:] + letters[:best]


@dataclass(frozen=True)
class CyclicWord:
    """A conjugacy class, keyed by its minimal cyclically reduced rotation."""

    rep: Word

    def __post_init__(self) -> None:
        letters = self.rep.letters
        if len(letters) >= 2 and letters[0] == -letters[-1]:
            raise ValueError("representative is not cyclically reduced")
        if letters != _min_rotation(letters):
            raise ValueError("representative is not the minimal rotation")

    def __len__(self) -> int:
        return len(self.rep)

    def __str__(self) -> str:
        return format_word(self.rep)


def canonical_class(w: Word) -> CyclicWord:
    """Conjugacy-class normal form; equal outputs iff the inputs are conjugate."""
    core, _ = cyclic_reduce(w)
    return CyclicWord(Word(_min_rotation(core.letters)))


def are_conjugate(u: Word, v: Word) -> bool:
    return canonical_class(u) == canonical_class(v)


def nth_root(w: Word, n: int) -> Optional[Word]:
    """The cyclically reduced n-th root of w's class, or None.

    A root exists iff n divides the cyclic core's length and the core is n
    concatenated copies of its length/n prefix; roots in a free group are
    unique up to conjugacy, so returning the prefix loses nothing.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    core = canonical_class(w).rep.letters
    if len(core) % n != 0:
        return None
    t = len(core) // n
    prefix = core[:t]
    if prefix * n == core:
        return Word(prefix)
    return None


def max_root(w: Word) -> tuple[Word, int]:
    """Root and maximal exponent with w conjugate to root**exponent."""
    if w.is_identity:
        raise ValueError("the empty word has no maximal root")
    core = canonical_class(w).rep.letters
    length = len(core)
    for d in range(1, length + 1):
        if length % d == 0 and core[:d] * (length // d) == core:
            return Word(core[:d]), length // d
    raise AssertionError("unreachable: every word is its own first root")


def abelianize(w: Word) -> LatticeVector:
    """Exponent sums of x1 and x2."""
    e1 = sum(1 if a == 1 else -1 for a in w.letters if abs(a) == 1)
    e2 = sum(1 if a == 2 else -1 for a in w.letters if abs(a) == 2)
    return LatticeVector(e1, e2)


# ---------------------------------------------------------------------------
# Whitehead moves and primitivity


def _substitution(gen: int, mult: int) -> dict[int, tuple[int, ...]]:
    other = 3 - gen
    sub = {other: (other,), -other: (-other,)}
    sub[gen] = (gen, mult * other)
    sub[-gen] = (-mult * other, -gen)
    return sub


#: The length-changing rank-two Whitehead moves, modulo inner automorphisms:
#: x1 -> x1 x2^{+-1} and x2 -> x2 x1^{+-1}.
WHITEHEAD_SUBSTITUTIONS = tuple(
    _substitution(gen, mult) for gen in (1, 2) for mult in (1, -1)
)


def apply_substitution(w: Word, sub: dict[int, tuple[int, ...]]) -> Word:
    letters: list[int] = []
    for a in w.letters:
        letters.extend(sub[a])
    return free_reduce(letters)


def whitehead_neighbors(c: CyclicWord) -> Iterator[CyclicWord]:
    for sub in WHITEHEAD_SUBSTITUTIONS:
        yield canonical_class(apply_substitution(c.rep, sub))


_primitivity_cache: dict[tuple[int, ...], bool] = {}


def is_primitive(w: Word) -> bool:
    """Whether w belongs to some basis of the rank-two free group.

    Whitehead descent with plateau exploration: follow moves that do not
    increase cyclic length; w is primitive iff cyclic length one is reached.
    Every explored class lies in the automorphism orbit of w, so the outcome
    is cached for all of them at once.
    """
    start = canonical_class(w)
    if len(start) == 0:
        return False
    if len(start) == 1:
        return True
    key0 = start.rep.letters
    cached = _primitivity_cache.get(key0)
    if cached is not None:
        return cached

    seen = {key0}
    heap: list[tuple[int, tuple[int, ...]]] = [(len(key0), key0)]
    answer = False
    while heap:
        length, key = heapq.heappop(heap)
        if length == 1:
            answer = True
            break
        current = CyclicWord(Word(key))
        for image in whitehead_neighbors(current):
            if len(image) > length:
                continue
            ikey = image.rep.letters
            if ikey not in seen:
                seen.add(ikey)
                heapq.heappush(heap, (len(image), ikey))
    for k in seen:
        _primitivity_cache[k] = answer
    return answer


def is_power_of_primitive(w: Word, n: int) -> bool:
    """Whether w is conjugate to u**n for some primitive u."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    root = nth_root(w, n)
    return root is not None and is_primitive(root)


# ---------------------------------------------------------------------------
# Basis pairs

_COMMUTATOR_CLASSES = (
    canonical_class(free_reduce((1, 2, -1, -2))),
    canonical_class(free_reduce((2, 1, -2, -1))),
)


def _abelianized_det(u: Word, v: Word) -> int:
    a, b = abelianize(u), abelianize(v)
    return a.c1 * b.c2 - a.c2 * b.c1


def is_basis_pair(u: Word, v: Word) -> bool:
    """Whether the fixed pair {u, v} is a basis: [u,v] conjugate to [x1,x2]^{+-1}."""
    if abs(_abelianized_det(u, v)) != 1:
        return False
    commutator = u * v * u.inverse() * v.inverse()
    return canonical_class(commutator) in _COMMUTATOR_CLASSES


def words_up_to(max_len: int) -> Iterator[Word]:
    """All freely reduced words of length at most max_len, shortest first."""
    yield IDENTITY
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(max_len):
        grown: list[tuple[int, ...]] = []
        for letters in frontier:
            for a in ALPHABET:
                if letters and letters[-1] == -a:
                    continue
                grown.append(letters + (a,))
        for letters in grown:
            yield Word(letters)
        frontier = grown


def _two_syllable_exponents(c: CyclicWord) -> Optional[tuple[int, int]]:
    """Exponents (a, b) when the cyclic core is x1^a x2^b with a, b != 0."""
    syl = c.rep.syllables()
    if len(syl) == 2 and syl[0][0] == 1 and syl[1][0] == 2:
        return (syl[0][1], syl[1][1])
    return None


def classes_contain_basis(
    u: Word, v: Word, bound: int = DEFAULT_BASIS_SEARCH_BOUND
) -> Verdict:
    """Whether the conjugacy classes of u and v contain a basis pair.

    Refuted only through the two-syllable exponent criterion; Proved by an
    explicit witness pair found within the conjugator length budget; Unknown
    otherwise.  The Unknown outcome is honest: no complete decision procedure
    is attempted beyond these two routes.
    """
    cu, cv = canonical_class(u), canonical_class(v)
    shape_u = _two_syllable_exponents(cu)
    shape_v = _two_syllable_exponents(cv)
    if shape_u is not None and shape_v is not None:
        (a1, b1), (a2, b2) = shape_u, shape_v
        x1_both_units = abs(a1) == 1 and abs(a2) == 1
        x2_both_units = abs(b1) == 1 and abs(b2) == 1
        if not x1_both_units and not x2_both_units:
            return refuted(
                "rule:two-syllable-non-basis",
                f"cores x1^{a1} x2^{b1} and x1^{a2} x2^{b2}",
            )
    # Basis pairs abelianize to a lattice basis; skip the witness search when
    # the determinant already rules every conjugate pair out.
    if abs(_abelianized_det(cu.rep, cv.rep)) == 1:
        base = cu.rep
        for g in words_up_to(bound):
            candidate = cv.rep.conjugated_by(g)
            if is_basis_pair(base, candidate):
                return proved(
                    "rule:basis-pair-witness",
                    f"witness pair ({base}, {candidate})",
                )
    return unknown(
        "two-syllable exponent criterion not applicable; "
        f"no witness within conjugator budget {bound}"
    )


# ---------------------------------------------------------------------------
# One-relator quotients of two-syllable words


@dataclass(frozen=True)
class QuotientClass:
    """Isomorphism invariant of the one-relator group <x1, x2 | core>."""

    kind: str  # "infinite-cyclic" or "torus-group"
    pair: Optional[tuple[int, int]] = None

    def __str__(self) -> str:
        if self.kind == "torus-group":
            return f"torus-group{{{self.pair[0]},{self.pair[1]}}}"
        return self.kind


def xayb_quotient_class(w: Word) -> Optional[QuotientClass]:
    """Quotient invariant when the cyclic core has shape x1^a x2^b, else None.

    A unit exponent (or a vanishing one) collapses the quotient onto a single
    generator, giving the infinite-cyclic marker; otherwise the group is the
    torus-knot-type group with the unordered parameter pair {|a|, |b|}.
    """
    core = canonical_class(w)
    syl = core.rep.syllables()
    if len(syl) == 0:
        a, b = 0, 0
    elif len(syl) == 1:
        gen, exp = syl[0]
        a, b = (exp, 0) if gen == 1 else (0, exp)
    elif len(syl) == 2 and syl[0][0] == 1 and syl[1][0] == 2:
        a, b = syl[0][1], syl[1][1]
    else:
        return None
    if abs(a) <= 1 or abs(b) <= 1:
        return QuotientClass("infinite-cyclic")
    return QuotientClass("torus-group", (min(abs(a), abs(b)), max(abs(a), abs(b))))


# ---------------------------------------------------------------------------
# Text syntax: tokens x1 x2 X1 X2 (capitals are inverses), optional ^k

_TOKEN_RE = re.compile(r"([xX])([12])(?:\^(-?\d+))?")


def parse_word(text: str) -> Word:
    """Parse the space-separated token syntax, e.g. ``x1^-2 x2^3``."""
    letters: list[int] = []
    for token in text.split():
        m = _TOKEN_RE.fullmatch(token)
        if m is None:
            raise WordSyntaxError(f"unrecognized word token {token!r}")
        gen = int(m.group(2))
        sign = 1 if m.group(1) == "x" else -1
        exp = sign * (int(m.group(3)) if m.group(3) is not None else 1)
        letters.extend([gen if exp > 0 else -gen] * abs(exp))
    return free_reduce(letters)


def format_word(w: Word) -> str:
    """Canonical text form; inverse of parse_word on reduced words."""
    parts = []
    for gen, exp in w.syllables():
        if exp == 1:
            parts.append(f"x{gen}")
        elif exp == -1:
            parts.append(f"X{gen}")
        else:
            parts.append(f"x{gen}^{exp}")
    return " ".join(parts)

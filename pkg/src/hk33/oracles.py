"""Brute-force oracles and randomized cross-check suites.

The primitivity and basis oracles enumerate Nielsen orbits directly, staying
independent of the Whitehead descent and commutator tests they check.  The
randomized suites are deterministic for a fixed seed (default 0).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .freegroup import (
    ALPHABET,
    CyclicWord,
    Word,
    abelianize,
    apply_substitution,
    are_conjugate,
    canonical_class,
    is_basis_pair,
    is_primitive,
    nth_root,
    words_up_to,
)
from .lattice import (
    BasisChange,
    BasisChangeKind,
    DivisibilityClass,
    LatticeVector,
    apply_change,
    divisibility_class,
    normalize,
    reverse_orientation,
)


@dataclass(frozen=True)
class OracleResult:
    suite: str
    passed: bool
    checked: int
    counterexample: Optional[str] = None
    params: dict = field(default_factory=dict)

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        out = f"{self.suite}: {status}, {self.checked} cases checked"
        if self.counterexample:
            out += f"; counterexample: {self.counterexample}"
        return out


# ---------------------------------------------------------------------------
# Nielsen orbit enumerations

_SWAP = {1: (2,), -1: (-2,), 2: (1,), -2: (-1,)}
_INVERT_X1 = {1: (-1,), -1: (1,), 2: (2,), -2: (-2,)}
_INVERT_X2 = {1: (1,), -1: (-1,), 2: (-2,), -2: (2,)}
_MULTIPLICATIONS = tuple(
    {
        gen: (gen, mult * (3 - gen)),
        -gen: (-mult * (3 - gen), -gen),
        (3 - gen): ((3 - gen),),
        -(3 - gen): (-(3 - gen),),
    }
    for gen in (1, 2)
    for mult in (1, -1)
)
ELEMENTARY_NIELSEN = (_SWAP, _INVERT_X1, _INVERT_X2) + _MULTIPLICATIONS


def primitive_classes_up_to(max_len: int) -> frozenset[tuple[int, ...]]:
    """Conjugacy classes of primitive elements with cyclic length <= max_len.

    Breadth-first orbit of x1 under the elementary Nielsen automorphisms,
    truncated at the length bound; peak reduction guarantees the truncation
    loses nothing.
    """
    start = canonical_class(Word((1,)))
    seen = {start.rep.letters}
    frontier = [start]
    while frontier:
        grown = []
        for cls in frontier:
            for sub in ELEMENTARY_NIELSEN:
                image = canonical_class(apply_substitution(cls.rep, sub))
                if 0 < len(image) <= max_len and image.rep.letters not in seen:
                    seen.add(image.rep.letters)
                    grown.append(image)
        frontier = grown
    return frozenset(seen)


def cyclic_classes_up_to(max_len: int) -> list[CyclicWord]:
    """Every conjugacy class with cyclic length between 1 and max_len."""
    seen: set[tuple[int, ...]] = set()
    out: list[CyclicWord] = []
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(max_len):
        grown = []
        for letters in frontier:
            for a in ALPHABET:
                if letters and letters[-1] == -a:
                    continue
                grown.append(letters + (a,))
        for letters in grown:
            if letters[0] == -letters[-1] and len(letters) >= 2:
                continue
            cls = canonical_class(Word(letters))
            if len(cls) == len(letters) and cls.rep.letters not in seen:
                seen.add(cls.rep.letters)
                out.append(cls)
        frontier = grown
    return out


def suite_primitivity(maxlen: int = 8) -> OracleResult:
    """Whitehead descent vs the Nielsen-orbit oracle, exhaustively."""
    oracle = primitive_classes_up_to(maxlen)
    checked = 0
    for cls in cyclic_classes_up_to(maxlen):
        expected = cls.rep.letters in oracle
        got = is_primitive(cls.rep)
        checked += 1
        if expected != got:
            return OracleResult(
                "primitivity",
                False,
                checked,
                f"{cls}: descent says {got}, orbit oracle says {expected}",
                {"maxlen": maxlen},
            )
    return OracleResult("primitivity", True, checked, None, {"maxlen": maxlen})


def basis_pairs_up_to(total_len: int) -> frozenset[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Ordered basis pairs of total length <= total_len, by Nielsen orbit.

    Moves: swap, invert the first entry, and multiply the first entry by the
    second on either side with either sign.  Nielsen reduction provides a
    monotone path to (x1, x2), so the truncated orbit is complete.
    """
    start = (Word((1,)), Word((2,)))
    seen = {(start[0].letters, start[1].letters)}
    frontier = [start]
    while frontier:
        grown = []
        for u, v in frontier:
            images = [
                (v, u),
                (u.inverse(), v),
                (u * v, v),
                (u * v.inverse(), v),
                (v * u, v),
                (v.inverse() * u, v),
            ]
            for pair in images:
                if len(pair[0]) + len(pair[1]) > total_len:
                    continue
                key = (pair[0].letters, pair[1].letters)
                if key not in seen:
                    seen.add(key)
                    grown.append(pair)
        frontier = grown
    return frozenset(seen)


def suite_basis(maxlen: int = 8) -> OracleResult:
    """Commutator basis test vs the pair-orbit oracle, exhaustively."""
    oracle = basis_pairs_up_to(maxlen)
    words = list(words_up_to(maxlen))
    by_length: dict[int, list[Word]] = {}
    for w in words:
        by_length.setdefault(len(w), []).append(w)
    checked = 0
    for lu in sorted(by_length):
        for lv in sorted(by_length):
            if lu + lv > maxlen:
                continue
            for u in by_length[lu]:
                for v in by_length[lv]:
                    expected = (u.letters, v.letters) in oracle
                    got = is_basis_pair(u, v)
                    checked += 1
                    if expected != got:
                        return OracleResult(
                            "basis",
                            False,
                            checked,
                            f"({u}, {v}): commutator test says {got}, "
                            f"orbit oracle says {expected}",
                            {"maxlen": maxlen},
                        )
    return OracleResult("basis", True, checked, None, {"maxlen": maxlen})


# ---------------------------------------------------------------------------
# Randomized reconstruction suites


def _random_word(rng: random.Random, min_len: int, max_len: int) -> Word:
    length = rng.randint(min_len, max_len)
    letters: list[int] = []
    while len(letters) < length:
        a = rng.choice(ALPHABET)
        if letters and letters[-1] == -a:
            continue
        letters.append(a)
    return Word(tuple(letters))


def suite_roots(cases: int = 1000, seed: int = 0) -> OracleResult:
    """Power reconstruction: roots of built powers, and the homology contrapositive."""
    rng = random.Random(seed)
    checked = 0
    for _ in range(cases):
        u = _random_word(rng, 1, 6)
        n = rng.randint(1, 5)
        g = _random_word(rng, 0, 4)
        w = (u**n).conjugated_by(g)
        root = nth_root(w, n)
        checked += 1
        if root is None or not are_conjugate(root**n, w):
            return OracleResult(
                "roots", False, checked,
                f"nth_root failed to reconstruct {u}^{n} conjugated by {g}",
                {"cases": cases, "seed": seed},
            )
        if abelianize(u**n) != abelianize(u).scaled(n):
            return OracleResult(
                "roots", False, checked,
                f"abelianization of {u}^{n} is not {n} times that of {u}",
                {"cases": cases, "seed": seed},
            )
        probe = _random_word(rng, 1, 8)
        k = rng.randint(2, 5)
        if (
            divisibility_class(abelianize(probe), k) is DivisibilityClass.NOT_MULTIPLE
            and nth_root(probe, k) is not None
        ):
            return OracleResult(
                "roots", False, checked,
                f"{probe} has a {k}-th root despite indivisible homology",
                {"cases": cases, "seed": seed},
            )
    return OracleResult("roots", True, checked, None, {"cases": cases, "seed": seed})


def suite_normalize(cases: int = 200, seed: int = 0) -> OracleResult:
    """Normalization invariance under PLUS transitions; MINUS flips the offset."""
    rng = random.Random(seed)
    checked = 0
    for _ in range(cases):
        q1 = rng.randint(-20, 20)
        q2 = rng.randint(-20, 20)
        if q1 + q2 == 0:
            q2 += 1
        invariant, _ = normalize(q1, q2)
        vec = LatticeVector(q1, q2)
        for _ in range(rng.randint(1, 3)):
            change = BasisChange(rng.randint(-5, 5), BasisChangeKind.PLUS)
            vec = apply_change(vec, change)
        moved, _ = normalize(vec.c1, vec.c2)
        checked += 1
        if moved != invariant:
            return OracleResult(
                "normalize", False, checked,
                f"({q1},{q2}) normalized to {invariant.as_pair()} but "
                f"{vec.as_tuple()} gave {moved.as_pair()}",
                {"cases": cases, "seed": seed},
            )
        # a MINUS transition flips the orientation offset, which validation rejects
        minus = BasisChange(rng.randint(-5, 5), BasisChangeKind.MINUS)
        plus_img = apply_change(LatticeVector(q1, q2), minus)
        minus_img = apply_change(LatticeVector(q1 - 1, q2 + 1), minus)
        if (plus_img - minus_img).as_tuple() != (-1, 1):
            return OracleResult(
                "normalize", False, checked,
                f"MINUS transition did not flip the offset for ({q1},{q2})",
                {"cases": cases, "seed": seed},
            )
    return OracleResult("normalize", True, checked, None, {"cases": cases, "seed": seed})


def suite_reverse_involution(cases: int = 500, seed: int = 0) -> OracleResult:
    """reverse_orientation is an involution on random slope invariants."""
    rng = random.Random(seed)
    checked = 0
    for _ in range(cases):
        p = rng.randint(-15, 15)
        if p == 0:
            p = 1
        if p > 0:
            p1 = rng.randint(1, p)
        else:
            p1 = rng.randint(p + 1, 0)
        invariant = normalize(p1, p - p1)[0]
        checked += 1
        if reverse_orientation(reverse_orientation(invariant)) != invariant:
            return OracleResult(
                "reverse-involution", False, checked,
                f"double reversal moved {invariant.as_pair()}",
                {"cases": cases, "seed": seed},
            )
    return OracleResult(
        "reverse-involution", True, checked, None, {"cases": cases, "seed": seed}
    )


SUITES = {
    "primitivity": lambda maxlen=8, cases=0, seed=0: suite_primitivity(maxlen),
    "basis": lambda maxlen=8, cases=0, seed=0: suite_basis(maxlen),
    "roots": lambda maxlen=0, cases=1000, seed=0: suite_roots(cases, seed),
    "normalize": lambda maxlen=0, cases=200, seed=0: suite_normalize(cases, seed),
}


def run_suite(name: str, maxlen: int = 8, cases: int = 1000, seed: int = 0) -> OracleResult:
    if name not in SUITES:
        raise KeyError(f"unknown oracle suite {name!r}")
    return SUITES[name](maxlen=maxlen, cases=cases, seed=seed)

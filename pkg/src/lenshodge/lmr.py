"""The LMR construction L+-(r^2 t, r t a + 1) and the goodness predicates on a."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .errors import TheoremCounterexample
from .hodge import hodge_equal
from .lens import PlusMinusLens, canonical_form, conjugate, to_spectral
from .ztheory import divisors


@dataclass(frozen=True)
class AVector:
    r: int
    t: int
    a: tuple

    def __post_init__(self):
        if self.r <= 2:
            raise ValueError(f"r must exceed 2, got {self.r}")
        if self.t < 1:
            raise ValueError(f"t must be positive, got {self.t}")
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))

    @property
    def q(self) -> int:
        return self.r * self.r * self.t


def lmr_build(v: AVector) -> PlusMinusLens:
    q, rt = v.q, v.r * v.t
    return PlusMinusLens(q, tuple((rt * ai + 1) % q for ai in v.a))


def lmr_pair(v: AVector) -> tuple[PlusMinusLens, PlusMinusLens]:
    return lmr_build(v), lmr_build(AVector(v.r, v.t, tuple(-ai for ai in v.a)))


def magic_check(r: int, t: int) -> bool:
    """(rtc+1)(rtd+1) == rt(c+d)+1 mod r^2 t, and rt+1 generates {rtc+1} with order r."""
    q, rt = r * r * t, r * t
    for c in range(r):
        for d in range(r):
            if (rt * c + 1) * (rt * d + 1) % q != (rt * (c + d) + 1) % q:
                return False
    g = (rt + 1) % q
    powers, x = [], 1
    for _ in range(r):
        powers.append(x)
        x = x * g % q
    if x != 1 % q:
        return False
    return sorted(powers) == sorted((rt * c + 1) % q for c in range(r)) and len(set(powers)) == r


def eqmd(a: Sequence[int], b: Sequence[int], r: int) -> Optional[int]:
    """Smallest c in Z_r with a + c equal to b as multisets mod r, or None."""
    if len(a) != len(b):
        raise ValueError("vectors must have equal length")
    target = sorted(v % r for v in b)
    for c in range(r):
        if sorted((v + c) % r for v in a) == target:
            return c
    return None


def univalent(a: Sequence[int], r: int) -> bool:
    return len({v % r for v in a}) == len(a)


def reversing_constant(a: Sequence[int], r: int) -> Optional[int]:
    return eqmd(a, [-v for v in a], r)


def is_good(a: Sequence[int], r: int) -> bool:
    return univalent(a, r) or reversing_constant(a, r) is not None


@dataclass(frozen=True)
class Classification:
    a: tuple
    r: int
    univalent: bool
    reversible: bool
    good: bool
    hereditarily_good: bool
    useful: bool
    reversing_constant: Optional[int] = None
    failing_divisor: Optional[int] = None
    good_mod: dict = field(default_factory=dict)


def classify(a: Sequence[int], r: int) -> Classification:
    if r < 1:
        raise ValueError("r must be positive")
    a = tuple(a)
    c = reversing_constant(a, r)
    uni = univalent(a, r)
    # any a is reversible mod 1 and 2
    good_mod = {d: (True if d <= 2 else is_good(a, d)) for d in divisors(r)}
    failing = next((d for d, ok in good_mod.items() if not ok), None)
    hg = failing is None
    reversible = c is not None
    return Classification(
        a=a, r=r, univalent=uni, reversible=reversible, good=uni or reversible,
        hereditarily_good=hg, useful=hg and not reversible,
        reversing_constant=c, failing_divisor=failing, good_mod=good_mod,
    )


@dataclass(frozen=True)
class TheoremRecord:
    v: AVector
    hereditarily_good: bool
    hodge_equal: bool
    conjugate: bool


def theorem_check(v: AVector) -> TheoremRecord:
    """Classify a, then decide Hodge equality and conjugacy of the LMR pair."""
    hg = classify(v.a, v.r).hereditarily_good
    A, B = lmr_pair(v)
    eq = hodge_equal(to_spectral(A), to_spectral(B))
    conj = conjugate(A, B)
    if hg and not eq:
        raise TheoremCounterexample(f"{v}: hereditarily good but Hodge series differ")
    return TheoremRecord(v, hg, eq, conj)


def theorem_sweep(rmax: int, tmax: int, ms=(2, 3), rmin: int = 3) -> list[TheoremRecord]:
    """theorem_check for every useful a (entries in [0, r), taken as multisets), r <= rmax, t <= tmax.

    Conjugate groups have the same Hodge series, so exact comparisons are
    shared between vectors whose pairs have the same canonical forms.
    Classification and conjugacy are decided afresh for every vector.
    """
    seen: dict = {}
    out = []
    for r in range(max(3, rmin), rmax + 1):
        for m in ms:
            for a in combinations_with_replacement(range(r), m):
                if not classify(a, r).useful:
                    continue
                for t in range(1, tmax + 1):
                    v = AVector(r, t, a)
                    A, B = lmr_pair(v)
                    key = (v.q, frozenset((canonical_form(A), canonical_form(B))))
                    if key not in seen:
                        seen[key] = hodge_equal(to_spectral(A), to_spectral(B))
                    if not seen[key]:
                        raise TheoremCounterexample(f"{v}: hereditarily good but Hodge series differ")
                    out.append(TheoremRecord(v, True, seen[key], conjugate(A, B)))
    return out


def enumerate_lmr(a: Sequence[int], qmax: int) -> list[AVector]:
    """All (r, t) with r > 2, r^2 t <= qmax and a useful mod r, by (r^2 t, r)."""
    if qmax < 1:
        raise ValueError("qmax must be positive")
    a = tuple(a)
    out = []
    r = 3
    while r * r <= qmax:
        if classify(a, r).useful:
            out += [AVector(r, t, a) for t in range(1, qmax // (r * r) + 1)]
        r += 1
    return sorted(out, key=lambda v: (v.q, v.r))
